"""Exception types shared across the package."""


class StepladderError(Exception):
    """Base class for all package errors."""


class GraphError(StepladderError):
    """Invalid strength graph construction or query."""


class SelfLoopError(GraphError):
    def __init__(self, player):
        super().__init__(f"self loop on player {player}")
        self.player = player


class DuplicateEdgeError(GraphError):
    def __init__(self, pair):
        super().__init__(f"pair {{{pair[0]},{pair[1]}}} oriented more than once")
        self.pair = tuple(pair)


class MissingEdgeError(GraphError):
    def __init__(self, pair):
        super().__init__(f"pair {{{pair[0]},{pair[1]}}} has no orientation")
        self.pair = tuple(pair)


class EmptySubsetError(GraphError):
    def __init__(self):
        super().__init__("induced subgraph needs a non-empty player subset")


class NotADagError(StepladderError):
    def __init__(self):
        super().__init__("strength graph contains a cycle; a DAG is required")


class InvalidSeedingError(StepladderError):
    def __init__(self, reason):
        super().__init__(f"invalid seeding: {reason}")


class InvalidCaterpillarError(StepladderError):
    def __init__(self, reason, edge=None):
        msg = f"invalid caterpillar: {reason}"
        if edge is not None:
            msg += f" (edge {edge[0]}->{edge[1]})"
        super().__init__(msg)
        self.edge = edge


class DimensionMismatchError(StepladderError):
    """Value-function payload does not match the player count."""


class OutOfRangeError(StepladderError):
    """Win count outside 0..n-1."""


class ValueOverflowError(StepladderError):
    """Tournament value would not fit in signed 64-bit arithmetic."""


class NonBinaryPopularityError(StepladderError):
    def __init__(self, player, value):
        super().__init__(f"player {player} has popularity {value}, expected 0 or 1")


class TooLargeError(StepladderError):
    def __init__(self, n, limit, what="exhaustive search"):
        super().__init__(f"{what} limited to {limit}, got {n}")
        self.limit = limit


class NoAlgorithmError(StepladderError):
    """No exact or approximate route applies to the instance."""


class InvalidTriplesError(StepladderError):
    """Malformed three-dimensional matching input."""


class InvalidSolutionError(StepladderError):
    """Claimed source-problem solution fails its feasibility check."""


class SchemaError(StepladderError):
    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class BadParamsError(StepladderError):
    """Invalid generator parameters."""
