"""Tournament value functions and their evaluation.

Four families, all integer-valued:

* PlayerPopularity: every match player i wins is worth p[i].
* WinCount: the k-th match player i wins is worth f[i][k-1].
* BinaryThreshold: player i contributes 1 iff it wins at least lam[i]
  matches (a win-count table with a single 1 at position lam[i]).
* LinearAfterThreshold: player i contributes max(0, wins - lam[i] + 1)
  (a win-count table that is 1 from position lam[i] on).
* PairBased: a match where i beats j is worth f[i][j].

BinaryThreshold additionally admits lam[i] == 0, meaning the player always
counts; hardness-reduction instances with degree-zero vertices need it.
All evaluation is exact integer arithmetic, checked against signed 64-bit
range so the compiled kernels can use the same numbers.
"""

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import DimensionMismatchError, OutOfRangeError, ValueOverflowError
from .graph import StrengthGraph, is_dag
from .tournament import TournamentTrace

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class PlayerPopularity:
    p: tuple[int, ...]

    def __init__(self, p):
        object.__setattr__(self, "p", tuple(int(x) for x in p))


@dataclass(frozen=True)
class WinCount:
    f: tuple[tuple[int, ...], ...]

    def __init__(self, f):
        object.__setattr__(self, "f", tuple(tuple(int(x) for x in row) for row in f))


@dataclass(frozen=True)
class BinaryThreshold:
    lam: tuple[int, ...]

    def __init__(self, lam):
        object.__setattr__(self, "lam", tuple(int(x) for x in lam))


@dataclass(frozen=True)
class LinearAfterThreshold:
    lam: tuple[int, ...]

    def __init__(self, lam):
        object.__setattr__(self, "lam", tuple(int(x) for x in lam))


@dataclass(frozen=True)
class PairBased:
    f: tuple[tuple[int, ...], ...]

    def __init__(self, f):
        object.__setattr__(self, "f", tuple(tuple(int(x) for x in row) for row in f))


ValueSpec = Union[PlayerPopularity, WinCount, BinaryThreshold, LinearAfterThreshold, PairBased]

WIN_COUNT_FAMILIES = (WinCount, BinaryThreshold, LinearAfterThreshold)


@dataclass
class Instance:
    graph: StrengthGraph
    value: ValueSpec
    target: Optional[int] = None
    meta: Optional[dict] = None


def check_spec(spec: ValueSpec, n: int) -> None:
    """Validate payload dimensions and value ranges against n players."""
    if isinstance(spec, PlayerPopularity):
        if len(spec.p) != n:
            raise DimensionMismatchError(f"popularity vector has {len(spec.p)} entries, expected {n}")
        _require_nonnegative(spec.p, "popularity")
    elif isinstance(spec, WinCount):
        if len(spec.f) != n:
            raise DimensionMismatchError(f"win-value table has {len(spec.f)} rows, expected {n}")
        for i, row in enumerate(spec.f):
            if len(row) != n - 1:
                raise DimensionMismatchError(
                    f"win-value row for player {i} has {len(row)} entries, expected {n - 1}"
                )
            _require_nonnegative(row, f"win values of player {i}")
    elif isinstance(spec, BinaryThreshold):
        if len(spec.lam) != n:
            raise DimensionMismatchError(f"threshold vector has {len(spec.lam)} entries, expected {n}")
        _require_nonnegative(spec.lam, "thresholds")
    elif isinstance(spec, LinearAfterThreshold):
        if len(spec.lam) != n:
            raise DimensionMismatchError(f"threshold vector has {len(spec.lam)} entries, expected {n}")
        if any(x < 1 for x in spec.lam):
            raise ValueError("linear-after-threshold requires thresholds >= 1")
    elif isinstance(spec, PairBased):
        if len(spec.f) != n or any(len(row) != n for row in spec.f):
            raise DimensionMismatchError(f"pair-value table must be {n}x{n}")
        for row in spec.f:
            _require_nonnegative(row, "pair values")
    else:
        raise TypeError(f"unknown value spec {type(spec).__name__}")


def _require_nonnegative(xs, what):
    for x in xs:
        if x < 0:
            raise ValueError(f"{what} must be nonnegative, got {x}")


def _check_overflow(v: int) -> int:
    if abs(v) > INT64_MAX:
        raise ValueOverflowError(f"value {v} exceeds signed 64-bit range")
    return v


def evaluate(spec: ValueSpec, trace: TournamentTrace) -> int:
    """Exact tournament value of a trace under the given family."""
    n = len(trace.wins)
    check_spec(spec, n)
    if isinstance(spec, PlayerPopularity):
        total = sum(spec.p[i] * trace.wins[i] for i in range(n))
    elif isinstance(spec, WinCount):
        total = sum(sum(spec.f[i][: trace.wins[i]]) for i in range(n))
    elif isinstance(spec, BinaryThreshold):
        total = sum(1 for i in range(n) if trace.wins[i] >= spec.lam[i])
    elif isinstance(spec, LinearAfterThreshold):
        total = sum(max(0, trace.wins[i] - spec.lam[i] + 1) for i in range(n))
    else:
        total = sum(spec.f[i][j] for i in range(n) for j in trace.beaten_by[i])
    return _check_overflow(total)


def cumulative_win_value(spec: WinCount, player: int, wins: int) -> int:
    """Prefix sum of a player's win values: total for its first ``wins`` wins."""
    row = spec.f[player]
    if wins < 0 or wins > len(row):
        raise OutOfRangeError(f"wins must be in 0..{len(row)}, got {wins}")
    return sum(row[:wins])


def cumulative_tables(spec: ValueSpec, n: int) -> np.ndarray:
    """(n, n) table: entry [i, w] is player i's contribution with w wins.

    Defined for every family whose match value depends only on the winner's
    running win count; PairBased has no such table.
    """
    check_spec(spec, n)
    cum = np.zeros((n, n), dtype=np.int64)
    w = np.arange(n, dtype=np.int64)
    if isinstance(spec, PlayerPopularity):
        for i in range(n):
            cum[i] = spec.p[i] * w
    elif isinstance(spec, WinCount):
        for i in range(n):
            cum[i, 1:] = np.cumsum(np.asarray(spec.f[i], dtype=np.int64))
    elif isinstance(spec, BinaryThreshold):
        for i in range(n):
            cum[i] = (w >= spec.lam[i]).astype(np.int64)
    elif isinstance(spec, LinearAfterThreshold):
        for i in range(n):
            cum[i] = np.maximum(0, w - spec.lam[i] + 1)
    else:
        raise TypeError("pair-based values have no per-player cumulative table")
    return cum


def match_matrix(spec: ValueSpec, n: int) -> np.ndarray:
    """(n, n) table: entry [i, j] is the value of a match where i beats j."""
    check_spec(spec, n)
    if isinstance(spec, PlayerPopularity):
        m = np.repeat(np.asarray(spec.p, dtype=np.int64)[:, None], n, axis=1)
    elif isinstance(spec, PairBased):
        m = np.asarray(spec.f, dtype=np.int64)
    else:
        raise TypeError(f"{type(spec).__name__} is not a per-match family")
    m = m.copy()
    np.fill_diagonal(m, 0)
    return m


def expand_to_wincount(spec: ValueSpec, n: int) -> WinCount:
    """Rewrite a popularity or threshold spec as an explicit win-value table.

    Used as an independent cross-check route; a zero binary threshold has no
    win-count form (the player scores without winning) and is rejected.
    """
    check_spec(spec, n)
    if isinstance(spec, WinCount):
        return spec
    rows = []
    if isinstance(spec, PlayerPopularity):
        rows = [[spec.p[i]] * (n - 1) for i in range(n)]
    elif isinstance(spec, BinaryThreshold):
        for lam in spec.lam:
            if lam == 0:
                raise ValueError("zero threshold cannot be expressed as win values")
            rows.append([1 if k == lam else 0 for k in range(1, n)])
    elif isinstance(spec, LinearAfterThreshold):
        rows = [[1 if k >= lam else 0 for k in range(1, n)] for lam in spec.lam]
    else:
        raise TypeError("pair-based values are not win-count based")
    return WinCount(rows)


@dataclass(frozen=True)
class ProblemClass:
    family: str
    dag: bool
    popularity_levels: Optional[int] = None


FAMILY_NAMES = {
    PlayerPopularity: "popularity",
    WinCount: "wincount",
    BinaryThreshold: "binary_threshold",
    LinearAfterThreshold: "linear_threshold",
    PairBased: "pair",
}


def classify(spec: ValueSpec, g: StrengthGraph) -> ProblemClass:
    """Shape of an instance, used to pick a solver route."""
    check_spec(spec, g.n)
    family = FAMILY_NAMES[type(spec)]
    levels = len(set(spec.p)) if isinstance(spec, PlayerPopularity) else None
    return ProblemClass(family=family, dag=is_dag(g) is not None, popularity_levels=levels)
