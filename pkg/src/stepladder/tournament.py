"""Challenge-the-Champ simulation and the seeding/caterpillar correspondence.

A seeding is a permutation of the players: entry 0 is the initial champ and
each later entry challenges the current champ in turn. Every seeding induces
a spanning caterpillar arborescence in the strength graph (backbone = players
that win at least one match, leaves = players attached to their conqueror),
and every spanning caterpillar induces a seeding. The conversions here fix a
canonical form on both sides so that the round trip is an exact equality:

* backbone is stored champion (root) first;
* leaves are stored in the order the seeding consumes them;
* an initial champ that never wins a match is a leaf of its conqueror.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import InvalidCaterpillarError, InvalidSeedingError
from .graph import StrengthGraph


class Match(NamedTuple):
    round: int
    challenger: int
    champ_before: int
    winner: int


@dataclass
class TournamentTrace:
    matches: list[Match]
    wins: list[int]
    beaten_by: list[list[int]]  # players that lost their match against i
    champion: int


@dataclass
class Caterpillar:
    backbone: list[int]
    leaves: dict[int, list[int]] = field(default_factory=dict)

    def leaf_list(self, player: int) -> list[int]:
        return self.leaves.get(player, [])


def check_seeding(n: int, seeding) -> list[int]:
    s = [int(p) for p in seeding]
    if len(s) != n:
        raise InvalidSeedingError(f"expected {n} players, got {len(s)}")
    if sorted(s) != list(range(n)):
        raise InvalidSeedingError("not a permutation of 0..n-1")
    return s


def simulate(g: StrengthGraph, seeding) -> TournamentTrace:
    """Play out the seeding; deterministic given the strength graph."""
    s = check_seeding(g.n, seeding)
    matches = []
    wins = [0] * g.n
    beaten_by: list[list[int]] = [[] for _ in range(g.n)]
    champ = s[0]
    for r in range(1, g.n):
        challenger = s[r]
        winner = champ if g.beats[champ, challenger] else challenger
        loser = challenger if winner == champ else champ
        matches.append(Match(r, challenger, champ, winner))
        wins[winner] += 1
        beaten_by[winner].append(loser)
        champ = winner
    return TournamentTrace(matches=matches, wins=wins, beaten_by=beaten_by, champion=champ)


def seeding_to_caterpillar(g: StrengthGraph, seeding) -> Caterpillar:
    """Canonical spanning caterpillar induced by a seeding.

    Backbone: the players that win at least one match, champion first.
    Each losing player hangs off the player that beat it, in seeding order.
    """
    s = check_seeding(g.n, seeding)
    trace = simulate(g, s)
    if g.n == 1:
        return Caterpillar(backbone=[s[0]], leaves={})
    winners_in_order = [p for p in s if trace.wins[p] > 0]
    backbone = list(reversed(winners_in_order))
    conqueror = {}
    for m in trace.matches:
        loser = m.challenger if m.winner == m.champ_before else m.champ_before
        conqueror[loser] = m.winner
    leaves: dict[int, list[int]] = {b: [] for b in backbone}
    for p in s:
        if trace.wins[p] == 0:
            leaves[conqueror[p]].append(p)
    return Caterpillar(backbone=backbone, leaves=leaves)


def check_caterpillar(g: StrengthGraph, c: Caterpillar) -> None:
    """Raise InvalidCaterpillarError unless c spans g and respects beats."""
    if not c.backbone:
        raise InvalidCaterpillarError("backbone is empty")
    covered = list(c.backbone)
    for b, ls in c.leaves.items():
        if b not in c.backbone and ls:
            raise InvalidCaterpillarError(f"leaves attached to non-backbone player {b}")
        covered.extend(ls)
    if sorted(covered) != list(range(g.n)):
        raise InvalidCaterpillarError("backbone and leaves do not partition the players")
    for a, b in zip(c.backbone, c.backbone[1:]):
        if not g.beats[a, b]:
            raise InvalidCaterpillarError("backbone edge against the strength graph", (a, b))
    for b in c.backbone:
        for leaf in c.leaf_list(b):
            if not g.beats[b, leaf]:
                raise InvalidCaterpillarError("leaf edge against the strength graph", (b, leaf))


def caterpillar_to_seeding(g: StrengthGraph, c: Caterpillar) -> list[int]:
    """Canonical seeding of a spanning caterpillar.

    Walks the backbone from its tail to the root, placing each backbone
    player directly before its own leaves; simulating the result reproduces
    exactly the caterpillar's matches.
    """
    check_caterpillar(g, c)
    seeding = []
    for b in reversed(c.backbone):
        seeding.append(b)
        seeding.extend(c.leaf_list(b))
    return seeding


def match_set(trace: TournamentTrace) -> set[tuple[int, int]]:
    """The (winner, loser) pairs of a trace; seedings of one caterpillar share it."""
    return {(w, l) for w in range(len(trace.wins)) for l in trace.beaten_by[w]}
