"""Seeding optimizers: polynomial routes, an approximation, and brute force.

Every solver returns a SolveResult whose value is recomputed by simulating
its own seeding, so reported values are always witness-backed. ``dispatch``
picks the best applicable route for an instance:

* DAG + popularity        -> greedy over the strength order (optimal)
* DAG + win-count family  -> dynamic program over the strength order (optimal)
* popularity in {0,1}     -> partition algorithm, any strength graph (optimal)
* anything else           -> exhaustive search up to a size limit, falling
                             back to the level-wise approximation for
                             popularity values; otherwise no route exists.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import Optional

import numpy as np

from . import kernels
from .errors import (
    NoAlgorithmError,
    NonBinaryPopularityError,
    NotADagError,
    TooLargeError,
    ValueOverflowError,
)
from .graph import StrengthGraph, hamiltonian_path, induced_subgraph, is_dag
from .tournament import Caterpillar, caterpillar_to_seeding, seeding_to_caterpillar, simulate
from .values import (
    INT64_MAX,
    BinaryThreshold,
    Instance,
    LinearAfterThreshold,
    PairBased,
    PlayerPopularity,
    ValueSpec,
    WinCount,
    WIN_COUNT_FAMILIES,
    check_spec,
    classify,
    cumulative_tables,
    evaluate,
    match_matrix,
)

BRUTE_FORCE_LIMIT = 10


@dataclass
class SolveResult:
    seeding: list[int]
    value: int
    algorithm: str
    optimal: bool
    meets_target: Optional[bool] = None


def _finish(g, spec, seeding, algorithm, optimal, target=None) -> SolveResult:
    value = evaluate(spec, simulate(g, seeding))
    meets = None if target is None else value >= target
    return SolveResult(seeding=list(seeding), value=value, algorithm=algorithm,
                       optimal=optimal, meets_target=meets)


# ---------------------------------------------------------------------------
# Greedy for popularity values on acyclic graphs.
# ---------------------------------------------------------------------------

def solve_dag_popularity_greedy(g: StrengthGraph, p, target=None) -> SolveResult:
    """Optimal seeding for popularity values when the graph is acyclic.

    Working along the strength order (positions 1..n, weakest first),
    repeatedly pick the most popular player above the previous pick; each
    pick becomes a backbone player and the skipped positions become its
    leaves. Ties go to the stronger player.
    """
    order = is_dag(g)
    if order is None:
        raise NotADagError()
    spec = p if isinstance(p, PlayerPopularity) else PlayerPopularity(p)
    check_spec(spec, g.n)
    pop = [spec.p[order[r]] for r in range(g.n)]  # popularity by strength position

    picks = []  # strength positions (1-based) of backbone players
    prev = 0
    while prev < g.n:
        best = max(range(prev + 1, g.n + 1), key=lambda r: (pop[r - 1], r))
        picks.append(best)
        prev = best

    backbone = [order[r - 1] for r in reversed(picks)]
    leaves = {}
    lo = 1
    for r in picks:
        leaves[order[r - 1]] = [order[q - 1] for q in range(lo, r)]
        lo = r + 1
    seeding = caterpillar_to_seeding(g, Caterpillar(backbone=backbone, leaves=leaves))
    return _finish(g, spec, seeding, "greedy-dag-popularity", True, target)


def greedy_value_formula(g: StrengthGraph, p) -> int:
    """Closed-form value of the greedy solution: sum of gap * popularity."""
    order = is_dag(g)
    if order is None:
        raise NotADagError()
    spec = p if isinstance(p, PlayerPopularity) else PlayerPopularity(p)
    pop = [spec.p[order[r]] for r in range(g.n)]
    total = 0
    prev = 0
    while prev < g.n:
        best = max(range(prev + 1, g.n + 1), key=lambda r: (pop[r - 1], r))
        total += (best - prev if prev else best - 1) * pop[best - 1]
        prev = best
    return total


# ---------------------------------------------------------------------------
# Partition algorithm for {0,1} popularity on arbitrary graphs.
# ---------------------------------------------------------------------------

def binary_popularity_partition(g: StrengthGraph, p) -> tuple[list[int], list[int], list[int]]:
    """Split players into popular / unpopular-beating-all-popular / the rest."""
    spec = p if isinstance(p, PlayerPopularity) else PlayerPopularity(p)
    check_spec(spec, g.n)
    for i, v in enumerate(spec.p):
        if v not in (0, 1):
            raise NonBinaryPopularityError(i, v)
    popular = [i for i in g.players if spec.p[i] == 1]
    dominating, rest = [], []
    for i in g.players:
        if spec.p[i] == 1:
            continue
        if all(g.beats[i, q] for q in popular):
            dominating.append(i)
        else:
            rest.append(i)
    return popular, dominating, rest


def solve_binary_popularity(g: StrengthGraph, p, target=None) -> SolveResult:
    """Optimal seeding for {0,1} popularity on any strength graph.

    The backbone chains a Hamiltonian path through the unpopular players
    that beat every popular player into a Hamiltonian path through the
    popular players; remaining players hang off the first popular backbone
    player that beats them. Achieves |popular| + |rest| - 1 whenever any
    player is popular, which is the maximum of any single-elimination
    format.
    """
    spec = p if isinstance(p, PlayerPopularity) else PlayerPopularity(p)
    popular, dominating, rest = binary_popularity_partition(g, spec)
    if not popular:
        return _finish(g, spec, hamiltonian_path(g), "binary-popularity", True, target)

    def sub_path(players):
        if not players:
            return []
        sub, names = induced_subgraph(g, players)
        return [names[q] for q in hamiltonian_path(sub)]

    backbone = sub_path(dominating) + sub_path(popular)
    popular_path = backbone[len(dominating):]
    leaves = {b: [] for b in backbone}
    for u in rest:
        owner = next(b for b in popular_path if g.beats[b, u])
        leaves[owner].append(u)
    seeding = caterpillar_to_seeding(g, Caterpillar(backbone=backbone, leaves=leaves))
    return _finish(g, spec, seeding, "binary-popularity", True, target)


# ---------------------------------------------------------------------------
# Dynamic program for win-count families on acyclic graphs.
# ---------------------------------------------------------------------------

def solve_dag_wincount_dp(g: StrengthGraph, spec: ValueSpec, target=None) -> SolveResult:
    """Optimal seeding for any win-count family when the graph is acyclic.

    Table entry A[i][k] is the best value of a k-match tournament seeded
    from the i weakest players; entry (i, k) maximizes over how many
    matches the i-th player wins. O(n^3). The seeding is rebuilt from the
    stored argmax choices: a player winning l matches beats the champion
    of the sub-tournament below it plus l-1 players that never played.
    """
    order = is_dag(g)
    if order is None:
        raise NotADagError()
    if isinstance(spec, PairBased):
        raise TypeError("pair-based values need per-opponent information; use brute force")
    n = g.n
    cum = cumulative_tables(spec, n)[order]  # row r: player at strength position r+1
    base = int(cum[:, 0].sum())  # contribution independent of any win
    gain = cum - cum[:, :1]

    NEG = np.iinfo(np.int64).min
    A = np.full((n + 1, n), NEG, dtype=np.int64)
    choice = np.zeros((n + 1, n), dtype=np.int64)
    A[1, 0] = 0
    for i in range(2, n + 1):
        A[i, 0] = 0
        row_gain = gain[i - 1]
        for k in range(1, i):
            lo = max(0, k - (i - 2))
            cand = row_gain[lo : k + 1] + A[i - 1, k - lo :: -1][: k + 1 - lo]
            best = int(np.argmax(cand))
            A[i, k] = cand[best]
            choice[i, k] = lo + best

    # rebuild the seeding bottom-up from the per-level win counts
    level_wins = {}
    k = n - 1
    for i in range(n, 1, -1):
        l = int(choice[i, k])
        level_wins[i] = l
        k -= l
    seeding_pos: list[int] = []
    used = [False] * (n + 1)

    def take_fresh(limit, count):
        fresh = []
        q = 1
        while len(fresh) < count:
            if q >= limit:
                raise AssertionError("ran out of fresh players during reconstruction")
            if not used[q]:
                fresh.append(q)
                used[q] = True
            q += 1
        return fresh

    for i in range(2, n + 1):
        l = level_wins.get(i, 0)
        if l == 0:
            continue
        if not seeding_pos:
            used[i] = True
            seeding_pos.extend([i] + take_fresh(i, l))
        else:
            used[i] = True
            seeding_pos.extend([i] + take_fresh(i, l - 1))
    if not seeding_pos:  # n == 1
        seeding_pos = [1]
    seeding = [order[r - 1] for r in seeding_pos]
    result = _finish(g, spec, seeding, "wincount-dp", True, target)
    if result.value != int(A[n, n - 1]) + base:
        raise AssertionError("reconstructed seeding does not achieve the table value")
    return result


# ---------------------------------------------------------------------------
# Level-wise approximation for popularity values.
# ---------------------------------------------------------------------------

def approx_popularity(g: StrengthGraph, p, target=None) -> SolveResult:
    """Approximation for popularity values with k distinct levels.

    Runs the exact {0,1} algorithm once per nonzero level (players of that
    level popular, everyone else not) and keeps the seeding that evaluates
    best under the true popularities. Guarantees value >= OPT/(k-1) when 0
    is one of the levels, OPT/k otherwise; exact for a single level and
    for two levels including 0.
    """
    spec = p if isinstance(p, PlayerPopularity) else PlayerPopularity(p)
    check_spec(spec, g.n)
    levels = sorted(set(spec.p), reverse=True)
    k = len(levels)
    if k == 1:
        return _finish(g, spec, hamiltonian_path(g), "approx-popularity/constant", True, target)

    has_zero = levels[-1] == 0
    run_levels = levels[:-1] if has_zero else levels
    best = None
    for v in run_levels:
        indicator = [1 if x == v else 0 for x in spec.p]
        candidate = solve_binary_popularity(g, indicator)
        value = evaluate(spec, simulate(g, candidate.seeding))
        if best is None or value > best[0]:
            best = (value, candidate.seeding)

    exact = k == 2 and has_zero
    denom = k - 1 if has_zero else k
    tag = "approx-popularity/exact" if exact else f"approx-popularity/1-over-{denom}"
    return _finish(g, spec, best[1], tag, exact, target)


# ---------------------------------------------------------------------------
# Exhaustive search.
# ---------------------------------------------------------------------------

def _guard_overflow(spec, n, table, matrix_mode):
    if matrix_mode:
        worst = (n - 1) * int(table.max(initial=0))
    else:
        worst = int(table.max(axis=1).sum())
    if worst > INT64_MAX:
        raise ValueOverflowError("worst-case tournament value exceeds 64-bit range")


def exact_bruteforce(inst: Instance, limit: int = BRUTE_FORCE_LIMIT) -> SolveResult:
    """Enumerate all n! seedings; returns the lexicographically smallest optimum."""
    g, spec = inst.graph, inst.value
    n = g.n
    if n > limit:
        raise TooLargeError(n, limit)
    check_spec(spec, n)
    beats = g.beats.astype(np.uint8)
    if isinstance(spec, (PlayerPopularity, PairBased)):
        table = match_matrix(spec, n)
        _guard_overflow(spec, n, table, True)
        value, perm = kernels.brute_force_matrix(beats, table)
    else:
        table = cumulative_tables(spec, n)
        _guard_overflow(spec, n, table, False)
        value, perm = kernels.brute_force_cumulative(beats, table)
    seeding = [int(x) for x in perm]
    result = _finish(g, spec, seeding, "bruteforce", True, inst.target)
    if result.value != int(value):
        raise AssertionError("kernel value disagrees with re-simulation")
    return result


def bruteforce_python(inst: Instance, limit: int = BRUTE_FORCE_LIMIT) -> SolveResult:
    """Kernel-free reference search; slow, kept as an independent oracle."""
    g, spec = inst.graph, inst.value
    if g.n > limit:
        raise TooLargeError(g.n, limit)
    check_spec(spec, g.n)
    best = None
    for perm in permutations(range(g.n)):
        value = evaluate(spec, simulate(g, perm))
        if best is None or value > best[0]:
            best = (value, list(perm))
    meets = None if inst.target is None else best[0] >= inst.target
    return SolveResult(seeding=best[1], value=best[0], algorithm="bruteforce-python",
                       optimal=True, meets_target=meets)


# ---------------------------------------------------------------------------
# Maximum-weight caterpillar arborescence via the pair-value equivalence.
# ---------------------------------------------------------------------------

def solve_caterpillar_maxweight(g: StrengthGraph, weights,
                                limit: int = BRUTE_FORCE_LIMIT) -> tuple[Caterpillar, int]:
    """Best spanning caterpillar of an acyclic graph under 0/1 edge weights.

    A caterpillar's weight equals the tournament value of its seeding under
    pair values equal to the edge weights, so this wraps the exhaustive
    seeding search.
    """
    if is_dag(g) is None:
        raise NotADagError()
    spec = weights if isinstance(weights, PairBased) else PairBased(weights)
    result = exact_bruteforce(Instance(graph=g, value=spec), limit=limit)
    return seeding_to_caterpillar(g, result.seeding), result.value


# ---------------------------------------------------------------------------
# Routing.
# ---------------------------------------------------------------------------

def dispatch(inst: Instance, limit: int = BRUTE_FORCE_LIMIT) -> SolveResult:
    """Route an instance to the strongest applicable solver."""
    g, spec = inst.graph, inst.value
    shape = classify(spec, g)
    t = inst.target

    if isinstance(spec, PlayerPopularity):
        if shape.dag:
            return solve_dag_popularity_greedy(g, spec, target=t)
        if set(spec.p) <= {0, 1}:
            return solve_binary_popularity(g, spec, target=t)
        if g.n <= limit:
            return exact_bruteforce(inst, limit=limit)
        return approx_popularity(g, spec, target=t)

    if isinstance(spec, WIN_COUNT_FAMILIES):
        if shape.dag:
            return solve_dag_wincount_dp(g, spec, target=t)
        if g.n <= limit:
            return exact_bruteforce(inst, limit=limit)
        raise NoAlgorithmError(
            f"win-count values on a cyclic graph are NP-hard; {g.n} players "
            f"exceeds the exhaustive-search limit {limit}"
        )

    # pair-based: NP-hard even on DAGs
    if g.n <= limit:
        return exact_bruteforce(inst, limit=limit)
    raise NoAlgorithmError(
        f"pair-based values are NP-hard even on acyclic graphs; {g.n} players "
        f"exceeds the exhaustive-search limit {limit}"
    )
