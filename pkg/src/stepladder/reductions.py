"""Instance generators mirroring the four hardness constructions, with
witness seedings for YES solutions and tiny oracles for the source problems.

All generators are deterministic: free edge orientations are fixed to
lower-id-beats-higher, player ids follow the documented layouts below, and
identical sources produce byte-identical instances. Degenerate sources
(empty triple systems, isolated vertices, undersized thresholds) are emitted
with machine-readable warnings instead of being rejected.

Player layouts:

* 3DM -> ternary popularity: elements 0..3n-1, one player per triple at
  3n+i, finally the lone popularity-2 player; target 2m+2n+1.
* 3DM -> pair values on a DAG: the dominant player is 0, triple players
  1..m, element players m+1..m+3n; target m+2n+1.
* Independent Set -> binary / linear thresholds: vertex players 0..|V|-1,
  then a block of ``mult`` players per edge; target k (binary) or 2nk
  (linear). ``mult`` defaults to |V|^2 as the counting argument requires;
  smaller demo multiplicities are allowed but flagged.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import graph as sg
from .errors import InvalidSolutionError, InvalidTriplesError, TooLargeError
from .graph import StrengthGraph, hamiltonian_path, induced_subgraph
from .tournament import Caterpillar, caterpillar_to_seeding
from .values import BinaryThreshold, Instance, LinearAfterThreshold, PairBased, PlayerPopularity

ORACLE_LIMIT = 20


# ---------------------------------------------------------------------------
# Source problems.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThreeDMInstance:
    """Three-dimensional matching over X = 0..n-1, Y = n..2n-1, Z = 2n..3n-1."""

    n: int
    triples: tuple[tuple[int, int, int], ...]

    def __init__(self, n, triples):
        if n < 0:
            raise InvalidTriplesError(f"element-count parameter must be >= 0, got {n}")
        norm = []
        for t in triples:
            t = tuple(int(x) for x in t)
            if len(t) != 3:
                raise InvalidTriplesError(f"triple {t} does not have 3 elements")
            bands = sorted(t)
            if not (0 <= bands[0] < n <= bands[1] < 2 * n <= bands[2] < 3 * n):
                raise InvalidTriplesError(f"triple {t} does not pick one element per band")
            norm.append(tuple(bands))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "triples", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.triples)

    @property
    def universe(self) -> range:
        return range(3 * self.n)


@dataclass(frozen=True)
class IndependentSetInstance:
    vertices: int
    edges: tuple[tuple[int, int], ...]
    k: int

    def __init__(self, vertices, edges, k):
        vertices = int(vertices)
        if vertices < 1:
            raise ValueError(f"vertex count must be >= 1, got {vertices}")
        seen = set()
        norm = []
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self loop on vertex {u}")
            if not (0 <= u < vertices and 0 <= v < vertices):
                raise ValueError(f"edge ({u},{v}) outside 0..{vertices - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            norm.append(key)
        if not 0 <= int(k) <= vertices:
            raise ValueError(f"target size k={k} outside 0..{vertices}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        object.__setattr__(self, "k", int(k))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


def covered_elements(tdm: ThreeDMInstance, indices) -> set[int]:
    out: set[int] = set()
    for i in indices:
        out.update(tdm.triples[i])
    return out


def check_3dm_solution(tdm: ThreeDMInstance, indices) -> list[int]:
    """Validate an exact cover given as triple indices."""
    idx = sorted(int(i) for i in indices)
    if len(set(idx)) != len(idx):
        raise InvalidSolutionError("repeated triple index")
    if any(i < 0 or i >= tdm.m for i in idx):
        raise InvalidSolutionError("triple index out of range")
    if len(idx) != tdm.n:
        raise InvalidSolutionError(f"need exactly {tdm.n} triples, got {len(idx)}")
    seen: set[int] = set()
    for i in idx:
        t = set(tdm.triples[i])
        if seen & t:
            raise InvalidSolutionError(f"triple {i} overlaps earlier triples")
        seen |= t
    if seen != set(tdm.universe):
        raise InvalidSolutionError("selected triples do not cover the universe")
    return idx


def check_is_solution(inst: IndependentSetInstance, vertices) -> list[int]:
    """Validate an independent set of size >= k."""
    vs = sorted(set(int(v) for v in vertices))
    if any(v < 0 or v >= inst.vertices for v in vs):
        raise InvalidSolutionError("vertex out of range")
    chosen = set(vs)
    for u, v in inst.edges:
        if u in chosen and v in chosen:
            raise InvalidSolutionError(f"vertices {u} and {v} are adjacent")
    if len(vs) < inst.k:
        raise InvalidSolutionError(f"need at least {inst.k} vertices, got {len(vs)}")
    return vs


# ---------------------------------------------------------------------------
# Oracles (exhaustive, for labeling small fixtures).
# ---------------------------------------------------------------------------


def oracle_3dm(tdm: ThreeDMInstance):
    """Lexicographically smallest exact cover as triple indices, or None."""
    if tdm.m > ORACLE_LIMIT:
        raise TooLargeError(tdm.m, ORACLE_LIMIT, what="3DM oracle")
    full = (1 << (3 * tdm.n)) - 1
    masks = [sum(1 << e for e in t) for t in tdm.triples]

    def dfs(start, mask, chosen):
        if mask == full and len(chosen) == tdm.n:
            return list(chosen)
        if len(chosen) >= tdm.n or tdm.m - start < tdm.n - len(chosen):
            return None
        for i in range(start, tdm.m):
            if masks[i] & mask:
                continue
            chosen.append(i)
            hit = dfs(i + 1, mask | masks[i], chosen)
            if hit is not None:
                return hit
            chosen.pop()
        return None

    return dfs(0, 0, [])


def oracle_is(inst: IndependentSetInstance) -> tuple[int, list[int]]:
    """Maximum independent set size and its lexicographically smallest witness."""
    n = inst.vertices
    if n > ORACLE_LIMIT:
        raise TooLargeError(n, ORACLE_LIMIT, what="independent-set oracle")
    adj = [0] * n
    for u, v in inst.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if mask == 0:
            return 0
        v = (mask & -mask).bit_length() - 1
        return max(best(mask & ~(1 << v)), 1 + best(mask & ~((1 << v) | adj[v])))

    chosen = []
    mask = (1 << n) - 1
    while mask:
        v = (mask & -mask).bit_length() - 1
        if 1 + best(mask & ~((1 << v) | adj[v])) >= best(mask & ~(1 << v)):
            chosen.append(v)
            mask &= ~((1 << v) | adj[v])
        else:
            mask &= ~(1 << v)
    size = best.__wrapped__((1 << n) - 1) if False else len(chosen)
    best.cache_clear()
    return size, chosen


# ---------------------------------------------------------------------------
# Reductions.
# ---------------------------------------------------------------------------


@dataclass
class Reduction:
    kind: str
    source: object
    instance: Instance
    warnings: list[str] = field(default_factory=list)
    layout: dict = field(default_factory=dict)


def _base_lower_beats_higher(n: int) -> np.ndarray:
    return np.triu(np.ones((n, n), dtype=bool), k=1)


def _finish_reduction(kind, source, beats, value, target, warnings, layout, roles):
    g = sg.from_matrix(beats)
    meta = {
        "reduction": {
            "kind": kind,
            "player_roles": roles,
        }
    }
    if warnings:
        meta["reduction"]["warnings"] = sorted(warnings)
    inst = Instance(graph=g, value=value, target=target, meta=meta)
    return Reduction(kind=kind, source=source, instance=inst, warnings=sorted(warnings), layout=layout)


def reduce_3dm_to_ternary_popularity(tdm: ThreeDMInstance) -> Reduction:
    """Popularity-{0,1,2} instance that reaches 2m+2n+1 iff the matching exists.

    One popularity-0 player per element, one popularity-1 player per triple
    (beating exactly the elements it contains), and a single popularity-2
    player that beats every triple player and loses to every element player.
    """
    n3, m = 3 * tdm.n, tdm.m
    total = n3 + m + 1
    h = n3 + m
    beats = _base_lower_beats_higher(total)
    for i, t in enumerate(tdm.triples):
        s = n3 + i
        for a in t:
            beats[s, a] = True
            beats[a, s] = False
        beats[h, s] = True
        beats[s, h] = False
    # element players keep the default orientation against h (element id < h)
    pop = [0] * n3 + [1] * m + [2]
    warnings = [] if tdm.n >= 1 else ["degenerate-empty-matching"]
    roles = [f"element:{a}" for a in range(n3)] + [f"triple:{i}" for i in range(m)] + ["champ-bait"]
    layout = {"element": lambda a: a, "triple": lambda i: n3 + i, "h": h}
    return _finish_reduction(
        "3dm-popularity", tdm, beats, PlayerPopularity(pop),
        2 * m + 2 * tdm.n + 1, warnings, layout, roles,
    )


def reduce_3dm_to_pairbased_dag(tdm: ThreeDMInstance) -> Reduction:
    """Binary pair-value instance on a transitive graph; target m+2n+1.

    Player 0 beats everyone and scores 1 against each triple player; a
    triple player scores 1 against the element players it covers.
    """
    n3, m = 3 * tdm.n, tdm.m
    total = 1 + m + n3
    beats = _base_lower_beats_higher(total)  # already a transitive tournament
    pair = np.zeros((total, total), dtype=np.int64)
    for i, t in enumerate(tdm.triples):
        a = 1 + i
        pair[0, a] = 1
        for u in t:
            pair[a, 1 + m + u] = 1
    warnings = [] if tdm.n >= 1 else ["degenerate-empty-matching"]
    roles = ["dominant"] + [f"triple:{i}" for i in range(m)] + [f"element:{u}" for u in range(n3)]
    layout = {"c": 0, "triple": lambda i: 1 + i, "element": lambda u: 1 + m + u}
    return _finish_reduction(
        "3dm-pair", tdm, beats, PairBased(pair.tolist()),
        m + 2 * tdm.n + 1, warnings, layout, roles,
    )


def _is_strength_graph(inst: IndependentSetInstance, mult: int):
    nv = inst.vertices
    total = nv + mult * len(inst.edges)
    beats = _base_lower_beats_higher(total)
    for ei, (u, v) in enumerate(inst.edges):
        lo = nv + ei * mult
        block = slice(lo, lo + mult)
        for w in range(nv):
            if w == u or w == v:
                beats[w, block] = True
                beats[block, w] = False
            else:
                beats[w, block] = False
                beats[block, w] = True
    return beats, total


def _mult_and_warnings(inst: IndependentSetInstance, scale):
    warnings = []
    mult = inst.vertices**2 if scale is None else int(scale)
    if scale is not None and mult < inst.vertices**2:
        warnings.append("scaled-multiplicity")
    if mult < 1:
        raise ValueError(f"edge-player multiplicity must be >= 1, got {mult}")
    return mult, warnings


def reduce_is_to_binary_wincount(inst: IndependentSetInstance, scale=None) -> Reduction:
    """Binary-threshold instance: vertex player v counts iff it wins
    degree(v) * mult matches; edge players can never count. Target k."""
    mult, warnings = _mult_and_warnings(inst, scale)
    beats, total = _is_strength_graph(inst, mult)
    lam = [inst.degree(v) * mult for v in range(inst.vertices)] + [total] * (total - inst.vertices)
    if any(inst.degree(v) == 0 for v in range(inst.vertices)):
        warnings.append("isolated-vertices-trivially-count")
    roles = [f"vertex:{v}" for v in range(inst.vertices)] + [
        f"edge:{ei}:{l}" for ei in range(len(inst.edges)) for l in range(mult)
    ]
    layout = {"mult": mult, "vertex": lambda v: v,
              "edge_block": lambda ei: range(inst.vertices + ei * mult, inst.vertices + (ei + 1) * mult)}
    return _finish_reduction(
        "is-binary", inst, beats, BinaryThreshold(lam), inst.k, warnings, layout, roles,
    )


def reduce_is_to_linear_threshold(inst: IndependentSetInstance, scale=None) -> Reduction:
    """Linear-after-threshold instance: vertex player v has threshold
    degree(v) * mult - 2|V|, so a witness vertex clears it by 2|V|+1.
    Target 2|V|k. Isolated vertices get an unreachable threshold."""
    mult, warnings = _mult_and_warnings(inst, scale)
    beats, total = _is_strength_graph(inst, mult)
    nv = inst.vertices
    lam = []
    for v in range(nv):
        d = inst.degree(v)
        if d == 0:
            lam.append(total)
            if "isolated-vertices-unreachable" not in warnings:
                warnings.append("isolated-vertices-unreachable")
            continue
        raw = d * mult - 2 * nv
        if raw < 1:
            if "threshold-underflow" not in warnings:
                warnings.append("threshold-underflow")
            raw = 1
        lam.append(raw)
    lam += [total] * (total - nv)
    roles = [f"vertex:{v}" for v in range(nv)] + [
        f"edge:{ei}:{l}" for ei in range(len(inst.edges)) for l in range(mult)
    ]
    layout = {"mult": mult, "vertex": lambda v: v,
              "edge_block": lambda ei: range(nv + ei * mult, nv + (ei + 1) * mult)}
    return _finish_reduction(
        "is-linear", inst, beats, LinearAfterThreshold(lam), 2 * nv * inst.k,
        warnings, layout, roles,
    )


REDUCTIONS = {
    "3dm-popularity": reduce_3dm_to_ternary_popularity,
    "3dm-pair": reduce_3dm_to_pairbased_dag,
    "is-binary": reduce_is_to_binary_wincount,
    "is-linear": reduce_is_to_linear_threshold,
}


# ---------------------------------------------------------------------------
# Witness seedings (the YES directions, made executable).
# ---------------------------------------------------------------------------


def witness_seeding(red: Reduction, solution) -> list[int]:
    """Seeding realizing a source solution's value in the reduced instance.

    The solution is a list of triple indices (3DM kinds) or vertices (IS
    kinds); it is validated against the source instance first. For the 3DM
    reductions the seeding meets the target exactly; for the IS reductions
    it meets or exceeds it.
    """
    if red.kind == "3dm-popularity":
        return _witness_3dm(red, solution, backbone_head=red.layout["h"])
    if red.kind == "3dm-pair":
        return _witness_3dm(red, solution, backbone_head=red.layout["c"])
    if red.kind in ("is-binary", "is-linear"):
        return _witness_is(red, solution)
    raise ValueError(f"unknown reduction kind {red.kind!r}")


def _witness_3dm(red: Reduction, solution, backbone_head: int) -> list[int]:
    tdm: ThreeDMInstance = red.source
    chosen = check_3dm_solution(tdm, solution)
    g = red.instance.graph
    triple_player = red.layout["triple"]
    element_player = red.layout["element"]

    selected = [triple_player(i) for i in chosen]
    path = []
    if selected:
        sub, names = induced_subgraph(g, selected)
        path = [names[q] for q in hamiltonian_path(sub)]
    backbone = [backbone_head] + path
    leaves = {b: [] for b in backbone}
    leaves[backbone_head] = [triple_player(i) for i in range(tdm.m) if i not in set(chosen)]
    member_of = {path[pos]: chosen[idx] for idx, pos in
                 ((chosen.index(i), p) for p, i in
                  ((path.index(triple_player(i)), i) for i in chosen))} if False else None
    by_player = {triple_player(i): i for i in chosen}
    for b in path:
        leaves[b] = [element_player(u) for u in tdm.triples[by_player[b]]]
    return caterpillar_to_seeding(g, Caterpillar(backbone=backbone, leaves=leaves))


def _witness_is(red: Reduction, solution) -> list[int]:
    inst: IndependentSetInstance = red.source
    chosen = check_is_solution(inst, solution)
    g = red.instance.graph
    vertex_player = red.layout["vertex"]
    edge_block = red.layout["edge_block"]

    players = [vertex_player(v) for v in chosen]
    sub, names = induced_subgraph(g, players)
    path = [names[q] for q in hamiltonian_path(sub)]  # consecutive beats
    player_vertex = {vertex_player(v): v for v in chosen}

    seeding = []
    for pv in reversed(path):  # weakest witness first; each dethrones the last
        seeding.append(pv)
        v = player_vertex[pv]
        for ei, e in enumerate(inst.edges):
            if v in e:
                seeding.extend(edge_block(ei))
    placed = set(seeding)
    seeding.extend(q for q in g.players if q not in placed)
    return seeding
