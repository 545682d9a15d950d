"""Complete directed strength graphs and their basic algorithms.

Players are the integers ``0..n-1``. For every unordered pair exactly one
direction is present: ``beats[i, j]`` is True when player i wins a match
against player j. Storage is a dense boolean matrix, so beat queries are
constant time; graphs are immutable once built.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import (
    DuplicateEdgeError,
    EmptySubsetError,
    MissingEdgeError,
    SelfLoopError,
)


@dataclass(frozen=True)
class StrengthGraph:
    n: int
    beats: np.ndarray = field(repr=False)

    def beats_over(self, i: int, j: int) -> bool:
        return bool(self.beats[i, j])

    @property
    def players(self) -> range:
        return range(self.n)

    def out_degrees(self) -> np.ndarray:
        return self.beats.sum(axis=1)


def from_matrix(beats: np.ndarray) -> StrengthGraph:
    """Wrap a boolean beat matrix, checking completeness and antisymmetry."""
    beats = np.ascontiguousarray(beats, dtype=bool)
    n = beats.shape[0]
    if beats.shape != (n, n):
        raise ValueError(f"beat matrix must be square, got {beats.shape}")
    if beats.diagonal().any():
        raise SelfLoopError(int(np.flatnonzero(beats.diagonal())[0]))
    both = beats & beats.T
    if both.any():
        i, j = np.argwhere(both)[0]
        raise DuplicateEdgeError((int(i), int(j)))
    neither = ~(beats | beats.T)
    np.fill_diagonal(neither, False)
    if neither.any():
        i, j = np.argwhere(neither)[0]
        raise MissingEdgeError((int(min(i, j)), int(max(i, j))))
    beats.setflags(write=False)
    return StrengthGraph(n=n, beats=beats)


def build_graph(n: int, edges) -> StrengthGraph:
    """Build a strength graph from (winner, loser) pairs.

    Every unordered pair of distinct players must appear exactly once;
    violations raise SelfLoopError, DuplicateEdgeError or MissingEdgeError
    naming the offending pair.
    """
    if n < 1:
        raise ValueError(f"player count must be >= 1, got {n}")
    beats = np.zeros((n, n), dtype=bool)
    edges = list(edges)
    if edges:
        arr = np.asarray(edges, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be (winner, loser) pairs")
        if arr.min() < 0 or arr.max() >= n:
            bad = arr[(arr < 0).any(axis=1) | (arr >= n).any(axis=1)][0]
            raise ValueError(f"edge {tuple(bad)} references a player outside 0..{n - 1}")
        loops = arr[:, 0] == arr[:, 1]
        if loops.any():
            raise SelfLoopError(int(arr[loops][0, 0]))
        lo = arr.min(axis=1)
        hi = arr.max(axis=1)
        keys = lo * n + hi
        uniq, counts = np.unique(keys, return_counts=True)
        if (counts > 1).any():
            k = int(uniq[counts > 1][0])
            raise DuplicateEdgeError((k // n, k % n))
        beats[arr[:, 0], arr[:, 1]] = True
    total_pairs = n * (n - 1) // 2
    if len(edges) < total_pairs:
        missing = ~(beats | beats.T)
        np.fill_diagonal(missing, False)
        i, j = np.argwhere(missing)[0]
        raise MissingEdgeError((int(min(i, j)), int(max(i, j))))
    beats.setflags(write=False)
    return StrengthGraph(n=n, beats=beats)


def edge_list(g: StrengthGraph) -> list[tuple[int, int]]:
    """All (winner, loser) pairs, sorted."""
    return [(int(i), int(j)) for i, j in np.argwhere(g.beats)]


def is_dag(g: StrengthGraph):
    """Strength order weakest-to-strongest if the graph is acyclic, else None.

    A complete digraph is acyclic exactly when its out-degrees are a
    permutation of 0..n-1; the player at position r of the returned order
    beats exactly r others.
    """
    deg = g.out_degrees()
    if not np.array_equal(np.sort(deg), np.arange(g.n)):
        return None
    return [int(p) for p in np.argsort(deg)]


def hamiltonian_path(g: StrengthGraph) -> list[int]:
    """A path visiting every player, each beating its successor.

    Insertion construction: each player goes in front of the first player
    it beats in the partial path, or at the end. O(n^2).
    """
    order = kernels.hamiltonian_insertion(g.beats.astype(np.uint8))
    return [int(p) for p in order]


def induced_subgraph(g: StrengthGraph, subset) -> tuple[StrengthGraph, list[int]]:
    """Restrict to a player subset, relabeling to 0..k-1.

    Returns the subgraph and the relabeling map: entry r is the original
    id of the subgraph's player r (original ids in ascending order).
    """
    players = sorted(set(int(p) for p in subset))
    if not players:
        raise EmptySubsetError()
    if players[0] < 0 or players[-1] >= g.n:
        raise ValueError(f"subset references a player outside 0..{g.n - 1}")
    idx = np.asarray(players, dtype=np.int64)
    sub = g.beats[np.ix_(idx, idx)].copy()
    sub.setflags(write=False)
    return StrengthGraph(n=len(players), beats=sub), players
