"""Hot numeric kernels: exhaustive seeding search and Hamiltonian-path insertion.

Each kernel has two interchangeable implementations:

* a numba ``@njit`` version compiled from plain loops (default), and
* a pure-numpy version that batches work with vectorized operations.

Set ``STEPLADDER_NO_NUMBA=1`` in the environment to force the numpy path
(the numpy path is also used automatically when numba is not importable).
Both implementations obey the same contract, including the deterministic
tie-break: the exhaustive searches return the lexicographically smallest
maximizing permutation. ``benchmarks/bench_kernels.py`` compares the two.
"""

import itertools
import os

import numpy as np

_ENV_FLAG = "STEPLADDER_NO_NUMBA"

# Rows per numpy batch in the exhaustive search; bounds peak memory at
# roughly chunk * n * 8 bytes.
_CHUNK = 131072


def _numba_disabled() -> bool:
    return os.environ.get(_ENV_FLAG, "").strip().lower() in ("1", "true", "yes")


# ---------------------------------------------------------------------------
# Loop implementations (numba-compilable; also correct, if slow, as plain
# Python, which keeps them directly testable).
# ---------------------------------------------------------------------------


def _brute_matrix_loops(beats, match_value):
    """Best seeding when each match is worth match_value[winner, loser]."""
    n = beats.shape[0]
    perm = np.arange(n)
    best_perm = perm.copy()
    best = np.int64(-1)
    while True:
        champ = perm[0]
        total = np.int64(0)
        for r in range(1, n):
            ch = perm[r]
            if beats[champ, ch]:
                total += match_value[champ, ch]
            else:
                total += match_value[ch, champ]
                champ = ch
        if total > best:
            best = total
            best_perm[:] = perm
        # advance to the next permutation in lexicographic order
        i = n - 2
        while i >= 0 and perm[i] >= perm[i + 1]:
            i -= 1
        if i < 0:
            break
        j = n - 1
        while perm[j] <= perm[i]:
            j -= 1
        perm[i], perm[j] = perm[j], perm[i]
        lo, hi = i + 1, n - 1
        while lo < hi:
            perm[lo], perm[hi] = perm[hi], perm[lo]
            lo += 1
            hi -= 1
    return best, best_perm


def _brute_cumulative_loops(beats, cum):
    """Best seeding when player i with w wins contributes cum[i, w]."""
    n = beats.shape[0]
    perm = np.arange(n)
    best_perm = perm.copy()
    wins = np.zeros(n, dtype=np.int64)
    first = True
    best = np.int64(0)
    while True:
        wins[:] = 0
        champ = perm[0]
        for r in range(1, n):
            ch = perm[r]
            if beats[champ, ch]:
                wins[champ] += 1
            else:
                wins[ch] += 1
                champ = ch
        total = np.int64(0)
        for i in range(n):
            total += cum[i, wins[i]]
        if first or total > best:
            first = False
            best = total
            best_perm[:] = perm
        i = n - 2
        while i >= 0 and perm[i] >= perm[i + 1]:
            i -= 1
        if i < 0:
            break
        j = n - 1
        while perm[j] <= perm[i]:
            j -= 1
        perm[i], perm[j] = perm[j], perm[i]
        lo, hi = i + 1, n - 1
        while lo < hi:
            perm[lo], perm[hi] = perm[hi], perm[lo]
            lo += 1
            hi -= 1
    return best, best_perm


def _hampath_loops(beats):
    """Insertion construction: put each player before the first one it beats."""
    n = beats.shape[0]
    path = np.empty(n, dtype=np.int64)
    path[0] = 0
    for v in range(1, n):
        pos = v
        for j in range(v):
            if beats[v, path[j]]:
                pos = j
                break
        for j in range(v, pos, -1):
            path[j] = path[j - 1]
        path[pos] = v
    return path


# ---------------------------------------------------------------------------
# Pure-numpy implementations.
# ---------------------------------------------------------------------------


def _batch_match_values(perms, beats, match_value):
    """Simulate a (B, n) block of seedings; per-match value mode."""
    b, n = perms.shape
    champ = perms[:, 0].copy()
    total = np.zeros(b, dtype=np.int64)
    for r in range(1, n):
        ch = perms[:, r]
        champ_wins = beats[champ, ch].astype(bool)
        winner = np.where(champ_wins, champ, ch)
        loser = np.where(champ_wins, ch, champ)
        total += match_value[winner, loser]
        champ = winner
    return total


def _batch_cumulative_values(perms, beats, cum):
    """Simulate a (B, n) block of seedings; cumulative win-value mode."""
    b, n = perms.shape
    champ = perms[:, 0].copy()
    wins = np.zeros((b, n), dtype=np.int64)
    rows = np.arange(b)
    for r in range(1, n):
        ch = perms[:, r]
        champ_wins = beats[champ, ch].astype(bool)
        winner = np.where(champ_wins, champ, ch)
        wins[rows, winner] += 1
        champ = winner
    total = np.zeros(b, dtype=np.int64)
    for i in range(n):
        total += cum[i, wins[:, i]]
    return total


def _brute_numpy(beats, table, batch_fn):
    n = beats.shape[0]
    it = itertools.permutations(range(n))
    best = None
    best_perm = None
    while True:
        block = list(itertools.islice(it, _CHUNK))
        if not block:
            break
        perms = np.array(block, dtype=np.int64)
        values = batch_fn(perms, beats, table)
        i = int(np.argmax(values))
        if best is None or values[i] > best:
            best = np.int64(values[i])
            best_perm = perms[i].copy()
    return best, best_perm


def _brute_matrix_numpy(beats, match_value):
    return _brute_numpy(beats, match_value, _batch_match_values)


def _brute_cumulative_numpy(beats, cum):
    return _brute_numpy(beats, cum, _batch_cumulative_values)


def _hampath_numpy(beats):
    n = beats.shape[0]
    path = np.empty(n, dtype=np.int64)
    path[0] = 0
    for v in range(1, n):
        row = beats[v, path[:v]]
        pos = int(np.argmax(row))
        if not row[pos]:
            pos = v
        path[pos + 1 : v + 1] = path[pos:v].copy()
        path[pos] = v
    return path


# ---------------------------------------------------------------------------
# Backend selection.
# ---------------------------------------------------------------------------

BACKENDS = {
    "numpy": {
        "brute_force_matrix": _brute_matrix_numpy,
        "brute_force_cumulative": _brute_cumulative_numpy,
        "hamiltonian_insertion": _hampath_numpy,
    }
}

try:  # pragma: no cover - exercised indirectly via backend tests
    if _numba_disabled():
        raise ImportError("numba disabled by environment flag")
    from numba import njit

    BACKENDS["numba"] = {
        "brute_force_matrix": njit(cache=True)(_brute_matrix_loops),
        "brute_force_cumulative": njit(cache=True)(_brute_cumulative_loops),
        "hamiltonian_insertion": njit(cache=True)(_hampath_loops),
    }
    _ACTIVE = "numba"
except ImportError:
    _ACTIVE = "numpy"


def active_backend() -> str:
    """Name of the backend the module-level kernels dispatch to."""
    return _ACTIVE


brute_force_matrix = BACKENDS[_ACTIVE]["brute_force_matrix"]
brute_force_cumulative = BACKENDS[_ACTIVE]["brute_force_cumulative"]
hamiltonian_insertion = BACKENDS[_ACTIVE]["hamiltonian_insertion"]


def warm_up():
    """Trigger JIT compilation on tiny inputs so timed runs stay honest."""
    beats = np.array([[0, 1], [0, 0]], dtype=np.uint8)
    table = np.zeros((2, 2), dtype=np.int64)
    brute_force_matrix(beats, table)
    brute_force_cumulative(beats, table)
    hamiltonian_insertion(beats)
