"""Unweighted BFS machinery over CSR adjacency arrays.

Vertices are integer indices ``0..n-1`` into ``indptr``; a vertex may be
excluded from every computation by passing an ``active`` mask (the commuting
graph uses this to drop the identity, code 0).  Nothing here knows about
groups.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence

import numpy as np

UNREACHED = np.uint16(0xFFFF)
DIST_DTYPE = np.uint16


@dataclass
class EccentricityBounds:
    """Outcome of an exact diameter/radius computation."""

    connected: bool
    diameter: float
    radius: float
    witness: tuple[int, int]
    center: int
    n_bfs: int
    eccentricities: Optional[np.ndarray] = field(default=None, repr=False)


def gather_neighbors(indptr: np.ndarray, indices: np.ndarray, frontier: np.ndarray) -> np.ndarray:
    """Concatenated neighbor lists of ``frontier``, in frontier order."""
    starts = indptr[frontier]
    lens = indptr[frontier + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=indices.dtype)
    offsets = np.repeat(starts - (np.cumsum(lens) - lens), lens)
    return indices[offsets + np.arange(total)]


def bfs_csr(indptr: np.ndarray, indices: np.ndarray, source: int) -> np.ndarray:
    """Single-source distances; ``UNREACHED`` marks vertices not reached."""
    n = len(indptr) - 1
    dist = np.full(n, UNREACHED, dtype=DIST_DTYPE)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    level = 0
    while frontier.size:
        nb = gather_neighbors(indptr, indices, frontier)
        nb = np.unique(nb[dist[nb] == UNREACHED])
        level += 1
        if level >= UNREACHED:
            raise OverflowError("distance exceeds 16-bit storage")
        dist[nb] = level
        frontier = nb.astype(np.int64)
    return dist


def bfs_lazy(n: int, neighbors: Callable[[int], Iterable[int]], source: int) -> np.ndarray:
    """FIFO BFS pulling neighbor lists on demand; same output as :func:`bfs_csr`."""
    from collections import deque

    dist = np.full(n, UNREACHED, dtype=DIST_DTYPE)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in neighbors(u):
            if dist[v] == UNREACHED:
                dist[v] = du
                queue.append(v)
    return dist


def _unpack(words: np.ndarray, count: int) -> np.ndarray:
    return np.unpackbits(words.view(np.uint8), bitorder="little")[:count].astype(bool)


def multi_source_eccentricities(
    indptr: np.ndarray,
    indices: np.ndarray,
    sources: np.ndarray,
    active: np.ndarray,
) -> np.ndarray:
    """Eccentricities of up to 64*k sources at once, one bit lane per source.

    Every level ORs the frontier bit-rows of each vertex's neighbors.  A source
    that leaves an active vertex unreached gets ``UNREACHED``.
    """
    n = len(indptr) - 1
    s = len(sources)
    words = max(1, (s + 63) // 64)
    lanes = np.arange(s)
    frontier = np.zeros((n, words), dtype=np.uint64)
    np.bitwise_or.at(
        frontier,
        (np.asarray(sources), lanes // 64),
        np.left_shift(np.uint64(1), (lanes % 64).astype(np.uint64)),
    )
    visited = frontier.copy()
    ecc = np.zeros(s, dtype=DIST_DTYPE)
    degree = np.diff(indptr)
    empty = degree == 0
    seg = np.minimum(indptr[:-1], max(len(indices) - 1, 0))
    level = 0
    while True:
        if len(indices) == 0:
            break
        nxt = np.bitwise_or.reduceat(frontier[indices], seg, axis=0)
        nxt[empty] = 0
        nxt &= ~visited
        touched = np.bitwise_or.reduce(nxt, axis=0)
        if not touched.any():
            break
        level += 1
        visited |= nxt
        ecc[_unpack(touched, s)] = level
        frontier = nxt
    full = np.bitwise_and.reduce(visited[active], axis=0)
    ecc[~_unpack(full, s)] = UNREACHED
    return ecc


def _batches(seq: np.ndarray, size: int) -> List[np.ndarray]:
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def all_eccentricities(
    indptr: np.ndarray,
    indices: np.ndarray,
    active: np.ndarray,
    threads: int = 1,
    lanes: int = 256,
) -> np.ndarray:
    """Eccentricity of every active vertex (``UNREACHED`` elsewhere or if cut off).

    Sources are split into batches of ``lanes``; batches run on a thread pool
    and are merged in batch order, so the result does not depend on ``threads``.
    """
    sources = np.flatnonzero(active)
    batches = _batches(sources, lanes)
    ecc = np.full(len(indptr) - 1, UNREACHED, dtype=DIST_DTYPE)

    def run(batch):
        return multi_source_eccentricities(indptr, indices, batch, active)

    if threads > 1 and len(batches) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, batches))
    else:
        results = [run(b) for b in batches]
    for batch, res in zip(batches, results):
        ecc[batch] = res
    return ecc


def _farthest(dist: np.ndarray, active: np.ndarray) -> int:
    d = np.where(active, dist, 0)
    return int(np.argmax(d))


def _first_unreached(dist: np.ndarray, active: np.ndarray) -> int:
    return int(np.flatnonzero(active & (dist == UNREACHED))[0])


def exact_all_sources(
    indptr: np.ndarray,
    indices: np.ndarray,
    active: np.ndarray,
    threads: int = 1,
    bfs: Optional[Callable[[int], np.ndarray]] = None,
) -> EccentricityBounds:
    """Diameter and radius from the eccentricity of every active vertex."""
    bfs = bfs or (lambda s: bfs_csr(indptr, indices, s))
    ecc = all_eccentricities(indptr, indices, active, threads)
    act = np.flatnonzero(active)
    n_bfs = len(act)
    if len(act) == 0:
        return EccentricityBounds(True, 0, 0, (0, 0), 0, 0, ecc)
    vals = ecc[act]
    if (vals == UNREACHED).any():
        u = int(act[0])
        dist = bfs(u)
        return EccentricityBounds(
            False, math.inf, math.inf, (u, _first_unreached(dist, active)), u, n_bfs + 1, ecc
        )
    u = int(act[np.argmax(vals)])
    center = int(act[np.argmin(vals)])
    dist = bfs(u)
    return EccentricityBounds(
        True, int(vals.max()), int(vals.min()), (u, _farthest(dist, active)), center, n_bfs + 1, ecc
    )


def bounding_eccentricities(
    n: int,
    active: np.ndarray,
    bfs: Callable[[int], np.ndarray],
    start: Optional[int] = None,
) -> EccentricityBounds:
    """Exact diameter and radius with as few BFS runs as the bounds allow.

    Every BFS from ``v`` with eccentricity ``e`` bounds each ``w`` by
    ``max(d(v,w), e - d(v,w)) <= ecc(w) <= e + d(v,w)``.  A vertex leaves the
    candidate set once its bounds meet or once it can improve neither the
    diameter lower bound nor the radius upper bound.  Sources alternate between
    the largest upper bound (peripheral sweep) and the smallest lower bound
    (central sweep); ties go to the smallest index.  The loop ends when no
    candidate remains, at which point both values are exact.
    """
    big = np.int64(1 << 40)
    lower = np.zeros(n, dtype=np.int64)
    upper = np.full(n, big, dtype=np.int64)
    cand = active.copy()
    if not cand.any():
        return EccentricityBounds(True, 0, 0, (0, 0), 0, 0)
    diam_lo, rad_hi = -1, big
    witness = (0, 0)
    center = 0
    n_bfs = 0
    pick_high = True
    v = int(np.flatnonzero(cand)[0]) if start is None else start
    while True:
        dist = bfs(v)
        n_bfs += 1
        d = dist.astype(np.int64)
        if (dist[active] == UNREACHED).any():
            return EccentricityBounds(
                False, math.inf, math.inf, (v, _first_unreached(dist, active)), v, n_bfs
            )
        e = int(d[active].max())
        if e > diam_lo:
            diam_lo = e
            witness = (v, _farthest(dist, active))
        if e < rad_hi:
            rad_hi = e
            center = v
        lower = np.maximum(lower, np.maximum(d, e - d))
        upper = np.minimum(upper, e + d)
        cand[v] = False
        cand &= ~(lower == upper)
        cand &= ~((upper <= diam_lo) & (lower >= rad_hi))
        if not cand.any():
            break
        idx = np.flatnonzero(cand)
        if pick_high:
            v = int(idx[np.argmax(upper[idx])])
        else:
            v = int(idx[np.argmin(lower[idx])])
        pick_high = not pick_high
    return EccentricityBounds(True, diam_lo, rad_hi, witness, center, n_bfs)


def csr_from_lists(adj: Sequence[Sequence[int]]) -> tuple[np.ndarray, np.ndarray]:
    """CSR arrays from a list of neighbor lists."""
    lens = np.fromiter((len(a) for a in adj), dtype=np.int64, count=len(adj))
    indptr = np.zeros(len(adj) + 1, dtype=np.int64)
    np.cumsum(lens, out=indptr[1:])
    flat = [x for a in adj for x in a]
    return indptr, np.asarray(flat, dtype=np.int64)
