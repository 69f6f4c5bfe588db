"""Commuting graphs of H_m.

``CommutingGraph`` is the reduced graph on the nonzero vectors of V_m (the
non-identity transversal elements ``(v, 0)``), two vertices joined when they
commute.  A vertex is addressed by its bit code ``1 <= code < 2**m``.
Neighbors of ``v`` are the nonzero elements of the kernel of c -> B(v, c)
other than ``v`` itself, so degree(v) = 2**(m - rank) - 2.

The full commuting graph on all non-central elements is only built
explicitly, and only for small ``m``; it is the lexicographic product of the
reduced graph with a complete graph on the center.
"""

from __future__ import annotations

import functools
import logging
import math
import time
from dataclasses import dataclass, asdict
from typing import Dict, Iterator, List, Literal, Optional, Tuple

import networkx as nx
import numpy as np

from . import engine
from .engine import UNREACHED
from .exceptions import CapacityError, DomainError
from .gf2 import DEFAULT_ENUMERATION_CAP, nullspace_bits, rank_bits, span_bits
from .group import GroupParams, form_b_bits, inverse_bits, multiply_bits, phi_rows_bits

log = logging.getLogger(__name__)

DEFAULT_M_CAP = 20
DEFAULT_MEMORY_BUDGET = 1 << 30
EXPLICIT_M_CAP = 7
LEX_M_CAP = 6
DOT_M_CAP = 6
CSV_M_CAP = 10

Algo = Literal["exact_all_sources", "pruned"]
ALGOS = ("exact_all_sources", "pruned")


def _params(p) -> GroupParams:
    if isinstance(p, GroupParams):
        return p
    return GroupParams(p)


def support_label(code: int) -> str:
    """``x1+x3`` style label for a vertex code."""
    idx = [f"x{i + 1}" for i in range(code.bit_length()) if (code >> i) & 1]
    return "+".join(idx) if idx else "0"


@dataclass
class DistanceMap:
    """BFS distances from ``source``; ``dist`` is indexed by vertex code."""

    source: int
    dist: np.ndarray

    @property
    def m(self) -> int:
        return len(self.dist).bit_length() - 1

    def reached_all(self) -> bool:
        return bool((self.dist[1:] != UNREACHED).all())

    def eccentricity(self) -> float:
        if not self.reached_all():
            return math.inf
        return int(self.dist[1:].max())

    def __getitem__(self, code: int) -> float:
        d = self.dist[code]
        return math.inf if d == UNREACHED else int(d)

    def level(self, d: int) -> np.ndarray:
        """Vertex codes at distance exactly ``d``, ascending."""
        hits = np.flatnonzero(self.dist == d)
        return hits[hits != 0]

    def levels(self) -> Dict[int, np.ndarray]:
        ecc = int(self.dist[1:][self.dist[1:] != UNREACHED].max())
        return {d: self.level(d) for d in range(ecc + 1)}


@dataclass
class DiameterReport:
    m: int
    n_vertices: int
    n_edges: int
    connected: bool
    diameter: float
    radius: float
    witness: Tuple[int, int]
    elapsed: float
    algo: str = "exact_all_sources"
    n_bfs: int = 0

    def as_dict(self) -> dict:
        d = asdict(self)
        d["witness"] = list(self.witness)
        for k in ("diameter", "radius"):
            if d[k] == math.inf:
                d[k] = None
        return d


class CommutingGraph:
    """Implicit reduced commuting graph of H_m.

    Parameters
    ----------
    p : GroupParams or int
        Selects H_m; needs ``4 <= m <= m_cap``.
    memory_budget : int
        Bytes allowed for the cached adjacency arrays.  Above it, neighbor
        lists are recomputed from kernels whenever BFS touches a vertex.
    m_cap : int
        Largest ``m`` accepted.
    """

    def __init__(
        self,
        p,
        memory_budget: int = DEFAULT_MEMORY_BUDGET,
        m_cap: int = DEFAULT_M_CAP,
        enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
    ):
        p = _params(p).require_group()
        if p.m > m_cap:
            raise DomainError(f"m = {p.m} exceeds the configured cap {m_cap}")
        self.params = p
        self.m = p.m
        self.n_codes = 1 << p.m
        self.memory_budget = memory_budget
        self.enumeration_cap = enumeration_cap
        self._csr: Optional[Tuple[np.ndarray, np.ndarray]] = None

    def __repr__(self) -> str:
        return f"CommutingGraph(m={self.m})"

    @property
    def n_vertices(self) -> int:
        return self.n_codes - 1

    @property
    def active(self) -> np.ndarray:
        mask = np.ones(self.n_codes, dtype=bool)
        mask[0] = False
        return mask

    def _check_vertex(self, v: int) -> int:
        v = int(v)
        if not 1 <= v < self.n_codes:
            raise DomainError(f"vertex code must lie in [1, {self.n_codes - 1}], got {v}")
        return v

    def kernel_basis(self, v: int) -> List[int]:
        return nullspace_bits(phi_rows_bits(self.m, v), self.m)

    def neighbors(self, v: int) -> List[int]:
        """Commuting partners of ``v`` in Gray-code order over its kernel basis."""
        v = self._check_vertex(v)
        if self._csr is not None:
            indptr, indices = self._csr
            return indices[indptr[v] : indptr[v + 1]].tolist()
        return self._kernel_neighbors(v)

    def _kernel_neighbors(self, v: int) -> List[int]:
        span = span_bits(self.kernel_basis(v), self.enumeration_cap)
        return [u for u in span if u != 0 and u != v]

    @functools.cached_property
    def degrees(self) -> np.ndarray:
        """Degree by vertex code (entry 0 is 0)."""
        m = self.m
        deg = np.zeros(self.n_codes, dtype=np.int64)
        for v in range(1, self.n_codes):
            deg[v] = (1 << (m - rank_bits(phi_rows_bits(m, v), m))) - 2
        return deg

    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    def min_degree(self) -> int:
        return int(self.degrees[1:].min())

    def adjacency_bytes(self) -> int:
        return 8 * (int(self.degrees.sum()) + self.n_codes + 1)

    def csr(self) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        """Cached ``(indptr, indices)``, built on first use; None if over budget."""
        if self._csr is None:
            if self.adjacency_bytes() > self.memory_budget:
                log.info("m=%d adjacency exceeds memory budget; staying implicit", self.m)
                return None
            t0 = time.perf_counter()
            adj: List[List[int]] = [[]]
            adj.extend(self._kernel_neighbors(v) for v in range(1, self.n_codes))
            self._csr = engine.csr_from_lists(adj)
            log.debug("m=%d adjacency built in %.2fs", self.m, time.perf_counter() - t0)
        return self._csr

    def bfs(self, source: int) -> DistanceMap:
        source = self._check_vertex(source)
        return DistanceMap(source, self._bfs_raw(source))

    def _bfs_raw(self, source: int) -> np.ndarray:
        csr = self.csr()
        if csr is None:
            return engine.bfs_lazy(self.n_codes, self._kernel_neighbors, source)
        return engine.bfs_csr(*csr, source)

    def eccentricity(self, v: int) -> float:
        return self.bfs(v).eccentricity()

    def connected(self) -> bool:
        return self.bfs(1).reached_all()

    def diameter(self, algo: Algo = "pruned", threads: int = 1) -> DiameterReport:
        if algo not in ALGOS:
            raise DomainError(f"unknown algorithm {algo!r}; choose from {ALGOS}")
        t0 = time.perf_counter()
        csr = self.csr()
        if algo == "exact_all_sources":
            if csr is None:
                raise CapacityError("all-sources diameter needs the cached adjacency")
            res = engine.exact_all_sources(*csr, self.active, threads, bfs=self._bfs_raw)
        else:
            res = engine.bounding_eccentricities(self.n_codes, self.active, self._bfs_raw, start=1)
        return DiameterReport(
            m=self.m,
            n_vertices=self.n_vertices,
            n_edges=self.edge_count(),
            connected=res.connected,
            diameter=res.diameter,
            radius=res.radius,
            witness=res.witness,
            elapsed=time.perf_counter() - t0,
            algo=algo,
            n_bfs=res.n_bfs,
        )

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Each edge once as ``(u, v)`` with ``u < v``, ascending."""
        for u in range(1, self.n_codes):
            for v in sorted(self.neighbors(u)):
                if u < v:
                    yield u, v

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(1, self.n_codes))
        g.add_edges_from(self.edges())
        return g

    def to_dot(self) -> str:
        if self.m > DOT_M_CAP:
            raise CapacityError(f"DOT export is limited to m <= {DOT_M_CAP}")
        lines = [f"graph Gamma{self.m}_star {{"]
        for v in range(1, self.n_codes):
            lines.append(f'  {v} [label="{support_label(v)}"];')
        for u, v in self.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def adjacency_rows(self) -> Iterator[Tuple[int, int]]:
        if self.m > CSV_M_CAP:
            raise CapacityError(f"adjacency CSV is limited to m <= {CSV_M_CAP}")
        return self.edges()


@functools.lru_cache(maxsize=8)
def get_graph(m: int) -> CommutingGraph:
    """Shared graph instance per ``m`` so adjacency is built once."""
    return CommutingGraph(m)


def _graph(p) -> CommutingGraph:
    return get_graph(_params(p).require_group().m)


def neighbors(p, v: int) -> List[int]:
    return _graph(p).neighbors(v)


def bfs(p, source: int) -> DistanceMap:
    return _graph(p).bfs(source)


def eccentricity(p, v: int) -> float:
    return _graph(p).eccentricity(v)


def diameter(p, algo: Algo = "pruned", threads: int = 1) -> DiameterReport:
    return _graph(p).diameter(algo, threads)


def connected(p) -> bool:
    return _graph(p).connected()


def edge_count(p) -> int:
    return _graph(p).edge_count()


def brute_force_neighbors(m: int, v: int) -> List[int]:
    """Commuting partners of ``v`` by testing every candidate vertex."""
    return [u for u in range(1, 1 << m) if u != v and form_b_bits(m, u, v) == 0]


# ---------------------------------------------------------------------------
# explicit commuting graph of the whole group
# ---------------------------------------------------------------------------

def group_arrays(p: GroupParams) -> Tuple[np.ndarray, np.ndarray]:
    """All elements of H_m as parallel (V-part, W-part) uint64 arrays, v-major."""
    vs = np.arange(1 << p.m, dtype=np.uint64)
    ws = np.arange(1 << p.w_dim, dtype=np.uint64)
    V, W = np.meshgrid(vs, ws, indexing="ij")
    return V.ravel(), W.ravel()


def commutator_table_row(m: int, gv, gw, V: np.ndarray, W: np.ndarray):
    """g^-1 h^-1 g h for one g against arrays of h, via the group law only."""
    gv = np.uint64(gv)
    gw = np.uint64(gw)
    giv, giw = inverse_bits(m, gv, gw)
    hiv, hiw = inverse_bits(m, V, W)
    av, aw = multiply_bits(m, np.full_like(V, giv), np.full_like(W, giw), hiv, hiw)
    bv, bw = multiply_bits(m, av, aw, np.full_like(V, gv), np.full_like(W, gw))
    return multiply_bits(m, bv, bw, V, W)


def full_commuting_graph(p) -> nx.Graph:
    """Commuting graph on the non-central elements, nodes ``(v, w)``.

    Centrality and adjacency are both decided by multiplying out
    g^-1 h^-1 g h, independently of the form B.
    """
    p = _params(p).require_group()
    if p.m > EXPLICIT_M_CAP:
        raise CapacityError(f"explicit commuting graph is limited to m <= {EXPLICIT_M_CAP}")
    V, W = group_arrays(p)
    n = len(V)
    g = nx.Graph()
    rows = []
    central = np.ones(n, dtype=bool)
    for i in range(n):
        cv, cw = commutator_table_row(p.m, V[i], W[i], V, W)
        comm = (cv == 0) & (cw == 0)
        central[i] = comm.all()
        rows.append(comm)
    nodes = np.flatnonzero(~central)
    g.add_nodes_from((int(V[i]), int(W[i])) for i in nodes)
    for i in nodes:
        js = np.flatnonzero(rows[i] & ~central)
        js = js[js > i]
        a = (int(V[i]), int(W[i]))
        g.add_edges_from((a, (int(V[j]), int(W[j]))) for j in js)
    return g


def explicit_diameter(g: nx.Graph) -> float:
    """Diameter of an explicit graph via scipy's C shortest paths."""
    from scipy.sparse.csgraph import shortest_path

    a = nx.to_scipy_sparse_array(g, nodelist=sorted(g.nodes), format="csr")
    d = shortest_path(a, unweighted=True, directed=False)
    return float(d.max())


def lex_product_check(p) -> bool:
    """Whether Gamma(H_m) equals Gamma*_m[K_{2^(m-2)}] under (v, w) -> (v, w)."""
    return lex_product_details(p)["passed"]


def lex_product_details(p) -> dict:
    p = _params(p).require_group()
    if p.m > LEX_M_CAP:
        raise CapacityError(f"lexicographic product check is limited to m <= {LEX_M_CAP}")
    full = full_commuting_graph(p)
    star = CommutingGraph(p)
    lex = nx.lexicographic_product(star.to_networkx(), nx.complete_graph(1 << p.w_dim))
    same_nodes = set(full.nodes) == set(lex.nodes)
    full_edges = {frozenset(e) for e in full.edges}
    lex_edges = {frozenset(e) for e in lex.edges}
    missing = lex_edges - full_edges
    extra = full_edges - lex_edges
    d_full = explicit_diameter(full)
    d_star = star.diameter("exact_all_sources").diameter
    out = {
        "passed": same_nodes and not missing and not extra and d_full == d_star,
        "n_vertices": full.number_of_nodes(),
        "n_edges": full.number_of_edges(),
        "diameter_full": d_full,
        "diameter_star": d_star,
        "missing_edges": len(missing),
        "extra_edges": len(extra),
    }
    if missing or extra:
        e = sorted(map(sorted, missing or extra))[0]
        out["counterexample"] = [list(x) for x in e]
    return out
