"""Machine checks of the structural facts about H_m and its commuting graph.

Every ``verify_*`` function returns a :class:`ClaimResult`.  A failed claim
always carries a concrete ``counterexample`` entry in ``details`` so the
failure can be replayed.  Brute-force claims enumerate the whole group and
are capped at small ``m``.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .exceptions import CapacityError, DomainError
from .gf2 import nullspace_bits, span_bits
from .graph import (
    DEFAULT_M_CAP,
    CommutingGraph,
    commutator_table_row,
    get_graph,
    group_arrays,
    lex_product_details,
)
from .group import GroupParams, multiply_bits, phi_rows_bits

BRUTE_FORCE_M_CAP = 7
EXPLICIT_CENTRALIZER_M_CAP = 10

Element = Tuple[int, int]


@dataclass
class ClaimResult:
    claim_id: str
    m: Optional[int]
    passed: bool
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


def _timed(claim_id: str, m: Optional[int], fn: Callable[[], Tuple[bool, dict]]) -> ClaimResult:
    t0 = time.perf_counter()
    passed, details = fn()
    if not passed and "counterexample" not in details:
        raise AssertionError(f"{claim_id}: failed claim without a counterexample")
    return ClaimResult(claim_id, m, bool(passed), details, time.perf_counter() - t0)


def _params(p, lo: int, hi: int, what: str) -> GroupParams:
    p = p if isinstance(p, GroupParams) else GroupParams(p)
    if not lo <= p.m <= hi:
        err = CapacityError if p.m > hi else DomainError
        raise err(f"{what} needs {lo} <= m <= {hi}, got {p.m}")
    return p


# ---------------------------------------------------------------------------
# brute-force helpers over the whole group
# ---------------------------------------------------------------------------

def _code(m: int, v, w):
    return v | (w << m) if isinstance(v, int) else v | (w << np.uint64(m))


def generated_subgroup(m: int, gens: Iterable[Element]) -> Set[Element]:
    """Closure of ``gens`` under the group law, by breadth-first products."""
    gens = list(gens)
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        nxt = []
        for a, b in frontier:
            for c, d in gens:
                prod = multiply_bits(m, a, b, c, d)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return seen


def _commutator_rows(p: GroupParams):
    """Yield (i, commutator V-array, commutator W-array) for every g_i."""
    V, W = group_arrays(p)
    for i in range(len(V)):
        yield i, *commutator_table_row(p.m, V[i], W[i], V, W)


def brute_force_structure(p: GroupParams) -> dict:
    """Center, commutator set and square set of H_m by exhaustive products."""
    V, W = group_arrays(p)
    central = np.ones(len(V), dtype=bool)
    commutators: Set[Element] = set()
    for i, cv, cw in _commutator_rows(p):
        trivial = (cv == 0) & (cw == 0)
        central[i] = trivial.all()
        codes = np.unique(_code(p.m, cv, cw))
        for c in codes.tolist():
            commutators.add((c & p.v_mask, c >> p.m))
    sv, sw = multiply_bits(p.m, V, W, V, W)
    squares = {(c & p.v_mask, c >> p.m) for c in np.unique(_code(p.m, sv, sw)).tolist()}
    center = {(int(V[i]), int(W[i])) for i in np.flatnonzero(central)}
    return {"center": center, "commutators": commutators, "squares": squares}


# ---------------------------------------------------------------------------
# lemma checks
# ---------------------------------------------------------------------------

def _kernel_span(m: int, v: int) -> Set[int]:
    return set(span_bits(nullspace_bits(phi_rows_bits(m, v), m)))


def verify_centralizers(p, explicit_cap: int = EXPLICIT_CENTRALIZER_M_CAP) -> ClaimResult:
    """C(x_1) mod Z is span{x_1, x_2} and C(x_m) mod Z is span{x_{m-1}, x_m}.

    Always checked through the kernel of the commutator map; for
    ``m <= explicit_cap`` also by multiplying out every commutator in the group.
    """
    p = _params(p, 4, DEFAULT_M_CAP, "verify_centralizers")
    m = p.m

    def run():
        x1, x2, xm1, xm = 1, 2, 1 << (m - 2), 1 << (m - 1)
        cases = {"x1": (x1, {0, x1, x2, x1 ^ x2}), f"x{m}": (xm, {0, xm, xm1, xm ^ xm1})}
        details: Dict[str, object] = {"explicit": m <= explicit_cap}
        for name, (g, expected) in cases.items():
            got = _kernel_span(m, g)
            details[f"kernel_dim_{name}"] = len(got).bit_length() - 1
            if got != expected:
                bad = min(got ^ expected)
                details["counterexample"] = {"vertex": name, "vector": bad, "source": "kernel"}
                return False, details
            if m <= explicit_cap:
                V, W = group_arrays(p)
                cv, cw = commutator_table_row(m, g, 0, V, W)
                cent = (cv == 0) & (cw == 0)
                vparts = set(np.unique(V[cent]).tolist())
                details[f"centralizer_order_{name}"] = int(cent.sum())
                if vparts != expected or int(cent.sum()) != 4 << (m - 2):
                    bad = min(vparts ^ expected) if vparts != expected else next(iter(vparts))
                    details["counterexample"] = {"vertex": name, "vector": bad, "source": "group"}
                    return False, details
        return True, details

    return _timed("lemma_facts_i", m, run)


def verify_center_derived_special(p) -> ClaimResult:
    """Z(H) = [H, H] = Frattini(H) = {(0, w)} of order 2^(m-2), all elementary abelian."""
    p = _params(p, 4, BRUTE_FORCE_M_CAP, "verify_center_derived_special")
    m = p.m

    def run():
        s = brute_force_structure(p)
        expected = {(0, w) for w in range(1 << p.w_dim)}
        center, comms, squares = s["center"], s["commutators"], s["squares"]
        derived = generated_subgroup(m, comms)
        frattini = generated_subgroup(m, comms | squares)
        details = {
            "center_order": len(center),
            "derived_order": len(derived),
            "frattini_order": len(frattini),
            "expected_order": 1 << p.w_dim,
        }
        checks = [
            ("center", center, expected),
            ("derived", derived, expected),
            ("frattini", frattini, expected),
        ]
        for name, got, want in checks:
            if got != want:
                details["counterexample"] = {"subgroup": name, "element": sorted(got ^ want)[0]}
                return False, details
        for z in center:
            if multiply_bits(m, *z, *z) != (0, 0):
                details["counterexample"] = {"center_element_of_order_4": z}
                return False, details
        stray = sorted(sq for sq in squares if sq not in center)
        if stray:
            details["counterexample"] = {"noncentral_square": stray[0]}
            return False, details
        return True, details

    return _timed("lemma_facts_ii", m, run)


def verify_transversal(p) -> ClaimResult:
    """Every coset of Z(H_m) holds exactly one element (v, 0)."""
    p = _params(p, 4, BRUTE_FORCE_M_CAP, "verify_transversal")
    m = p.m

    def run():
        center = sorted(brute_force_structure(p)["center"])
        V, W = group_arrays(p)
        coset_id = np.full(len(V), np.iinfo(np.uint64).max, dtype=np.uint64)
        for zv, zw in center:
            cv, cw = multiply_bits(m, V, W, np.uint64(zv), np.uint64(zw))
            coset_id = np.minimum(coset_id, _code(m, cv, cw))
        ids, sizes = np.unique(coset_id, return_counts=True)
        in_x = W == 0
        reps = np.zeros(len(ids), dtype=np.int64)
        np.add.at(reps, np.searchsorted(ids, coset_id[in_x]), 1)
        details = {
            "n_cosets": len(ids),
            "expected_cosets": 1 << m,
            "coset_size": sorted(set(sizes.tolist())),
        }
        bad = np.flatnonzero(reps != 1)
        if len(ids) != 1 << m or len(bad):
            k = int(bad[0]) if len(bad) else 0
            c = int(ids[k])
            details["counterexample"] = {
                "coset_min_element": (c & p.v_mask, c >> m),
                "transversal_hits": int(reps[k]),
            }
            return False, details
        return True, details

    return _timed("lemma_facts_iii", m, run)


def verify_subgroup_embedding(p) -> ClaimResult:
    """H_{m-1} -> H_m by zero padding is an injective homomorphism onto <x_1..x_{m-1}>."""
    p = _params(p, 5, BRUTE_FORCE_M_CAP, "verify_subgroup_embedding")
    m = p.m
    small = GroupParams(m - 1)

    def run():
        V, W = group_arrays(small)
        # padding leaves the bit encoding unchanged
        image = {(int(v), int(w)) for v, w in zip(V.tolist(), W.tolist())}
        details = {"domain_order": len(V), "image_order": len(image)}
        if len(image) != len(V):
            details["counterexample"] = {"non_injective": True, "element": sorted(image)[0]}
            return False, details
        for i in range(len(V)):
            sv, sw = multiply_bits(m - 1, V[i], W[i], V, W)
            bv, bw = multiply_bits(m, V[i], W[i], V, W)
            bad = np.flatnonzero((sv != bv) | (sw != bw))
            if len(bad):
                j = int(bad[0])
                details["counterexample"] = {
                    "g": (int(V[i]), int(W[i])),
                    "h": (int(V[j]), int(W[j])),
                }
                return False, details
        gens = [(1 << i, 0) for i in range(m - 1)]
        sub = generated_subgroup(m, gens)
        details["generated_order"] = len(sub)
        if sub != image:
            details["counterexample"] = {"element": sorted(sub ^ image)[0]}
            return False, details
        return True, details

    return _timed("lemma_facts_iv", m, run)


# ---------------------------------------------------------------------------
# graph claims
# ---------------------------------------------------------------------------

def _graph(p, lo: int, what: str) -> CommutingGraph:
    p = _params(p, lo, DEFAULT_M_CAP, what)
    return get_graph(p.m)


def verify_support_bound(p) -> ClaimResult:
    """Vertices at distance d from x_1 only involve x_n with n <= 2^(d-1) + 1."""
    g = _graph(p, 4, "verify_support_bound")
    m = g.m

    def run():
        dm = g.bfs(1)
        levels = []
        violation = None
        for d, codes in dm.levels().items():
            if d == 0:
                continue
            top = int(codes.max()).bit_length()
            bound = (1 << (d - 1)) + 1
            levels.append({"d": d, "max_index": top, "bound": bound, "hypothesis": m > 1 << (d - 1)})
            if top > bound and violation is None:
                w = int(codes[np.argmax([int(c).bit_length() for c in codes])])
                violation = {"d": d, "vertex": w, "max_index": top, "bound": bound}
        details = {"levels": levels, "violations": 0 if violation is None else 1}
        if violation is not None:
            details["counterexample"] = violation
            return False, details
        return True, details

    return _timed("support_bound", m, run)


def log_lower_bound(m: int) -> int:
    """1 + ceil(log2(m - 1)), exact in integers."""
    return 1 + (m - 2).bit_length()


def verify_log_lower_bound(p) -> ClaimResult:
    """d(x_1, x_m) >= 1 + ceil(log2(m - 1))."""
    g = _graph(p, 4, "verify_log_lower_bound")
    m = g.m

    def run():
        d = g.bfs(1)[1 << (m - 1)]
        bound = log_lower_bound(m)
        details = {"distance": d, "bound": bound}
        if not d >= bound:
            details["counterexample"] = {"pair": [1, 1 << (m - 1)], "distance": d}
            return False, details
        return True, details

    return _timed("log_lower_bound", m, run)


def verify_connectivity(p) -> ClaimResult:
    """Gamma*_m is connected and every vertex has degree >= 2."""
    g = _graph(p, 4, "verify_connectivity")

    def run():
        dm = g.bfs(1)
        deg = g.degrees
        details = {"min_degree": g.min_degree(), "n_vertices": g.n_vertices}
        if not dm.reached_all():
            u = int(np.flatnonzero(dm.dist[1:] == 0xFFFF)[0]) + 1
            details["counterexample"] = {"unreached_from_x1": u}
            return False, details
        low = np.flatnonzero(deg[1:] < 2)
        if len(low):
            details["counterexample"] = {"vertex": int(low[0]) + 1, "degree": int(deg[low[0] + 1])}
            return False, details
        return True, details

    return _timed("connectivity", g.m, run)


def verify_gamma4_star() -> ClaimResult:
    """Gamma*_4 has 15 vertices, is connected and has diameter 3."""

    def run():
        g = CommutingGraph(4)
        r = g.diameter("exact_all_sources")
        details = {
            "n_vertices": r.n_vertices,
            "n_edges": r.n_edges,
            "connected": r.connected,
            "diameter": r.diameter,
        }
        ok = r.n_vertices == 15 and r.connected and r.diameter == 3
        if not ok:
            details["counterexample"] = {"witness": list(r.witness)}
        return ok, details

    return _timed("gamma4_star", 4, run)


def verify_lex_product(p) -> ClaimResult:
    """Gamma(H_m) is Gamma*_m lex K_{|Z|} under (v, w) -> (v, w), same diameter."""
    p = _params(p, 4, 6, "verify_lex_product")

    def run():
        d = lex_product_details(p)
        passed = d.pop("passed")
        if not passed and "counterexample" not in d:
            d["counterexample"] = {
                "diameter_full": d["diameter_full"],
                "diameter_star": d["diameter_star"],
            }
        return passed, d

    return _timed("lex_product", p.m, run)


def verify_diameter_table(
    m_from: int,
    m_to: int,
    algo: str = "pruned",
    threads: int = 1,
    m_cap: int = DEFAULT_M_CAP,
) -> List[ClaimResult]:
    """diameter(Gamma*_m) == m - 1 and connected, for each m in the range."""
    if not 4 <= m_from <= m_to <= m_cap:
        raise DomainError(f"need 4 <= from <= to <= {m_cap}, got {m_from}..{m_to}")
    out = []
    for m in range(m_from, m_to + 1):

        def run(m=m):
            g = get_graph(m) if m_cap == DEFAULT_M_CAP else CommutingGraph(m, m_cap=m_cap)
            r = g.diameter(algo, threads)
            details = {"expected": m - 1, **r.as_dict()}
            details.pop("elapsed")
            ok = r.connected and r.diameter == m - 1
            if not ok:
                details["counterexample"] = {"witness": list(r.witness)}
            return ok, details

        out.append(_timed("diameter_table", m, run))
    return out


def minimal_m_by_diameter(results: Sequence[ClaimResult]) -> Dict[int, int]:
    """Smallest m observed to reach each diameter among table results."""
    best: Dict[int, int] = {}
    for r in results:
        d = r.details.get("diameter")
        if d is not None and (d not in best or r.m < best[d]):
            best[d] = r.m
    return dict(sorted(best.items()))


CLAIMS = {
    "gamma4": "Gamma*_4 reproduction",
    "centralizers": "centralizers of x_1 and x_m",
    "special": "center = derived = Frattini, elementary abelian",
    "transversal": "X is a transversal to the center",
    "embedding": "H_{m-1} embeds as <x_1..x_{m-1}>",
    "connectivity": "connected, min degree >= 2",
    "support_bound": "support index bound per BFS level",
    "log_bound": "d(x_1, x_m) >= 1 + ceil(log2(m-1))",
    "lex_product": "Gamma_m = Gamma*_m lex complete graph",
    "table": "diameter(Gamma*_m) = m - 1",
}

_PER_M = {
    "centralizers": (verify_centralizers, 4, DEFAULT_M_CAP),
    "special": (verify_center_derived_special, 4, BRUTE_FORCE_M_CAP),
    "transversal": (verify_transversal, 4, BRUTE_FORCE_M_CAP),
    "embedding": (verify_subgroup_embedding, 5, BRUTE_FORCE_M_CAP),
    "connectivity": (verify_connectivity, 4, DEFAULT_M_CAP),
    "support_bound": (verify_support_bound, 4, DEFAULT_M_CAP),
    "log_bound": (verify_log_lower_bound, 4, DEFAULT_M_CAP),
    "lex_product": (verify_lex_product, 4, 6),
}

DEFAULT_BRUTE_MS = (4, 5, 6)
DEFAULT_GRAPH_MS = tuple(range(4, 13))


def claim_range(claim: str) -> Tuple[int, int]:
    if claim == "gamma4":
        return 4, 4
    if claim == "table":
        return 4, DEFAULT_M_CAP
    _, lo, hi = _PER_M[claim]
    return lo, hi


def run_claim(claim: str, ms: Iterable[int], algo: str = "pruned", threads: int = 1) -> List[ClaimResult]:
    """Run one named claim for each ``m`` (out-of-range ``m`` are skipped)."""
    if claim not in CLAIMS:
        raise DomainError(f"unknown claim {claim!r}; choose from {sorted(CLAIMS)}")
    ms = sorted(set(ms))
    if claim == "gamma4":
        return [verify_gamma4_star()]
    lo, hi = claim_range(claim)
    ms = [m for m in ms if lo <= m <= hi]
    if claim == "table":
        return [r for m in ms for r in verify_diameter_table(m, m, algo, threads)]
    fn = _PER_M[claim][0]
    return [fn(m) for m in ms]


def run_suite(
    brute_ms: Sequence[int] = DEFAULT_BRUTE_MS,
    graph_ms: Sequence[int] = DEFAULT_GRAPH_MS,
    algo: str = "pruned",
    threads: int = 1,
) -> List[ClaimResult]:
    """Every claim in its default configuration, in a fixed order."""
    out = [verify_gamma4_star()]
    for claim in ("special", "transversal", "embedding", "lex_product"):
        out += run_claim(claim, brute_ms)
    for claim in ("centralizers", "connectivity", "support_bound", "log_bound"):
        out += run_claim(claim, graph_ms)
    out += run_claim("table", graph_ms, algo, threads)
    return out
