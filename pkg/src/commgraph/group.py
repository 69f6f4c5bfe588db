"""The special 2-groups H_m as central extensions of GF(2)^m by GF(2)^(m-2).

Elements are pairs ``(v, w)`` with ``v`` in V_m (basis x_1..x_m) and ``w`` in
W_m (basis y_1..y_{m-2}).  The product is

    (a, b) * (c, d) = (a + c, f(a, c) + b + d)

where ``f`` is the bilinear cocycle with f(x_i, x_j) = y_{j-i-1} for
j >= i + 2 and zero otherwise.  Two elements commute iff the alternating form
B(u, v) = f(u, v) + f(v, u) vanishes on their V-parts.

Bit layout follows :mod:`commgraph.gf2`: x_i and y_i live at bit ``i - 1``.
Component ``y_k`` of f(a, c) counts pairs (i, j) with j - i = k + 1, which is
``parity(a & (c >> (k + 1)))``; the ``*_bits`` helpers below use that form
and accept numpy uint64 arrays as well as ints.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError, DomainError
from .gf2 import Gf2Matrix, Gf2Vec, MAX_DIM, parity

MIN_M = 3
MIN_GROUP_M = 4


@dataclass(frozen=True)
class GroupParams:
    """Selects the group H_m.  ``m = 3`` only supports cocycle evaluation."""

    m: int

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or not MIN_M <= self.m <= MAX_DIM:
            raise DomainError(f"m must be an integer in [{MIN_M}, {MAX_DIM}], got {self.m!r}")

    @property
    def w_dim(self) -> int:
        return self.m - 2

    @property
    def v_mask(self) -> int:
        return (1 << self.m) - 1

    @property
    def order(self) -> int:
        return 1 << (2 * self.m - 2)

    def require_group(self) -> "GroupParams":
        if self.m < MIN_GROUP_M:
            raise DomainError(f"group and graph operations need m >= {MIN_GROUP_M}, got {self.m}")
        return self

    def identity(self) -> "GroupElement":
        return GroupElement(Gf2Vec.zero(self.m), Gf2Vec.zero(self.w_dim))

    def x(self, i: int) -> Gf2Vec:
        return Gf2Vec.basis(i, self.m)

    def y(self, i: int) -> Gf2Vec:
        """Basis vector y_i of W_m; y_i with i <= 0 is the zero vector."""
        if i <= 0:
            return Gf2Vec.zero(self.w_dim)
        return Gf2Vec.basis(i, self.w_dim)

    def element(self, v: int, w: int = 0) -> "GroupElement":
        return GroupElement(Gf2Vec(v, self.m), Gf2Vec(w, self.w_dim))


@dataclass(frozen=True)
class GroupElement:
    v: Gf2Vec
    w: Gf2Vec

    def __post_init__(self):
        if self.w.length != self.v.length - 2:
            raise DimensionError(
                f"W-part length {self.w.length} must be V-part length {self.v.length} minus 2"
            )

    @property
    def m(self) -> int:
        return self.v.length

    def as_bits(self) -> tuple[int, int]:
        return self.v.bits, self.w.bits


# ---------------------------------------------------------------------------
# bit-level kernels
# ---------------------------------------------------------------------------

def _parity_any(x):
    if isinstance(x, np.ndarray):
        return np.bitwise_count(x) & np.uint64(1)
    return parity(int(x))


def f_bits(m: int, a, c):
    """Cocycle f(a, c) on bit-encoded V-vectors (ints or uint64 arrays)."""
    if isinstance(a, np.ndarray) or isinstance(c, np.ndarray):
        a = np.asarray(a, dtype=np.uint64)
        c = np.asarray(c, dtype=np.uint64)
        out = np.zeros(np.broadcast(a, c).shape, dtype=np.uint64)
        for k in range(m - 2):
            out |= _parity_any(a & (c >> np.uint64(k + 2))) << np.uint64(k)
        return out
    out = 0
    for k in range(m - 2):
        out |= parity(a & (c >> (k + 2))) << k
    return out


def form_b_bits(m: int, u, v):
    """Alternating form B(u, v) = f(u, v) + f(v, u), fast path."""
    if isinstance(u, np.ndarray) or isinstance(v, np.ndarray):
        u = np.asarray(u, dtype=np.uint64)
        v = np.asarray(v, dtype=np.uint64)
        out = np.zeros(np.broadcast(u, v).shape, dtype=np.uint64)
        for k in range(m - 2):
            s = np.uint64(k + 2)
            out |= _parity_any((u & (v >> s)) ^ (v & (u >> s))) << np.uint64(k)
        return out
    out = 0
    for k in range(m - 2):
        out |= parity((u & (v >> (k + 2))) ^ (v & (u >> (k + 2)))) << k
    return out


def form_b_oracle_bits(m: int, u: int, v: int) -> int:
    """B(u, v) by summing y_{|i-j|-1} over support pairs; slow reference."""
    out = 0
    for i in range(1, m + 1):
        if not (u >> (i - 1)) & 1:
            continue
        for j in range(1, m + 1):
            if (v >> (j - 1)) & 1 and abs(i - j) >= 2:
                out ^= 1 << (abs(i - j) - 2)
    return out


def phi_rows_bits(m: int, v: int) -> list[int]:
    """Rows of the matrix of c -> B(v, c); row k tests component y_{k+1}."""
    mask = (1 << m) - 1
    return [((v << (k + 2)) ^ (v >> (k + 2))) & mask for k in range(m - 2)]


def multiply_bits(m: int, a, b, c, d):
    """Product (a, b) * (c, d) on bit encodings; returns (V-part, W-part)."""
    return a ^ c, f_bits(m, a, c) ^ b ^ d


def inverse_bits(m: int, a, b):
    return a, b ^ f_bits(m, a, a)


# ---------------------------------------------------------------------------
# typed operations
# ---------------------------------------------------------------------------

def _check_v(p: GroupParams, *vs: Gf2Vec) -> None:
    for v in vs:
        if v.length != p.m:
            raise DomainError(f"expected a V-vector of length {p.m}, got length {v.length}")


def _check_g(p: GroupParams, *gs: GroupElement) -> None:
    for g in gs:
        if g.m != p.m:
            raise DomainError(f"element belongs to H_{g.m}, not H_{p.m}")


def f_basis(p: GroupParams, i: int, j: int) -> Gf2Vec:
    """f(x_i, x_j) read straight off the defining table."""
    if not (1 <= i <= p.m and 1 <= j <= p.m):
        raise DomainError(f"basis indices must lie in [1, {p.m}], got ({i}, {j})")
    if i + 2 <= j:
        return p.y(j - i - 1)
    return Gf2Vec.zero(p.w_dim)


def f_eval(p: GroupParams, a: Gf2Vec, c: Gf2Vec) -> Gf2Vec:
    _check_v(p, a, c)
    return Gf2Vec(f_bits(p.m, a.bits, c.bits), p.w_dim)


def multiply(p: GroupParams, g: GroupElement, h: GroupElement) -> GroupElement:
    p.require_group()
    _check_g(p, g, h)
    v, w = multiply_bits(p.m, g.v.bits, g.w.bits, h.v.bits, h.w.bits)
    return p.element(v, w)


def inverse(p: GroupParams, g: GroupElement) -> GroupElement:
    p.require_group()
    _check_g(p, g)
    return p.element(*inverse_bits(p.m, g.v.bits, g.w.bits))


def square(p: GroupParams, g: GroupElement) -> GroupElement:
    p.require_group()
    _check_g(p, g)
    return p.element(0, f_bits(p.m, g.v.bits, g.v.bits))


def form_B(p: GroupParams, u: Gf2Vec, v: Gf2Vec) -> Gf2Vec:
    p.require_group()
    _check_v(p, u, v)
    return Gf2Vec(form_b_bits(p.m, u.bits, v.bits), p.w_dim)


def commutator(p: GroupParams, g: GroupElement, h: GroupElement) -> GroupElement:
    """[g, h] = g^-1 h^-1 g h, which is central and equals (0, B(g.v, h.v))."""
    p.require_group()
    _check_g(p, g, h)
    return p.element(0, form_b_bits(p.m, g.v.bits, h.v.bits))


def commutes(p: GroupParams, u: Gf2Vec, v: Gf2Vec) -> bool:
    p.require_group()
    _check_v(p, u, v)
    return form_b_bits(p.m, u.bits, v.bits) == 0


def phi_matrix(p: GroupParams, v: Gf2Vec) -> Gf2Matrix:
    """Matrix of c -> B(v, c), shape (m-2) x m; its kernel is C(v) mod center."""
    p.require_group()
    _check_v(p, v)
    return Gf2Matrix.from_bits(phi_rows_bits(p.m, v.bits), p.m)


def cocycle_check(p: GroupParams, a: Gf2Vec, c: Gf2Vec, e: Gf2Vec) -> bool:
    """f(a,c) + f(a+c,e) == f(c,e) + f(a,c+e)."""
    _check_v(p, a, c, e)
    m, a, c, e = p.m, a.bits, c.bits, e.bits
    return f_bits(m, a, c) ^ f_bits(m, a ^ c, e) == f_bits(m, c, e) ^ f_bits(m, a, c ^ e)


def embed_lower(p: GroupParams, g: GroupElement) -> GroupElement:
    """Coordinate embedding H_{m-1} -> H_m for ``p`` describing H_m.

    Pads the V-part with a zero x_m coefficient and the W-part with a zero
    y_{m-2} coefficient; with the low-bit-first layout the bits are unchanged.
    """
    if g.m != p.m - 1:
        raise DomainError(f"expected an element of H_{p.m - 1}, got H_{g.m}")
    return p.element(g.v.bits, g.w.bits)


__all__ = [
    "GroupParams",
    "GroupElement",
    "f_basis",
    "f_eval",
    "multiply",
    "inverse",
    "square",
    "form_B",
    "commutator",
    "commutes",
    "phi_matrix",
    "cocycle_check",
    "embed_lower",
    "f_bits",
    "form_b_bits",
    "form_b_oracle_bits",
    "phi_rows_bits",
    "multiply_bits",
    "inverse_bits",
]
