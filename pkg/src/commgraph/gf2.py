"""Bit-packed linear algebra over GF(2).

A vector of length ``n`` is stored in one Python int: the coefficient of the
i-th basis vector (1-based) sits at bit ``i - 1``.  The ``*_bits`` functions
work directly on such ints and are what the hot paths use; :class:`Gf2Vec`
and :class:`Gf2Matrix` wrap them with length checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .exceptions import CapacityError, DimensionError

MAX_DIM = 62
DEFAULT_ENUMERATION_CAP = 1 << 20


def parity(x: int) -> int:
    return x.bit_count() & 1


def rref_bits(rows: Sequence[int], ncols: int) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form of ``rows``.

    Returns ``(reduced_rows, pivot_cols)`` where ``reduced_rows[i]`` has its
    pivot at column ``pivot_cols[i]``; zero rows are dropped.  Columns are
    scanned from low bit to high bit.
    """
    work = [r for r in rows if r]
    pivots: List[int] = []
    out: List[int] = []
    for col in range(ncols):
        bit = 1 << col
        idx = next((i for i, r in enumerate(work) if r & bit), None)
        if idx is None:
            continue
        prow = work.pop(idx)
        out = [r ^ prow if r & bit else r for r in out]
        work = [r ^ prow if r & bit else r for r in work]
        work = [r for r in work if r]
        out.append(prow)
        pivots.append(col)
        if not work:
            break
    return out, pivots


def rank_bits(rows: Sequence[int], ncols: int) -> int:
    """Row rank over GF(2) of int-encoded rows (input is not modified)."""
    basis: List[int] = []
    for r in rows:
        # keep basis sorted by leading bit descending so min() reduces fully
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return len(basis)


def nullspace_bits(rows: Sequence[int], ncols: int) -> List[int]:
    """Basis of ``{x : r . x = 0 for every row r}``.

    One basis vector per free column, in ascending free-column order.
    """
    reduced, pivots = rref_bits(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for r, col in zip(reduced, pivots):
            if (r >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def span_bits(basis: Sequence[int], cap: int = DEFAULT_ENUMERATION_CAP) -> List[int]:
    """All subset sums of ``basis`` in binary-reflected Gray-code order.

    Starts at 0; consecutive entries differ by exactly one basis vector.
    """
    k = len(basis)
    if (1 << k) > cap:
        raise CapacityError(f"span of {k} vectors has 2**{k} elements, above cap {cap}")
    out = [0] * (1 << k)
    cur = 0
    for i in range(1, 1 << k):
        # index of the bit that flips between gray(i-1) and gray(i)
        cur ^= basis[(i & -i).bit_length() - 1]
        out[i] = cur
    return out


@dataclass(frozen=True)
class Gf2Vec:
    """Vector over GF(2) of dimension ``length`` packed into ``bits``."""

    bits: int
    length: int

    def __post_init__(self):
        if not 1 <= self.length <= MAX_DIM:
            raise DimensionError(f"length must be in [1, {MAX_DIM}], got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise DimensionError(f"bits {self.bits:#x} do not fit in length {self.length}")

    @classmethod
    def zero(cls, length: int) -> "Gf2Vec":
        return cls(0, length)

    @classmethod
    def basis(cls, i: int, length: int) -> "Gf2Vec":
        """The i-th standard basis vector, 1-based."""
        if not 1 <= i <= length:
            raise DimensionError(f"basis index {i} outside [1, {length}]")
        return cls(1 << (i - 1), length)

    @classmethod
    def from_support(cls, support: Iterable[int], length: int) -> "Gf2Vec":
        bits = 0
        for i in support:
            if not 1 <= i <= length:
                raise DimensionError(f"basis index {i} outside [1, {length}]")
            bits ^= 1 << (i - 1)
        return cls(bits, length)

    def support(self) -> List[int]:
        """1-based indices of the nonzero coefficients, ascending."""
        return [i + 1 for i in range(self.length) if (self.bits >> i) & 1]

    def __add__(self, other: "Gf2Vec") -> "Gf2Vec":
        return xor_add(self, other)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        # coefficient of basis vector 1 first
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))


@dataclass(frozen=True)
class Gf2Matrix:
    """Row-major matrix over GF(2); every row is a :class:`Gf2Vec` of ``ncols``."""

    rows: Tuple[Gf2Vec, ...]
    ncols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if r.length != self.ncols:
                raise DimensionError(f"row length {r.length} != ncols {self.ncols}")

    @classmethod
    def from_bits(cls, rows: Iterable[int], ncols: int) -> "Gf2Matrix":
        return cls(tuple(Gf2Vec(r, ncols) for r in rows), ncols)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls.from_bits((1 << i for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Gf2Matrix":
        return cls.from_bits([0] * nrows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row_bits(self) -> List[int]:
        return [r.bits for r in self.rows]

    def apply(self, x: Gf2Vec) -> Gf2Vec:
        """Matrix-vector product; result has one coordinate per row."""
        if x.length != self.ncols:
            raise DimensionError(f"vector length {x.length} != ncols {self.ncols}")
        out = 0
        for i, r in enumerate(self.rows):
            out |= parity(r.bits & x.bits) << i
        return Gf2Vec(out, self.nrows)


def _check_same_length(u: Gf2Vec, v: Gf2Vec) -> None:
    if u.length != v.length:
        raise DimensionError(f"length mismatch: {u.length} vs {v.length}")


def xor_add(u: Gf2Vec, v: Gf2Vec) -> Gf2Vec:
    _check_same_length(u, v)
    return Gf2Vec(u.bits ^ v.bits, u.length)


def parity_and(u: Gf2Vec, v: Gf2Vec) -> int:
    """Inner product over GF(2)."""
    _check_same_length(u, v)
    return parity(u.bits & v.bits)


def rank(M: Gf2Matrix) -> int:
    return rank_bits(M.row_bits(), M.ncols)


def nullspace(M: Gf2Matrix) -> List[Gf2Vec]:
    return [Gf2Vec(b, M.ncols) for b in nullspace_bits(M.row_bits(), M.ncols)]


def span_enumerate(
    basis: Sequence[Gf2Vec], length: int | None = None, cap: int = DEFAULT_ENUMERATION_CAP
) -> List[Gf2Vec]:
    """Every element of the span of an independent ``basis``, zero first.

    ``length`` is only needed when ``basis`` is empty.
    """
    if not basis:
        if length is None:
            raise DimensionError("length is required for an empty basis")
        return [Gf2Vec.zero(length)]
    n = basis[0].length
    for b in basis:
        if b.length != n:
            raise DimensionError("basis vectors differ in length")
    return [Gf2Vec(x, n) for x in span_bits([b.bits for b in basis], cap)]


__all__ = [
    "Gf2Vec",
    "Gf2Matrix",
    "xor_add",
    "parity_and",
    "rank",
    "nullspace",
    "span_enumerate",
    "rank_bits",
    "rref_bits",
    "nullspace_bits",
    "span_bits",
    "parity",
]
