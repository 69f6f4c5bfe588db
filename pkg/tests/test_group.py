import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commgraph.exceptions import DomainError
from commgraph.gf2 import Gf2Vec, nullspace, rank, span_enumerate
from commgraph.group import (
    GroupElement,
    GroupParams,
    cocycle_check,
    commutator,
    commutes,
    embed_lower,
    f_basis,
    f_bits,
    f_eval,
    form_B,
    form_b_bits,
    form_b_oracle_bits,
    inverse,
    multiply,
    phi_matrix,
    square,
)

P5 = GroupParams(5)


def x(i, m=5):
    return Gf2Vec.basis(i, m)


def y(i, m=5):
    return Gf2Vec.basis(i, m - 2)


def el(v, w=None, m=5):
    return GroupElement(v, w if w is not None else Gf2Vec.zero(m - 2))


def f_oracle(p, a, c):
    # double loop over supports using the basis table
    out = Gf2Vec.zero(p.w_dim)
    for i in a.support():
        for j in c.support():
            out = out + f_basis(p, i, j)
    return out


def cyclic_inverse(p, g):
    # walk g, g^2, ... until the power times g is the identity
    cur = p.identity()
    for _ in range(8):
        if multiply(p, g, cur) == p.identity():
            return cur
        cur = multiply(p, cur, g)
    raise AssertionError("no inverse found in <g>")


def elements(m):
    return st.tuples(st.integers(0, 2**m - 1), st.integers(0, 2 ** (m - 2) - 1)).map(
        lambda t: GroupParams(m).element(*t)
    )


class TestParams:
    def test_range(self):
        with pytest.raises(DomainError):
            GroupParams(2)
        with pytest.raises(DomainError):
            GroupParams(63)

    def test_m3_only_for_cocycle(self):
        p = GroupParams(3)
        assert f_basis(p, 1, 3) == Gf2Vec(1, 1)
        assert f_eval(p, x(1, 3), x(3, 3)) == Gf2Vec(1, 1)
        with pytest.raises(DomainError):
            multiply(p, p.identity(), p.identity())
        with pytest.raises(DomainError):
            phi_matrix(p, x(1, 3))

    def test_y_nonpositive_is_zero(self):
        assert P5.y(0) == Gf2Vec.zero(3)
        assert P5.y(-2) == Gf2Vec.zero(3)


class TestCocycle:
    def test_f_basis_table(self):
        assert f_basis(P5, 1, 3) == y(1)
        assert f_basis(P5, 2, 3) == Gf2Vec.zero(3)
        assert f_basis(P5, 3, 1) == Gf2Vec.zero(3)
        assert f_basis(P5, 2, 2) == Gf2Vec.zero(3)

    def test_f_basis_domain(self):
        with pytest.raises(DomainError):
            f_basis(P5, 0, 3)
        with pytest.raises(DomainError):
            f_basis(P5, 1, 6)

    def test_f_eval_examples(self):
        assert f_eval(P5, x(1) + x(2), x(4)) == y(1) + y(2)
        assert f_eval(P5, Gf2Vec.zero(5), x(4) + x(2)) == Gf2Vec.zero(3)
        assert f_eval(P5, x(3), x(1)) == Gf2Vec.zero(3)

    def test_f_eval_dimension(self):
        with pytest.raises(DomainError):
            f_eval(P5, x(1, 4), x(1))

    @settings(max_examples=300)
    @given(st.integers(3, 16).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, 2**m - 1), st.integers(0, 2**m - 1))))
    def test_f_eval_matches_basis_expansion(self, t):
        m, a, c = t
        p = GroupParams(m)
        assert f_eval(p, Gf2Vec(a, m), Gf2Vec(c, m)) == f_oracle(p, Gf2Vec(a, m), Gf2Vec(c, m))

    def test_cocycle_examples(self):
        z = Gf2Vec.zero(5)
        assert cocycle_check(P5, z, z, z)
        assert cocycle_check(P5, x(1), x(3), x(5))

    @given(*(st.integers(0, 63) for _ in range(3)))
    def test_cocycle_random_m6(self, a, c, e):
        p = GroupParams(6)
        assert cocycle_check(p, Gf2Vec(a, 6), Gf2Vec(c, 6), Gf2Vec(e, 6))


class TestGroupLaw:
    def test_basis_elements_are_involutions(self):
        g = el(x(1))
        assert multiply(P5, g, g) == P5.identity()
        assert inverse(P5, g) == g

    def test_identity(self):
        g = el(x(2) + x(5), y(3))
        assert multiply(P5, g, P5.identity()) == g
        assert multiply(P5, P5.identity(), g) == g
        assert inverse(P5, P5.identity()) == P5.identity()

    def test_multiply_example(self):
        assert multiply(P5, el(x(1)), el(x(3))) == el(x(1) + x(3), y(1))

    def test_inverse_example(self):
        g = el(x(1) + x(3))
        assert inverse(P5, g) == el(x(1) + x(3), y(1))
        assert inverse(P5, g) == cyclic_inverse(P5, g)

    def test_square_examples(self):
        assert square(P5, el(x(2))) == P5.identity()
        assert square(P5, el(x(1) + x(3))) == el(Gf2Vec.zero(5), y(1))
        assert square(P5, P5.identity()) == P5.identity()

    def test_mismatched_groups(self):
        with pytest.raises(DomainError):
            multiply(P5, el(x(1)), el(x(1, 6), m=6))

    @settings(max_examples=300)
    @given(elements(6), elements(6), elements(6))
    def test_associative(self, g, h, k):
        p = GroupParams(6)
        assert multiply(p, multiply(p, g, h), k) == multiply(p, g, multiply(p, h, k))

    @given(elements(7))
    def test_inverse_and_order(self, g):
        p = GroupParams(7)
        assert multiply(p, g, inverse(p, g)) == p.identity()
        sq = square(p, g)
        assert sq.v.bits == 0
        assert multiply(p, sq, sq) == p.identity()

    @given(elements(8))
    def test_inverse_by_cyclic_search(self, g):
        p = GroupParams(8)
        assert inverse(p, g) == cyclic_inverse(p, g)


class TestCommutation:
    def test_form_examples(self):
        assert form_B(P5, x(1), x(3)) == y(1)
        assert form_B(P5, x(1), x(2)) == Gf2Vec.zero(3)
        v = x(1) + x(4) + x(5)
        assert form_B(P5, v, v) == Gf2Vec.zero(3)

    def test_commutator_examples(self):
        assert commutator(P5, el(x(1)), el(x(4))) == el(Gf2Vec.zero(5), y(2))
        g = el(x(2) + x(3), y(1))
        assert commutator(P5, g, g) == P5.identity()
        assert commutator(P5, el(x(1) + x(2)), el(x(4))) == el(Gf2Vec.zero(5), y(1) + y(2))

    def test_commutes_examples(self):
        assert commutes(P5, x(1), x(2))
        assert not commutes(P5, x(1), x(3))
        assert commutes(P5, x(1) + x(3), x(1) + x(3))

    def test_basis_commutator_table(self):
        # [x_i, x_j] = y_{|i-j|-1} when |i-j| >= 2, else trivial
        m = 8
        p = GroupParams(m)
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                c = commutator(p, p.element(1 << (i - 1)), p.element(1 << (j - 1)))
                want = 1 << (abs(i - j) - 2) if abs(i - j) >= 2 else 0
                assert c == p.element(0, want)

    @settings(max_examples=300)
    @given(elements(8), elements(8))
    def test_commutator_matches_group_law(self, g, h):
        p = GroupParams(8)
        gi, hi = inverse(p, g), inverse(p, h)
        slow = multiply(p, multiply(p, multiply(p, gi, hi), g), h)
        assert commutator(p, g, h) == slow

    @settings(max_examples=300)
    @given(st.integers(4, 20).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, 2**m - 1), st.integers(0, 2**m - 1))))
    def test_form_symmetric_alternating_and_oracle(self, t):
        m, u, v = t
        assert form_b_bits(m, u, v) == form_b_bits(m, v, u) == form_b_oracle_bits(m, u, v)
        assert form_b_bits(m, u, u) == 0

    def test_form_numpy_path(self):
        import numpy as np

        u = np.arange(64, dtype=np.uint64)
        v = np.uint64(0b101101)
        out = form_b_bits(6, u, v)
        assert [int(o) for o in out] == [form_b_bits(6, int(a), 0b101101) for a in range(64)]
        fa = f_bits(6, u, u)
        assert [int(o) for o in fa] == [f_bits(6, a, a) for a in range(64)]


class TestPhiMatrix:
    def test_shape_and_zero(self):
        M = phi_matrix(P5, Gf2Vec.zero(5))
        assert (M.nrows, M.ncols) == (3, 5)
        assert rank(M) == 0

    def _kernel(self, p, v):
        return {b.bits for b in span_enumerate(nullspace(phi_matrix(p, v)), length=p.m)}

    def test_kernel_x1(self):
        assert self._kernel(P5, x(1)) == {0, 1, 2, 3}

    def test_kernel_x2_brute_force(self):
        brute = {c for c in range(32) if form_b_oracle_bits(5, 2, c) == 0}
        assert brute == set(range(8))
        assert self._kernel(P5, x(2)) == brute

    @given(st.integers(4, 16).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, 2**m - 1), st.integers(0, 2**m - 1))))
    def test_apply_equals_form(self, t):
        m, v, c = t
        p = GroupParams(m)
        M = phi_matrix(p, Gf2Vec(v, m))
        assert M.apply(Gf2Vec(c, m)) == form_B(p, Gf2Vec(v, m), Gf2Vec(c, m))

    @pytest.mark.parametrize("m", range(4, 11))
    def test_kernel_dim_at_least_two(self, m):
        p = GroupParams(m)
        for v in range(1, 2**m):
            assert m - rank(phi_matrix(p, Gf2Vec(v, m))) >= 2


def test_embedding_is_homomorphism_on_samples():
    small, big = GroupParams(5), GroupParams(6)
    gs = [small.element(v, w) for v in (0, 1, 5, 13, 31) for w in (0, 3, 7)]
    for g in gs:
        for h in gs:
            assert embed_lower(big, multiply(small, g, h)) == multiply(
                big, embed_lower(big, g), embed_lower(big, h)
            )
    with pytest.raises(DomainError):
        embed_lower(big, big.identity())
