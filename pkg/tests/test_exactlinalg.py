import random
from fractions import Fraction
from itertools import combinations, product
from math import gcd

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ifas.errors import CompositionNonzero, ShapeMismatch
from ifas.exactlinalg import (GF, QQ, ZZ, ExactMatrix, HomologyGroup, Ring, homology_at,
                              kernel_basis, rank, smith_normal_form)

small_ints = st.integers(min_value=-4, max_value=4)


def dense(draw_rows, draw_cols):
    return st.lists(st.lists(small_ints, min_size=draw_cols, max_size=draw_cols),
                    min_size=draw_rows, max_size=draw_rows)


@st.composite
def int_matrices(draw, max_dim=4):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return draw(dense(r, c))


def test_ring_parse_and_arithmetic():
    assert Ring.parse("Z") == ZZ and Ring.parse("Q") == QQ and Ring.parse("F5") == GF(5)
    with pytest.raises(ValueError):
        Ring.parse("F4")
    assert QQ.parse_scalar("3/6") == Fraction(1, 2)
    assert GF(5).inv(2) == 3
    assert GF(3).coerce(-1) == 2
    with pytest.raises(ValueError):
        ZZ.parse_scalar("1/2")


@pytest.mark.parametrize("rows, factors, rk", [
    ([[2, 0], [0, 4]], [2, 4], 2),
    ([[0, 0, 0]] * 3, [], 0),
    ([[1, 0], [0, 1]], [1, 1], 2),
    ([[2, 0], [0, 3]], [1, 6], 2),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12], 3),
])
def test_smith_examples(rows, factors, rk):
    assert smith_normal_form(ExactMatrix.from_dense(ZZ, rows)) == (factors, rk)


def _minor_gcd(rows, k):
    g = 0
    m = sympy.Matrix(rows)
    for rs in combinations(range(m.rows), k):
        for cs in combinations(range(m.cols), k):
            g = gcd(g, int(m.extract(list(rs), list(cs)).det()))
    return g


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_smith_matches_determinantal_divisors(rows):
    factors, rk = smith_normal_form(ExactMatrix.from_dense(ZZ, rows))
    assert rk == sympy.Matrix(rows).rank()
    assert all(factors[i + 1] % factors[i] == 0 for i in range(len(factors) - 1))
    prod_ = 1
    for k in range(1, rk + 1):
        prod_ *= factors[k - 1]
        assert prod_ == _minor_gcd(rows, k)


@settings(max_examples=60, deadline=None)
@given(int_matrices(5))
def test_rank_against_sympy_and_invariant_under_permutation(rows):
    m = ExactMatrix.from_dense(QQ, rows)
    r = rank(m)
    assert r == sympy.Matrix(rows).rank()
    rng = random.Random(len(rows))
    rp = list(range(m.rows))
    cp = list(range(m.cols))
    rng.shuffle(rp)
    rng.shuffle(cp)
    assert rank(m.permute(rp, cp)) == r
    assert rank(ExactMatrix.from_dense(ZZ, rows)) == r


@settings(max_examples=40, deadline=None)
@given(int_matrices(5))
def test_kernel_basis_is_kernel(rows):
    m = ExactMatrix.from_dense(QQ, rows)
    basis = kernel_basis(m)
    assert len(basis) == m.cols - rank(m)
    for v in basis:
        assert not any(m.apply(v).values())


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(QQ, 2)) == []
    assert len(kernel_basis(ExactMatrix.zero(QQ, 1, 3))) == 3
    m = ExactMatrix.from_dense(GF(2), [[1, 1]])
    brute = sum(1 for v in product(range(2), repeat=2) if (v[0] + v[1]) % 2 == 0)
    assert 2 ** len(kernel_basis(m)) == brute == 2


def test_rank_mod_p_differs_from_rational():
    rows = [[2, 0], [0, 2]]
    assert rank(ExactMatrix.from_dense(QQ, rows)) == 2
    assert rank(ExactMatrix.from_dense(GF(2), rows)) == 0


def test_matrix_algebra():
    a = ExactMatrix.from_dense(QQ, [[1, 2], [3, 4]])
    b = ExactMatrix.from_dense(QQ, [[0, 1], [1, 0]])
    assert (a @ b).to_dense() == [[2, 1], [4, 3]]
    assert (a - a).is_zero()
    assert a.transpose().transpose() == a
    assert a.scale(Fraction(1, 2))[1, 1] == 2
    with pytest.raises(ShapeMismatch):
        a @ ExactMatrix.zero(QQ, 3, 1)


def test_homology_examples():
    zero = ExactMatrix.zero(ZZ, 1, 1)
    assert homology_at(zero, zero) == HomologyGroup(ZZ, 1)
    two = ExactMatrix.from_dense(ZZ, [[2]])
    h = homology_at(two, zero)
    assert (h.free_rank, h.torsion) == (0, (2,))
    assert h.render() == "Z/2"
    assert HomologyGroup(QQ, 3).render() == "Q^3"
    with pytest.raises(ShapeMismatch):
        homology_at(ExactMatrix.zero(ZZ, 2, 1), zero)
    one = ExactMatrix.identity(ZZ, 1)
    with pytest.raises(CompositionNonzero):
        homology_at(one, one)


def test_random_pair_matches_row_reduction_oracle():
    rng = random.Random(7)
    for _ in range(20):
        # d_out . d_in = 0 by construction: d_in's columns lie in ker d_out
        k = rng.randint(1, 3)
        top = [[rng.randint(-2, 2) for _ in range(5)] for _ in range(k)]
        d_out = sympy.Matrix(top)
        ker = d_out.nullspace()
        cols = [sum((rng.randint(-2, 2) * v for v in ker), sympy.zeros(5, 1)) for _ in range(5)]
        d_in = sympy.Matrix.hstack(*cols)
        h = homology_at(ExactMatrix.from_dense(QQ, d_in.tolist()),
                        ExactMatrix.from_dense(QQ, d_out.tolist()))
        assert h.free_rank == 5 - d_out.rank() - d_in.rank()
