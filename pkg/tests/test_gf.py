import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cellblocks.gf import (
    GF, gfp_factor, gfp_is_irreducible, gfp_mul, gfp_divmod, spin,
)


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (5, 2)])
def test_field_axioms_sampled(p, r):
    F = GF(p, r)
    rng = random.Random(7)
    els = [rng.randrange(F.order) for _ in range(12)]
    for a in els:
        for b in els:
            assert F.add_codes(a, b) == F.add_codes(b, a)
            assert F.mul_codes(a, b) == F.mul_codes(b, a)
            for c in els[:4]:
                assert F.mul_codes(a, F.add_codes(b, c)) == F.add_codes(
                    F.mul_codes(a, b), F.mul_codes(a, c))
        assert F.add_codes(a, F.neg_code(a)) == 0
        if a:
            assert F.mul_codes(a, F.inv_code(a)) == 1


def test_gf4_structure():
    F = GF(2, 2)
    # the nonzero elements form a cyclic group of order 3
    a = 2  # the generator x
    assert F.mul_codes(a, a) != a
    assert F.pow_code(a, 3) == 1


def test_matmul_matches_scalar_ops():
    for (p, r) in [(3, 1), (2, 2), (5, 1), (3, 2)]:
        F = GF(p, r)
        rng = np.random.default_rng(0)
        A = rng.integers(0, F.order, (6, 5))
        B = rng.integers(0, F.order, (5, 4))
        C = F.mat_mul(A, B)
        for i in range(6):
            for j in range(4):
                acc = 0
                for k in range(5):
                    acc = F.add_codes(acc, F.mul_codes(int(A[i, k]), int(B[k, j])))
                assert acc == C[i, j]


def test_rref_rank_nullspace():
    F = GF(5)
    A = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert F.rank(A) == 2
    N = F.nullspace(A)
    assert N.shape[0] == 1
    assert not F.mat_mul(A, N.T).any()


def test_mat_inv_and_solve():
    F = GF(7)
    rng = np.random.default_rng(3)
    while True:
        A = rng.integers(0, 7, (5, 5))
        if F.rank(A) == 5:
            break
    Ainv = F.mat_inv(A)
    assert (F.mat_mul(A, Ainv) == F.identity(5)).all()
    b = rng.integers(0, 7, 5)
    x = F.solve(A, b)
    assert (F.mat_mul(A, x.reshape(-1, 1)).ravel() == b % 7).all()


def test_charpoly_small():
    F = GF(5)
    A = np.array([[1, 1], [0, 2]])
    # (x-1)(x-2) = x^2 - 3x + 2
    assert F.charpoly(A) == [2, 2, 1]  # 2 - 3x + x^2, -3 = 2 mod 5
    # companion matrix of x^3 + 2x + 1
    C = np.array([[0, 0, 4], [1, 0, 3], [0, 1, 0]])
    assert F.charpoly(C) == [1, 2, 0, 1]


def test_charpoly_matches_determinant_route():
    # charpoly(A)(a) = det(aI - A); spot check via eigen counting over F_2
    F = GF(2)
    rng = np.random.default_rng(11)
    for _ in range(5):
        A = rng.integers(0, 2, (6, 6))
        cp = F.charpoly(A)
        for a in range(2):
            # evaluate
            acc = 0
            for c in reversed(cp):
                acc = F.add_codes(F.mul_codes(acc, a), c)
            aI_A = F.vsub(np.diag([a] * 6).astype(np.int64), A) % 2
            singular = F.rank(aI_A) < 6
            assert (acc == 0) == singular


def test_minpoly_of_vector_divides_charpoly():
    F = GF(3)
    rng = np.random.default_rng(5)
    A = rng.integers(0, 3, (7, 7))
    v = rng.integers(0, 3, 7)
    mp = F.minpoly_of_vector(A, v)
    cp = F.charpoly(A)
    _, rem = gfp_divmod(F, cp, mp)
    assert rem == []


def test_poly_factor_over_gf():
    F = GF(2)
    rng = random.Random(0)
    # x^2 + x + 1 is irreducible over F_2
    assert gfp_is_irreducible(F, [1, 1, 1])
    assert not gfp_is_irreducible(F, [1, 0, 1])  # (x+1)^2
    f = gfp_mul(F, [1, 1, 1], gfp_mul(F, [1, 1], [1, 1]))
    facs = gfp_factor(F, f, rng)
    assert sorted((tuple(g), m) for g, m in facs) == [((1, 1), 2), ((1, 1, 1), 1)]


def test_poly_factor_gf9():
    F = GF(3, 2)
    rng = random.Random(1)
    # x^2 + 1 = (x - i)(x + i) splits over F_9
    facs = gfp_factor(F, [1, 0, 1], rng)
    assert len(facs) == 2
    assert all(len(g) == 2 and m == 1 for g, m in facs)
    prod = [1]
    for g, m in facs:
        for _ in range(m):
            prod = gfp_mul(F, prod, g)
    assert prod == [1, 0, 1]


@given(st.integers(0, 10 ** 6))
@settings(max_examples=30, deadline=None)
def test_factor_random_poly_roundtrip(seed):
    rng = random.Random(seed)
    F = GF([2, 3, 5][seed % 3], 1)
    deg = rng.randrange(1, 8)
    f = [rng.randrange(F.order) for _ in range(deg)] + [1]
    facs = gfp_factor(F, f, rng)
    prod = [1]
    for g, m in facs:
        assert gfp_is_irreducible(F, g)
        for _ in range(m):
            prod = gfp_mul(F, prod, g)
    assert prod == f


def test_spin_invariant_subspace():
    F = GF(2)
    # block upper triangular: e1 spans an invariant line
    A = np.array([[1, 1], [0, 1]])
    basis = spin(F, [np.array([1, 0])], [A], 2)
    assert basis.shape[0] == 1
    basis2 = spin(F, [np.array([0, 1])], [A], 2)
    assert basis2.shape[0] == 2
