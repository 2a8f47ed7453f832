from fractions import Fraction

import pytest

from cellblocks.coxeter import CoxeterSystem
from cellblocks.exactalg import format_poly
from cellblocks.kl import (a_function, kl_polynomial, mu, two_sided_cells)


def _W(label):
    return CoxeterSystem(label)


# -- polynomial table invariants -------------------------------------------------

@pytest.mark.parametrize("label", ["A1", "A2", "A3", "C2", "G2"])
def test_table_invariants(label):
    W = _W(label)
    for w in W.elements:
        for y in W.elements:
            P = kl_polynomial(W, y, w)
            if y is w:
                assert P.coeffs == {0: Fraction(1)}
            elif not W.bruhat_leq(y, w):
                assert P.coeffs == {}
            else:
                # constant term 1, nonnegative integer coefficients,
                # degree bound (l(w) - l(y) - 1)/2
                assert P.coeffs.get(0) == 1
                for e, c in P.coeffs.items():
                    assert c.denominator == 1 and c >= 0
                if P.degree is not None and w.length > y.length:
                    assert 2 * P.degree <= w.length - y.length - 1


def test_dihedral_polynomials_all_trivial():
    # in rank 2 every KL polynomial for comparable pairs is 1
    for label in ("C2", "G2", "I2(5)"):
        W = _W(label)
        for w in W.elements:
            for y in W.elements:
                if W.bruhat_leq(y, w):
                    assert format_poly(kl_polynomial(W, y, w)) == "1*t^0"


def test_c2_identity_to_longest():
    W = _W("C2")
    assert format_poly(kl_polynomial(W, W.identity, W.longest)) == "1*t^0"


def test_a3_nontrivial_polynomial():
    # P_{s2, s2 s1 s3 s2} = 1 + q, the smallest nontrivial KL polynomial
    W = _W("A3")
    y = W.from_word((1,))
    w = W.from_word((1, 0, 2, 1))
    P = kl_polynomial(W, y, w)
    assert P.coeffs == {0: Fraction(1), 1: Fraction(1)}
    assert mu(W, y, w) == 1


def test_mu_basic():
    W = _W("A2")
    # mu(e, w0) = 0: the gap l(w0) - l(e) = 3 is odd but P = 1 has no q-term
    assert mu(W, W.identity, W.longest) == 0
    # mu(y, w) = 1 whenever l(w) = l(y) + 1 and y <= w
    for w in W.elements:
        for y in W.elements:
            if w.length == y.length + 1 and W.bruhat_leq(y, w):
                assert mu(W, y, w) == 1


def test_mu_symmetric_under_inverse():
    W = _W("A3")
    for w in W.elements:
        for y in W.elements:
            assert mu(W, y, w) == mu(W, W.inverse(y), W.inverse(w))


# -- cells ----------------------------------------------------------------------

CELL_COUNTS = {"A1": 2, "A2": 3, "A3": 5, "A4": 7, "C2": 3, "G2": 3}


@pytest.mark.parametrize("label,count", sorted(CELL_COUNTS.items()))
def test_cell_counts(label, count):
    part = two_sided_cells(_W(label))
    assert len(part.blocks) == count


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "C2", "G2"])
def test_extreme_cells_are_singletons(label):
    W = _W(label)
    part = two_sided_cells(W)
    i_e = part.block_of(W.identity)
    i_w0 = part.block_of(W.longest)
    assert part.blocks[i_e] == frozenset({W.identity.index})
    assert part.blocks[i_w0] == frozenset({W.longest.index})
    # {w0} is the minimum, {e} the maximum of the cell order
    for j in range(len(part.blocks)):
        assert part.leq[i_w0][j]
        assert part.leq[j][i_e]


def test_a2_cell_sizes():
    part = two_sided_cells(_W("A2"))
    assert sorted(len(b) for b in part.blocks) == [1, 1, 4]


def test_cells_partition_group():
    W = _W("A3")
    part = two_sided_cells(W)
    seen = set()
    for b in part.blocks:
        assert not (b & seen)
        seen |= b
    assert seen == set(range(W.order))


def test_cells_closed_under_inverse():
    W = _W("A3")
    part = two_sided_cells(W)
    for b in part.blocks:
        assert {W.inverse(W.elements[i]).index for i in b} == b


# -- a-function -------------------------------------------------------------------

def test_a_values_a2():
    W = _W("A2")
    assert a_function(W, W.identity) == 0
    assert a_function(W, W.longest) == W.longest.length == 3
    for s in range(W.rank):
        assert a_function(W, W.from_word((s,))) == 1


def test_a_values_a3_set():
    W = _W("A3")
    vals = sorted(set(two_sided_cells(W).a_values))
    assert vals == [0, 1, 2, 3, 6]
    assert a_function(W, W.longest) == W.longest.length == 6


def test_a_values_dihedral():
    for label in ("C2", "G2"):
        W = _W(label)
        part = two_sided_cells(W)
        # three cells: {e} with a=0, the middle with a=1, {w0} with a=l(w0)
        expected = {0, 1, W.longest.length}
        assert set(part.a_values) == expected


@pytest.mark.parametrize("label", ["A2", "A3", "C2", "G2"])
def test_a_constant_on_cells_and_order_reversing(label):
    W = _W(label)
    part = two_sided_cells(W)
    a = part.a_values  # constancy asserted internally
    for i in range(len(part.blocks)):
        for j in range(len(part.blocks)):
            if part.leq[i][j] and i != j:
                assert a[i] >= a[j]
                assert a[i] > a[j]  # strict along the order for these types


def test_a_bounded_by_length():
    W = _W("A3")
    for w in W.elements:
        assert 0 <= a_function(W, w) <= W.longest.length


def test_hasse_edges_c2():
    part = two_sided_cells(_W("C2"))
    # chain of three cells: two covering pairs
    assert len(part.hasse_edges()) == 2


def test_as_dict_shape():
    part = two_sided_cells(_W("A2"))
    d = part.as_dict()
    assert d["type"] == "A2"
    assert sum(c["size"] for c in d["cells"]) == 6
    assert all("a_value" in c for c in d["cells"])
