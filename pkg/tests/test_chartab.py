import itertools
from fractions import Fraction

import pytest

from cellblocks.chartab import (ClassData, CycElem, cyclotomic_polynomial,
                                dixon_schneider)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    # degree phi(n)
    assert len(cyclotomic_polynomial(84)) == 25


def test_cyc_arithmetic():
    z = CycElem.zeta_power(12, 1)
    # zeta_12^12 = 1
    acc = CycElem.rational(12, 1)
    for _ in range(12):
        acc = acc * z
    assert acc == CycElem.rational(12, 1)
    # 1 + zeta_3 + zeta_3^2 = 0
    z3 = CycElem.zeta_power(12, 4)
    assert (CycElem.rational(12, 1) + z3 + z3 * z3).is_zero()
    # conjugation inverts
    assert z.conjugate() * z == CycElem.rational(12, 1)


def test_cyc_rational_detection():
    x = CycElem.rational(8, Fraction(3, 2))
    assert x.as_rational() == Fraction(3, 2)
    assert CycElem.zeta_power(8, 1).as_rational() is None
    # zeta_8 + zeta_8^{-1} = sqrt(2): irrational but real
    s = CycElem.zeta_power(8, 1) + CycElem.zeta_power(8, 7)
    assert s.as_rational() is None
    assert (s * s).as_rational() == 2


def _perm_group(n):
    elems = list(itertools.permutations(range(n)))

    def mul(a, b):
        return tuple(a[b[i]] for i in range(n))

    def inv(a):
        out = [0] * n
        for i, j in enumerate(a):
            out[j] = i
        return tuple(out)

    ident = tuple(range(n))
    class_of = {}
    classes = []
    reps = []
    for x in elems:
        if x in class_of:
            continue
        orb = {mul(mul(g, x), inv(g)) for g in elems}
        for y in orb:
            class_of[y] = len(classes)
        classes.append(sorted(orb))
        reps.append(min(orb))
    order = sorted(range(len(classes)), key=lambda i: (reps[i] != ident, reps[i]))
    classes = [classes[i] for i in order]
    reps = [reps[i] for i in order]
    class_of = {y: i for i, c in enumerate(classes) for y in c}
    return ClassData(classes, reps, [len(c) for c in classes], class_of,
                     mul, inv, ident)


@pytest.mark.parametrize("n,expected", [(3, [1, 1, 2]), (4, [1, 1, 2, 3, 3])])
def test_symmetric_group_degrees(n, expected):
    rows, degrees, N = dixon_schneider(_perm_group(n))
    assert degrees == expected
    assert sum(d * d for d in degrees) == [6, 24][n - 3]


def test_s4_table_values_exact():
    cd = _perm_group(4)
    rows, degrees, N = dixon_schneider(cd)
    # all S4 character values are rational integers
    values = [[v.as_rational() for v in row] for row in rows]
    assert all(v is not None and v.denominator == 1
               for row in values for v in row)
    # the trivial character is present
    assert [1, 1, 1, 1, 1] in [[int(v) for v in row] for row in values]


def test_orthogonality_s4():
    cd = _perm_group(4)
    rows, degrees, N = dixon_schneider(cd)
    inv_class = [cd.class_of[cd.inv(r)] for r in cd.reps]
    for i, r1 in enumerate(rows):
        for j, r2 in enumerate(rows):
            ip = CycElem.rational(N, 0)
            for c in range(cd.k):
                ip = ip + cd.sizes[c] * r1[c] * r2[inv_class[c]]
            assert ip == CycElem.rational(N, cd.order if i == j else 0)
