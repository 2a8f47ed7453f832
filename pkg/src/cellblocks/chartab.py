"""Exact ordinary character tables of small finite groups via the
Dixon-Schneider algorithm: class-sum eigenvectors over a large prime field,
then an exact lift into the cyclotomic field Q(zeta_N), N the group exponent.

Cyclotomic values are polynomials in zeta_N reduced mod the N-th cyclotomic
polynomial, with rational coefficients.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from . import gf


# -- cyclotomic arithmetic ------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    # (x^n - 1) divided by the product of Phi_d over proper divisors d
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            phi_d = [Fraction(c) for c in cyclotomic_polynomial(d)]
            poly = _polydiv_exact(poly, phi_d)
    assert all(c.denominator == 1 for c in poly)
    return tuple(int(c) for c in poly)


def _polydiv_exact(f: List[Fraction], g: List[Fraction]) -> List[Fraction]:
    f = list(f)
    out = [Fraction(0)] * (len(f) - len(g) + 1)
    for i in range(len(f) - len(g), -1, -1):
        c = f[i + len(g) - 1] / g[-1]
        out[i] = c
        for j, gc in enumerate(g):
            f[i + j] -= c * gc
    assert all(c == 0 for c in f), "non-exact polynomial division"
    return out


class CycElem:
    """Element of Q(zeta_n), stored reduced mod the cyclotomic polynomial."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence[Fraction]):
        self.n = n
        phi = cyclotomic_polynomial(n)
        deg = len(phi) - 1
        cs = [Fraction(c) for c in coeffs]
        # reduce mod phi (monic)
        for i in range(len(cs) - 1, deg - 1, -1):
            c = cs[i]
            if c:
                for j in range(len(phi)):
                    cs[i - deg + j] -= c * phi[j]
        cs = cs[:deg] + [Fraction(0)] * max(0, deg - len(cs))
        self.coeffs = tuple(cs[:deg])

    @staticmethod
    def zeta_power(n: int, k: int) -> "CycElem":
        k %= n
        return CycElem(n, [Fraction(0)] * k + [Fraction(1)])

    @staticmethod
    def rational(n: int, x) -> "CycElem":
        return CycElem(n, [Fraction(x)])

    def _coerce(self, other):
        if isinstance(other, CycElem):
            if other.n != self.n:
                raise ValueError("cyclotomic order mismatch")
            return other
        return CycElem.rational(self.n, other)

    def __add__(self, other):
        o = self._coerce(other)
        return CycElem(self.n, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        out = [Fraction(0)] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] += a * b
        return CycElem(self.n, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CycElem):
            raise TypeError("division only by rationals")
        return CycElem(self.n, [a / Fraction(other) for a in self.coeffs])

    def conjugate(self) -> "CycElem":
        """Complex conjugation zeta -> zeta^{-1}."""
        out = [Fraction(0)] * self.n
        for i, a in enumerate(self.coeffs):
            out[(-i) % self.n] += a
        return CycElem(self.n, out)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_rational(self):
        """The value as a Fraction if it is rational, else None."""
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0]
        return None

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __repr__(self):
        rat = self.as_rational()
        if rat is not None:
            return f"Cyc({rat})"
        return f"Cyc(n={self.n}, {list(self.coeffs)})"


# -- Dixon-Schneider ------------------------------------------------------------------

@dataclass
class ClassData:
    """Conjugacy class bookkeeping for a concrete finite group."""
    classes: List[list]            # all elements, grouped by class; [0] = identity
    reps: list
    sizes: List[int]
    class_of: dict                 # element -> class index
    mul: Callable
    inv: Callable
    identity: object

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def order(self) -> int:
        return sum(self.sizes)


def _element_order(cd: ClassData, x) -> int:
    n = 1
    y = x
    while y != cd.identity:
        y = cd.mul(y, x)
        n += 1
    return n


def _primitive_root(p: int) -> int:
    fac = []
    m = p - 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            fac.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        fac.append(m)
    for z in range(2, p):
        if all(pow(z, (p - 1) // f, p) != 1 for f in fac):
            return z
    raise RuntimeError("no primitive root found")


def dixon_schneider(cd: ClassData):
    """Exact character table: (rows of CycElem values, degrees, exponent N)."""
    k = cd.k
    G = cd.order
    orders = [_element_order(cd, r) for r in cd.reps]
    N = 1
    for o in orders:
        N = N * o // math.gcd(N, o)
    # a prime p = 1 mod N with p > 2*sqrt(|G|)
    p = N + 1
    while True:
        if p > 2 * math.isqrt(G) + 1 and gf._is_prime(p):
            break
        p += N
    F = gf.GF(p)
    # class multiplication matrices: (M_i)_{j,t} = #{(x,y) in Ci x Cj : xy = z_t}
    inv_class = [cd.class_of[cd.inv(r)] for r in cd.reps]
    Ms = []
    for i in range(k):
        M = np.zeros((k, k), dtype=np.int64)
        for x in cd.classes[i]:
            xinv = cd.inv(x)
            for t in range(k):
                y = cd.mul(xinv, cd.reps[t])
                M[cd.class_of[y], t] += 1
        Ms.append(M % p)
    # simultaneous eigenvectors over F_p by iterative refinement
    spaces = [F.identity(k)]  # rows span each common eigenspace candidate
    for i in range(1, k):
        if all(S.shape[0] == 1 for S in spaces):
            break
        new_spaces = []
        for S in spaces:
            if S.shape[0] == 1:
                new_spaces.append(S)
                continue
            # restriction R of M_i to the (invariant) row space of S:
            # M_i S^T = S^T R, solved column by column
            img = F.mat_mul(S, Ms[i].T)
            R = np.stack([F.solve(S.T, img[j]) for j in range(S.shape[0])]).T
            for lam_poly, _ in gf.gfp_factor(F, F.charpoly(R), random.Random(1)):
                if len(lam_poly) != 2:
                    continue
                lam = F.neg_code(int(lam_poly[0]))
                shifted = F.vsub(R, _scaled_identity(F, R.shape[0], lam))
                null = F.nullspace(shifted)  # rows c with R c = lam c
                if null.shape[0]:
                    new_spaces.append(F.mat_mul(null, S))
        spaces = new_spaces
    assert len(spaces) == k and all(S.shape[0] == 1 for S in spaces)
    # normalize omega(identity class) = 1; recover degrees and values mod p
    table_p = []
    degrees = []
    for S in spaces:
        v = S[0]
        assert v[0] != 0
        v = F.vmul(v, F.inv_code(int(v[0])))
        t = 0
        for i in range(k):
            t = F.add_codes(t, F.mul_codes(F.mul_codes(int(v[i]), int(v[inv_class[i]])),
                                           F.inv_code(cd.sizes[i] % p)))
        d_sq = F.mul_codes(G % p, F.inv_code(t))
        d = next(dd for dd in range(1, math.isqrt(G) + 1)
                 if (dd * dd) % p == d_sq)
        chi_p = [F.mul_codes(F.mul_codes(d, int(v[i])), F.inv_code(cd.sizes[i] % p))
                 for i in range(k)]
        table_p.append(chi_p)
        degrees.append(d)
    # lift to Q(zeta_N) using eigenvalue multiplicities
    z = _primitive_root(p)
    power_class = [[cd.class_of[_power(cd, cd.reps[i], t)] for t in range(orders[i])]
                   for i in range(k)]
    rows = []
    for chi_p in table_p:
        row = []
        for i in range(k):
            n = orders[i]
            w = pow(z, (p - 1) // n, p)
            val = CycElem.rational(N, 0)
            for kk in range(n):
                m = 0
                for t in range(n):
                    m = (m + chi_p[power_class[i][t]] *
                         pow(w, (-t * kk) % (p - 1), p)) % p
                m = m * pow(n, -1, p) % p
                assert m <= max(degrees), "multiplicity lift out of range"
                if m:
                    val = val + m * CycElem.zeta_power(N, kk * (N // n))
            row.append(val)
        rows.append(row)
    order_key = sorted(range(k), key=lambda r: (degrees[r], [cyc_sort_key(x) for x in rows[r]]))
    rows = [rows[i] for i in order_key]
    degrees = [degrees[i] for i in order_key]
    return rows, degrees, N


def cyc_sort_key(x: CycElem):
    return tuple((c.numerator, c.denominator) for c in x.coeffs)


def _power(cd: ClassData, x, t: int):
    y = cd.identity
    for _ in range(t):
        y = cd.mul(y, x)
    return y


def _scaled_identity(F, n, lam):
    M = F.zeros(n, n)
    for i in range(n):
        M[i, i] = lam
    return M
