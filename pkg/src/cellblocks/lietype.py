"""Tiny finite matrix groups (GL2/SL2 over F_q with q <= 5, GL3 over F_2):
Borel subgroup, conjugacy classes, exact ordinary character tables, the
permutation module on G/B, unipotent classes of GL_n with average values
and unipotent supports, and modular dimension inventories.

Matrices are tuples of tuples of field codes (gf module conventions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import chartab, gf, meataxe

SUPPORTED = {("GL", 2, 2), ("GL", 2, 3), ("GL", 2, 4), ("GL", 2, 5),
             ("SL", 2, 2), ("SL", 2, 3), ("SL", 2, 4), ("SL", 2, 5),
             ("GL", 3, 2)}


class UnsupportedGroup(ValueError):
    pass


def _field_for(q: int) -> "gf._Field":
    for p in (2, 3, 5):
        r = 0
        qq = q
        while qq % p == 0:
            qq //= p
            r += 1
        if qq == 1 and r:
            return gf.GF(p, r)
    raise UnsupportedGroup(f"q = {q} is not a supported prime power")


def _mmul(F, a, b):
    n = len(a)
    return tuple(
        tuple(_dot(F, a[i], tuple(b[t][j] for t in range(n))) for j in range(n))
        for i in range(n))


def _dot(F, row, col):
    acc = 0
    for x, y in zip(row, col):
        acc = F.add_codes(acc, F.mul_codes(x, y))
    return acc


def _det(F, a):
    n = len(a)
    if n == 2:
        return F.sub_codes(F.mul_codes(a[0][0], a[1][1]),
                           F.mul_codes(a[0][1], a[1][0]))
    # 3x3 cofactor expansion
    d = 0
    for j in range(3):
        minor = F.sub_codes(
            F.mul_codes(a[1][(j + 1) % 3], a[2][(j + 2) % 3]),
            F.mul_codes(a[1][(j + 2) % 3], a[2][(j + 1) % 3]))
        d = F.add_codes(d, F.mul_codes(a[0][j], minor))
    return d


def _identity(F, n):
    return tuple(tuple(F.embed_prime(1) if i == j else 0 for j in range(n))
                 for i in range(n))


def _minv(F, a):
    A = np.array(a, dtype=np.int64)
    return tuple(tuple(int(x) for x in row) for row in F.mat_inv(A))


@dataclass(eq=False)
class FiniteMatrixGroup:
    family: str
    n: int
    q: int
    field: "gf._Field"
    elements: list
    B: list
    generators: list  # two standard generators
    classes: List[list]
    class_reps: list
    class_sizes: List[int]
    class_of: dict
    _char_table: Optional["CharacterTable"] = dc_field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self):
        return _identity(self.field, self.n)

    def mul(self, a, b):
        return _mmul(self.field, a, b)

    def inv(self, a):
        return _minv(self.field, a)

    def is_unipotent(self, u) -> bool:
        F = self.field
        m = F.vsub(np.array(u, dtype=np.int64), F.identity(self.n))
        return not _nilpotent_power(F, m, self.n).any()


def _nilpotent_power(F, m, n):
    out = m
    for _ in range(n - 1):
        out = F.mat_mul(out, m)
    return out


def build_group(family: str, n: int, q: int) -> FiniteMatrixGroup:
    if (family, n, q) not in SUPPORTED:
        raise UnsupportedGroup(f"{family}{n}(F_{q}) is not supported")
    F = _field_for(q)
    one = F.embed_prime(1)
    cells = list(range(F.order))
    elems = []
    import itertools
    for entries in itertools.product(cells, repeat=n * n):
        m = tuple(tuple(entries[i * n + j] for j in range(n)) for i in range(n))
        d = _det(F, m)
        if d == 0:
            continue
        if family == "SL" and d != one:
            continue
        elems.append(m)
    expected = _expected_order(family, n, q)
    assert len(elems) == expected, (len(elems), expected)
    B = [m for m in elems
         if all(m[i][j] == 0 for i in range(n) for j in range(n) if i > j)]
    gens = _standard_generators(family, n, F, elems)
    classes, reps, sizes, class_of = _conjugacy_classes(F, elems)
    return FiniteMatrixGroup(family, n, q, F, elems, B, gens,
                             classes, reps, sizes, class_of)


def _expected_order(family, n, q):
    gl = 1
    for i in range(n):
        gl *= q ** n - q ** i
    return gl if family == "GL" else gl // (q - 1)


def _standard_generators(family, n, F, elems):
    """A transvection plus a monomial/Singer-type element, verified to
    generate by closure."""
    one = F.embed_prime(1)
    ident = _identity(F, n)
    transvection = tuple(tuple(one if i == j or (i == 0 and j == 1) else 0
                               for j in range(n)) for i in range(n))
    elem_set = set(elems)
    monomial = [m for m in elems
                if sum(1 for row in m for x in row if x != 0) == n]
    # prefer a monomial partner; fall back to arbitrary elements (needed for
    # q = 4, where the transvection has order 2 and monomials are not enough)
    candidates = monomial + [m for m in elems if m not in monomial]
    for cand in candidates:
        gens = [transvection, cand]
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = _mmul(F, x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(seen) == len(elem_set):
            return gens
    raise RuntimeError("no generating pair found")


def _conjugacy_classes(F, elems):
    class_of: dict = {}
    classes = []
    reps = []
    ident = _identity(F, len(elems[0]))
    ordered = [ident] + [m for m in elems if m != ident]
    inverses = {m: _minv(F, m) for m in elems}
    for x in ordered:
        if x in class_of:
            continue
        orb = set()
        for g in elems:
            orb.add(_mmul(F, _mmul(F, g, x), inverses[g]))
        idx = len(classes)
        for y in orb:
            class_of[y] = idx
        cls = sorted(orb)
        classes.append(cls)
        reps.append(cls[0] if x != ident else ident)
    sizes = [len(c) for c in classes]
    assert sum(sizes) == len(elems)
    return classes, reps, sizes, class_of


# -- character table --------------------------------------------------------------

@dataclass
class CharacterTable:
    group: FiniteMatrixGroup
    rows: List[List["chartab.CycElem"]]   # rows[r][c] = chi_r(class c)
    degrees: List[int]
    exponent: int

    @property
    def k(self) -> int:
        return len(self.rows)

    def value(self, row: int, element) -> "chartab.CycElem":
        return self.rows[row][self.group.class_of[element]]


def character_table(G: FiniteMatrixGroup) -> CharacterTable:
    if G.order > 1000:
        raise ValueError("character table capped at |G| <= 1000")
    if G._char_table is None:
        cd = chartab.ClassData(G.classes, G.class_reps, G.class_sizes,
                               G.class_of, G.mul, G.inv, G.identity)
        rows, degrees, N = chartab.dixon_schneider(cd)
        tab = CharacterTable(G, rows, degrees, N)
        _check_orthogonality(tab)
        assert sum(d * d for d in degrees) == G.order
        G._char_table = tab
    return G._char_table


def _check_orthogonality(tab: CharacterTable):
    G = tab.group
    inv_class = [G.class_of[G.inv(r)] for r in G.class_reps]
    N = tab.exponent
    for i, r1 in enumerate(tab.rows):
        for j in range(i, len(tab.rows)):
            r2 = tab.rows[j]
            ip = chartab.CycElem.rational(N, 0)
            for c in range(tab.k):
                ip = ip + G.class_sizes[c] * r1[c] * r2[inv_class[c]]
            expect = G.order if i == j else 0
            assert ip == chartab.CycElem.rational(N, expect), \
                "character table fails orthogonality"


# -- permutation module on G/B ------------------------------------------------------

def coset_space(G: FiniteMatrixGroup):
    """Left cosets xB: list of coset keys and the index map element -> coset."""
    coset_of: dict = {}
    keys = []
    for x in G.elements:
        if x in coset_of:
            continue
        coset = sorted(G.mul(x, b) for b in G.B)
        idx = len(keys)
        keys.append(coset[0])
        for y in coset:
            coset_of[y] = idx
    return keys, coset_of


def perm_module(G: FiniteMatrixGroup, ell: int, r: int = 1,
                seed: int = 0) -> "meataxe.FFModule":
    """k[G/B] over F_{ell^r}.  Action generators are the two standard group
    generators followed by every element of B (so that B-fixed subspaces of
    composition factors stay computable); .b_words lists the B part."""
    keys, coset_of = coset_space(G)
    n = len(keys)
    F = gf.GF(ell, r)
    acting = list(G.generators) + list(G.B)
    gens = []
    for g in acting:
        M = F.zeros(n, n)
        for i, x in enumerate(keys):
            M[coset_of[G.mul(g, x)], i] = 1
        gens.append(M)
    mod = meataxe.FFModule(F, gens, seed=seed)
    mod.b_words = [(len(G.generators) + i,) for i in range(len(G.B))]
    return mod


# -- unipotent classes of GL_n --------------------------------------------------------

@dataclass(frozen=True)
class UnipotentClassGLn:
    partition: Tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(self.partition)

    @property
    def dim_bu(self) -> int:
        # n(lambda) = sum (i-1) * lambda_i
        return sum(i * p for i, p in enumerate(self.partition))

    @property
    def dim_orbit(self) -> int:
        lam_t = _transpose_partition(self.partition)
        return self.n ** 2 - sum(c * c for c in lam_t)

    def closure_leq(self, other: "UnipotentClassGLn") -> bool:
        """self in the closure of other, i.e. dominance self <= other."""
        return dominance_leq(self.partition, other.partition)


def _transpose_partition(lam: Tuple[int, ...]) -> Tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def dominance_leq(mu: Tuple[int, ...], lam: Tuple[int, ...]) -> bool:
    assert sum(mu) == sum(lam)
    a = b = 0
    for i in range(max(len(mu), len(lam))):
        a += mu[i] if i < len(mu) else 0
        b += lam[i] if i < len(lam) else 0
        if a > b:
            return False
    return True


def jordan_type(G: FiniteMatrixGroup, u) -> Tuple[int, ...]:
    """Partition of n from the ranks of (u - 1)^k."""
    F = G.field
    n = G.n
    m = F.vsub(np.array(u, dtype=np.int64), F.identity(n))
    ranks = [n]
    power = F.identity(n)
    for _ in range(n):
        power = F.mat_mul(power, m)
        ranks.append(F.rank(power))
    assert ranks[-1] == 0, "element is not unipotent"
    # blocks of size >= k: ranks[k-1] - ranks[k]
    geq = [ranks[k - 1] - ranks[k] for k in range(1, n + 1)]
    lam = []
    for k in range(n, 0, -1):
        count = geq[k - 1] - (geq[k] if k < n else 0)
        lam.extend([k] * count)
    return tuple(sorted(lam, reverse=True))


def unipotent_classes(G: FiniteMatrixGroup) -> Dict[Tuple[int, ...], List[int]]:
    """Geometric unipotent classes: partition -> list of G-class indices."""
    out: Dict[Tuple[int, ...], List[int]] = {}
    F = G.field
    n = G.n
    for ci, rep in enumerate(G.class_reps):
        m = F.vsub(np.array(rep, dtype=np.int64), F.identity(n))
        if _nilpotent_power(F, m, n).any():
            continue
        out.setdefault(jordan_type(G, rep), []).append(ci)
    return out


def average_value(G: FiniteMatrixGroup, classes: Sequence[Tuple[object, int]],
                  chi: Sequence["chartab.CycElem"]) -> "chartab.CycElem":
    """AV(O, rho) = sum over the rational classes in O of
    [A(u):A(u)^F] * trace(u, rho)."""
    F = G.field
    n = G.n
    tab = character_table(G)
    total = chartab.CycElem.rational(tab.exponent, 0)
    for u, factor in classes:
        m = F.vsub(np.array(u, dtype=np.int64), F.identity(n))
        if _nilpotent_power(F, m, n).any():
            raise ValueError("representative is not unipotent")
        total = total + factor * chi[G.class_of[u]]
    return total


def unipotent_support(G: FiniteMatrixGroup, row: int) -> UnipotentClassGLn:
    """The unique maximal-dimension unipotent class with AV != 0 for the
    character in the given table row (GL_n only)."""
    if G.family != "GL":
        raise UnsupportedGroup("unipotent supports implemented for GL_n only")
    tab = character_table(G)
    chi = tab.rows[row]
    hits = []
    for lam, class_indices in unipotent_classes(G).items():
        reps = [(G.class_reps[ci], 1) for ci in class_indices]
        av = average_value(G, reps, chi)
        if not av.is_zero():
            hits.append(UnipotentClassGLn(lam))
    assert hits, "every character meets the identity class at least"
    top = max(c.dim_orbit for c in hits)
    winners = [c for c in hits if c.dim_orbit == top]
    if len(winners) != 1:
        raise AssertionError(
            f"unipotent support not unique: {[c.partition for c in winners]}")
    return winners[0]


# -- modular inventories ---------------------------------------------------------------

def regular_group_module(G: FiniteMatrixGroup, ell: int, r: int,
                         seed: int = 0) -> "meataxe.FFModule":
    index = {x: i for i, x in enumerate(G.elements)}
    F = gf.GF(ell, r)
    n = G.order
    gens = []
    for g in G.generators:
        M = F.zeros(n, n)
        for x, i in index.items():
            M[index[G.mul(g, x)], i] = 1
        gens.append(M)
    return meataxe.FFModule(F, gens, seed=seed)


def modular_irr_dims(G: FiniteMatrixGroup, ell: int, r: int = 1,
                     seed: int = 0, max_r: int = 8) -> List[int]:
    """Dimensions of the distinct irreducible kG-modules (composition
    factors of the regular module over a splitting field)."""
    while r <= max_r:
        series = meataxe.chop(regular_group_module(G, ell, r, seed))
        if all(meataxe.is_absolutely_irreducible(m) for m, _ in series.factors):
            return sorted(m.dim for m, _ in series.factors)
        r *= 2
    raise RuntimeError("no splitting field within the degree cap")


def principal_series_mod(G: FiniteMatrixGroup, ell: int, r: int = 1,
                         seed: int = 0, max_r: int = 8):
    """Composition factors of k[G/B] with multiplicities, B-fixed dimensions
    and principal-series membership flags."""
    p = G.field.p
    if ell == p:
        raise ValueError("defining characteristic: ell must differ from p")
    while r <= max_r:
        mod = perm_module(G, ell, r, seed=seed)
        series = meataxe.chop(mod)
        if all(meataxe.is_absolutely_irreducible(m) for m, _ in series.factors):
            out = []
            for factor, mult in series.factors:
                fixed = meataxe.fixed_vectors(factor, mod.b_words)
                out.append({"factor": factor, "multiplicity": mult,
                            "dim": factor.dim, "b_fixed": fixed,
                            "in_principal_series": fixed > 0})
            return out
        r *= 2
    raise RuntimeError("no splitting field within the degree cap")
