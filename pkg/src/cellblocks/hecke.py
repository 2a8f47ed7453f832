"""One-parameter Iwahori-Hecke algebras: T-basis multiplication, exact
irreducible representations at a concrete parameter (seminormal in type A,
the classical construction in the dihedral types), specialization/reduction
to finite fields via an integral lattice, modular irreducibles by chopping
the regular module, decomposition matrices and triangularity checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import gf, kl, meataxe
from .coxeter import CoxeterSystem, GroupElement
from .exactalg import BadDenominator, reduce_fraction


class CoefficientMismatch(TypeError):
    pass


class DefiningCharacteristic(ValueError):
    pass


# -- the algebra and T-basis multiplication ----------------------------------------

class HeckeAlgebra:
    """H(W) over a commutative coefficient ring determined by the parameter
    object q (rational number, finite-field element, ...).  Elements are
    sparse dicts {element index: coefficient}."""

    def __init__(self, W: CoxeterSystem, q):
        self.W = W
        self.q = q
        self.one = q ** 0
        self.dim = W.order

    def basis_element(self, w: GroupElement) -> dict:
        return {w.index: self.one}

    def _ring_of(self, elem: dict):
        for c in elem.values():
            return type(c)
        return type(self.one)

    def _right_mul_gen(self, elem: dict, s: int) -> dict:
        W, q = self.W, self.q
        out: Dict[int, object] = {}
        for wi, c in elem.items():
            w = W.elements[wi]
            ws = W.right_mul_gen(w, s)
            if ws.length > w.length:
                out[ws.index] = out.get(ws.index, 0) + c
            else:
                out[ws.index] = out.get(ws.index, 0) + c * q
                out[wi] = out.get(wi, 0) + c * (q - self.one)
        return {k: v for k, v in out.items() if not _is_zero(v)}

    def t_multiply(self, a: dict, b: dict) -> dict:
        """Product in the T-basis: T_s T_w = T_{sw} when the length goes up,
        q T_{sw} + (q-1) T_w otherwise, extended bilinearly."""
        ra, rb = self._ring_of(a), self._ring_of(b)
        if a and b and ra is not rb:
            raise CoefficientMismatch(f"{ra.__name__} vs {rb.__name__}")
        out: Dict[int, object] = {}
        for wi, cb in b.items():
            term = {k: v * cb for k, v in a.items()}
            for s in self.W.elements[wi].word:
                term = self._right_mul_gen(term, s)
            for k, v in term.items():
                out[k] = out.get(k, 0) + v
        return {k: v for k, v in out.items() if not _is_zero(v)}


def _is_zero(c) -> bool:
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


def poincare_polynomial_value(W: CoxeterSystem, q) -> object:
    total = q - q
    for w in W.elements:
        total = total + q ** w.length
    return total


# -- exact matrix representations ----------------------------------------------------

@dataclass(eq=False)
class MatrixRep:
    W: CoxeterSystem
    label: str
    mats: List[list]  # generator images, rows of ring elements
    q: object
    field: Optional["gf._Field"] = None  # set for modular reps
    a_value: Optional[int] = dc_field(default=None, compare=False)
    cell: Optional[int] = dc_field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return len(self.mats[0])

    def word_matrix(self, word: Sequence[int]):
        out = _mat_identity(self.dim, self.q ** 0)
        for s in word:
            out = _mat_mul(out, self.mats[s])
        return out

    def trace_of(self, w: GroupElement):
        M = self.word_matrix(w.word)
        t = self.q - self.q
        for i in range(self.dim):
            t = t + M[i][i]
        return t

    def check_relations(self) -> bool:
        """Quadratic relation for every generator and all braid relations."""
        q, one = self.q, self.q ** 0
        n = self.dim
        for g in self.mats:
            lhs = _mat_mul(g, g)
            rhs = _mat_add(_mat_scale(g, q - one), _mat_scale(_mat_identity(n, one), q))
            if lhs != rhs:
                return False
        mat = self.W.coxeter_matrix
        for i in range(self.W.rank):
            for j in range(i + 1, self.W.rank):
                m = mat[i][j]
                a = self.word_matrix(((i, j) * m)[:m])
                b = self.word_matrix(((j, i) * m)[:m])
                if a != b:
                    return False
        return True

    def as_module(self, seed: int = 0) -> "meataxe.FFModule":
        if self.field is None:
            raise ValueError("only modular representations convert to FFModule")
        return meataxe.FFModule(self.field,
                                [np.array(g, dtype=np.int64) for g in self.mats],
                                seed=seed)


def _mat_identity(n, one):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def _mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return [[sum((A[i][t] * B[t][j] for t in range(k)),
                 start=A[0][0] - A[0][0]) for j in range(m)] for i in range(n)]


def _mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _mat_scale(A, c):
    return [[a * c for a in row] for row in A]


# -- type A: seminormal construction --------------------------------------------------

def partitions(n: int) -> List[Tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []

    def rec(rest, maxpart, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, prefix + [p])

    rec(n, n, [])
    return out


def standard_tableaux(lam: Tuple[int, ...]) -> List[Tuple[Tuple[int, ...], ...]]:
    """All standard Young tableaux of shape lam (entries 1..n)."""
    n = sum(lam)
    rows = len(lam)
    out = []

    def rec(filled, counts):
        if filled == n:
            out.append(tuple(tuple(r) for r in counts_to_rows(counts)))
            return
        for i in range(rows):
            if counts[i] < lam[i] and (i == 0 or counts[i] < counts[i - 1]):
                counts[i] += 1
                placement.append(i)
                rec(filled + 1, counts)
                placement.pop()
                counts[i] -= 1

    placement: List[int] = []

    def counts_to_rows(counts):
        rows_out = [[] for _ in lam]
        for entry, row in enumerate(placement, start=1):
            rows_out[row].append(entry)
        return rows_out

    rec(0, [0] * rows)
    return out


def _positions(tab) -> Dict[int, Tuple[int, int]]:
    pos = {}
    for i, row in enumerate(tab):
        for j, entry in enumerate(row):
            pos[entry] = (i, j)
    return pos


def _qint(q: Fraction, d: int) -> Fraction:
    # [d]_q = 1 + q + ... + q^{d-1}
    return sum((q ** i for i in range(d)), start=Fraction(0))


def seminormal_rep(W: CoxeterSystem, lam: Tuple[int, ...], q: Fraction) -> MatrixRep:
    tabs = standard_tableaux(lam)
    index = {t: i for i, t in enumerate(tabs)}
    d = len(tabs)
    zero, one = Fraction(0), Fraction(1)
    mats = []
    for s in range(W.rank):
        k = s + 1  # T_s swaps k and k+1
        M = [[zero] * d for _ in range(d)]
        for t in tabs:
            pos = _positions(t)
            (r1, c1), (r2, c2) = pos[k], pos[k + 1]
            delta = (c2 - r2) - (c1 - r1)
            if r1 == r2:
                M[index[t]][index[t]] = q
            elif c1 == c2:
                M[index[t]][index[t]] = -one
            else:
                dd = abs(delta)
                qd = _qint(q, dd)
                M[index[t]][index[t]] = (q ** dd / qd) if delta > 0 else (-one / qd)
                u = _swap_entries(t, k)
                if index[u] > index[t]:
                    # the off-diagonal pair carries the product fixed by det = -q
                    gamma = q * _qint(q, dd + 1) * _qint(q, dd - 1) / qd ** 2
                    M[index[t]][index[u]] = one
                    M[index[u]][index[t]] = gamma
        mats.append(M)
    label = "+".join(str(p) for p in lam)
    return MatrixRep(W, label, mats, q)


def _swap_entries(tab, k):
    return tuple(tuple(k + 1 if e == k else k if e == k + 1 else e for e in row)
                 for row in tab)


# -- dihedral types ---------------------------------------------------------------

_COS2: Dict[Tuple[int, int], Fraction] = {
    # 2*cos(2*pi*j/m) for the rational cases
    (3, 1): Fraction(-1),
    (4, 1): Fraction(0),
    (6, 1): Fraction(1),
    (6, 2): Fraction(-1),
}


def dihedral_reps(W: CoxeterSystem, m: int, q: Fraction) -> List[MatrixRep]:
    one = Fraction(1)
    reps = [MatrixRep(W, "index", [[[q]], [[q]]], q),
            MatrixRep(W, "sign", [[[-one]], [[-one]]], q)]
    if m % 2 == 0:
        reps.append(MatrixRep(W, "mixed(q,-1)", [[[q]], [[-one]]], q))
        reps.append(MatrixRep(W, "mixed(-1,q)", [[[-one]], [[q]]], q))
    for j in range(1, (m + 1) // 2):
        if m % 2 == 0 and 2 * j == m:
            continue
        if (m, j) not in _COS2:
            raise NotImplementedError(
                f"2-dim representations of I2({m}) need an irrational 2cos term")
        a = q * (2 * one + _COS2[(m, j)])
        M1 = [[-one, a], [Fraction(0), q]]
        M2 = [[q, Fraction(0)], [one, -one]]
        reps.append(MatrixRep(W, f"refl{j}", [M1, M2], q))
    return reps


# -- complete character-zero lists ----------------------------------------------------

def irr_char_zero(H: HeckeAlgebra) -> List[MatrixRep]:
    """Complete list of pairwise non-isomorphic irreducibles at H's
    (rational) parameter."""
    W = H.W
    q = Fraction(H.q)
    if W.label.startswith("A"):
        n = W.rank + 1
        reps = [seminormal_rep(W, lam, q) for lam in partitions(n)]
    else:
        m = W.coxeter_matrix[0][1]
        reps = dihedral_reps(W, m, q)
    assert sum(r.dim ** 2 for r in reps) == W.order
    return reps


# -- specialization and reduction ---------------------------------------------------

def specialize_reduce(rep: MatrixRep, ell: int, r: int = 1,
                      seed_index: int = 0) -> MatrixRep:
    """Entrywise reduction mod ell after rewriting in an ell-integral
    lattice basis (the module spun from a basis vector)."""
    q = Fraction(rep.q)
    if q.denominator != 1 or q.numerator % ell == 0:
        raise DefiningCharacteristic(
            f"ell = {ell} divides q = {q}: defining characteristic")
    n = rep.dim
    W = rep.W
    # lattice: Z_(ell)-span of the T_w images of one basis vector
    e0 = [Fraction(0)] * n
    e0[seed_index % n] = Fraction(1)
    vecs: List[List[Fraction]] = [None] * W.order  # type: ignore
    vecs[0] = e0
    for w in W.elements:
        if vecs[w.index] is not None:
            continue
        s = w.word[0]
        u = W.left_mul_gen(s, w)
        vecs[w.index] = _apply(rep.mats[s], vecs[u.index])
    basis = _dvr_basis([list(v) for v in vecs], ell, n)
    C = [[basis[j][i] for j in range(n)] for i in range(n)]  # basis as columns
    Cinv = _frac_inverse(C)
    F = gf.GF(ell, r)
    mats = []
    for gi, g in enumerate(rep.mats):
        conj = _mat_mul(Cinv, _mat_mul(g, C))
        rows = []
        for i, row in enumerate(conj):
            out_row = []
            for j, entry in enumerate(row):
                try:
                    out_row.append(int(reduce_fraction(entry, ell, F)))
                except BadDenominator as exc:
                    raise BadDenominator(
                        f"entry ({i},{j}) of T_s{gi + 1} is not {ell}-integral: "
                        f"{entry}") from exc
            rows.append(out_row)
        mats.append(rows)
    out = MatrixRep(W, rep.label, mats, F(int(q.numerator % ell)), field=F)
    out.a_value, out.cell = rep.a_value, rep.cell
    return out


def _apply(M, v):
    return [sum((M[i][j] * v[j] for j in range(len(v))), start=Fraction(0))
            for i in range(len(M))]


def _val(x: Fraction, ell: int) -> int:
    if x == 0:
        return 1 << 30
    v = 0
    num, den = x.numerator, x.denominator
    while num % ell == 0:
        num //= ell
        v += 1
    while den % ell == 0:
        den //= ell
        v -= 1
    return v


def _dvr_basis(rows: List[List[Fraction]], ell: int, n: int) -> List[List[Fraction]]:
    """Gaussian elimination over Z_(ell): returns n rows spanning the same
    Z_(ell)-lattice as the input rows."""
    basis = []
    for col in range(n):
        best = None
        for ri, row in enumerate(rows):
            if row[col] != 0 and (best is None or
                                  _val(row[col], ell) < _val(rows[best][col], ell)):
                best = ri
        if best is None:
            continue
        pivot_row = rows.pop(best)
        pv = pivot_row[col]
        for row in rows:
            if row[col] != 0:
                c = row[col] / pv  # ell-integral by minimality of the pivot
                for j in range(n):
                    row[j] -= c * pivot_row[j]
        basis.append(pivot_row)
    assert len(basis) == n, "lattice vectors do not span the whole space"
    return basis


def _frac_inverse(A: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(A)
    M = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next(i for i in range(col, n) if M[i][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                c = M[i][col]
                M[i] = [x - c * y for x, y in zip(M[i], M[col])]
    return [row[n:] for row in M]


# -- modular irreducibles ------------------------------------------------------------

def regular_module(W: CoxeterSystem, qbar_code: int, F: "gf._Field",
                   seed: int = 0) -> "meataxe.FFModule":
    """Left regular module of H over F with parameter code qbar_code."""
    n = W.order
    qb = qbar_code
    gens = []
    for s in range(W.rank):
        M = F.zeros(n, n)
        for w in W.elements:
            sw = W.left_mul_gen(s, w)
            if sw.length > w.length:
                M[sw.index, w.index] = 1
            else:
                M[sw.index, w.index] = qb
                M[w.index, w.index] = F.sub_codes(qb, F.embed_prime(1))
        gens.append(M)
    return meataxe.FFModule(F, gens, seed=seed)


def irr_modular(W: CoxeterSystem, q: int, ell: int,
                seed: int = 0, max_r: int = 8):
    """All irreducible modular representations (chop of the regular module
    over a splitting field, doubling r until factors are absolutely
    irreducible).  Returns (list of MatrixRep, field)."""
    r = 1
    while r <= max_r:
        F = gf.GF(ell, r)
        series = meataxe.chop(regular_module(W, F.embed_prime(q % ell), F, seed))
        if all(meataxe.is_absolutely_irreducible(m) for m, _ in series.factors):
            reps = []
            for i, (m, _) in enumerate(series.factors):
                rep = MatrixRep(W, f"M{i + 1}",
                                [g.tolist() for g in m.generators],
                                F(F.embed_prime(q % ell)), field=F)
                rep._module = m
                reps.append(rep)
            return reps, F
        r *= 2
    raise RuntimeError(f"no splitting field up to degree {max_r}")


# -- cell labels for ordinary irreducibles -------------------------------------------

def _cell_subquotient_characters(W: CoxeterSystem):
    """Character of the left action of W on each two-sided cell subquotient
    of the group algebra (C'-basis at v = 1)."""
    part = kl.two_sided_cells(W)
    data = kl.kl_data(W)
    n = W.order
    C1 = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for y in data.W._bruhat_below(x):
            C1[y, x] = sum(data.P(y, x).values())
    # unitriangular in the length-compatible index order: integer inverse
    Cinv = np.eye(n, dtype=np.int64)
    for x in range(n - 1, -1, -1):
        for y in range(x - 1, -1, -1):
            if C1[y, x]:
                Cinv[y] = Cinv[y] - C1[y, x] * Cinv[x]
                C1[y] = C1[y] - C1[y, x] * C1[x]
    # recompute C1 (was destroyed); cheaper to rebuild than to copy upfront
    for x in range(n):
        for y in data.W._bruhat_below(x):
            C1[y, x] = sum(data.P(y, x).values())
    chars = []
    perm = np.zeros(n, dtype=np.int64)
    diag_per_w = np.zeros((n, n), dtype=np.int64)
    for w in W.elements:
        for y in W.elements:
            perm[y.index] = W.multiply(w, y).index
        # (rho_w C1)[w*y, x] = C1[y, x]
        wP = np.zeros((n, n), dtype=np.int64)
        wP[perm, :] = C1
        diag_per_w[w.index] = np.einsum("ij,ji->i", Cinv, wP)
    for b in part.blocks:
        chars.append([int(diag_per_w[w, list(b)].sum()) for w in range(n)])
    return part, chars


def assign_cells(W: CoxeterSystem, reps: List[MatrixRep]) -> None:
    """Attach cell index and a-value to each ordinary irreducible by
    decomposing its q = 1 character against the cell subquotients."""
    part, cell_chars = _cell_subquotient_characters(W)
    ones = [_rep_at_one(rep) for rep in reps]
    inv_index = [W.inverse(w).index for w in W.elements]
    for rep, rep1 in zip(reps, ones):
        chi = [rep1.trace_of(w) for w in W.elements]
        hits = []
        for ci, cchar in enumerate(cell_chars):
            # the C'-basis subquotient of a cell affords the sign-twisted
            # characters attached to it, hence the (-1)^l factor
            ip = sum(Fraction(cchar[w.index]) * chi[inv_index[w.index]]
                     * (-1) ** w.length
                     for w in W.elements) / W.order
            if ip != 0:
                hits.append(ci)
        assert len(hits) == 1, f"character of {rep.label} meets cells {hits}"
        rep.cell = hits[0]
        rep.a_value = part.a_values[hits[0]]


def _rep_at_one(rep: MatrixRep) -> MatrixRep:
    W = rep.W
    q1 = Fraction(1)
    if W.label.startswith("A"):
        lam = tuple(int(p) for p in rep.label.split("+"))
        return seminormal_rep(W, lam, q1)
    m = W.coxeter_matrix[0][1]
    for cand in dihedral_reps(W, m, q1):
        if cand.label == rep.label:
            return cand
    raise KeyError(rep.label)


# -- decomposition matrices -----------------------------------------------------------

@dataclass
class DecompositionMatrix:
    W: CoxeterSystem
    q: int
    ell: int
    rows: List[MatrixRep]     # ordinary irreducibles with a-values/cells
    cols: List[MatrixRep]     # modular irreducibles
    entries: np.ndarray       # rows x cols, nonnegative ints
    cell_partition: "kl.CellPartition"

    def __post_init__(self):
        for i, E in enumerate(self.rows):
            total = sum(int(self.entries[i, j]) * M.dim
                        for j, M in enumerate(self.cols))
            assert total == E.dim, "composition factors must add up to dim E"
        for j in range(len(self.cols)):
            assert self.entries[:, j].any(), "empty decomposition-matrix column"

    def as_dict(self) -> dict:
        return {
            "type": self.W.label,
            "q": self.q,
            "ell": self.ell,
            "rows": [{"label": E.label, "dim": E.dim, "a_value": E.a_value,
                      "cell": E.cell} for E in self.rows],
            "cols": [{"label": M.label, "dim": M.dim} for M in self.cols],
            "entries": self.entries.tolist(),
        }


def decomposition_matrix(label: str, q: int, ell: int,
                         seed: int = 0) -> DecompositionMatrix:
    if q % ell == 0:
        raise DefiningCharacteristic(f"ell = {ell} divides q = {q}")
    W = CoxeterSystem(label)
    ordinary = irr_char_zero(HeckeAlgebra(W, Fraction(q)))
    assign_cells(W, ordinary)
    modular, F = irr_modular(W, q, ell, seed=seed)
    D = np.zeros((len(ordinary), len(modular)), dtype=np.int64)
    for i, E in enumerate(ordinary):
        red = specialize_reduce(E, ell, F.r)
        series = meataxe.chop(red.as_module(seed=seed + 17 * i + 1))
        for factor, mult in series.factors:
            matches = [j for j, M in enumerate(modular)
                       if factor.dim == M._module.dim
                       and meataxe.is_isomorphic(factor, M._module)[0]]
            assert len(matches) == 1, "factor must match exactly one modular irr"
            D[i, matches[0]] += mult
    return DecompositionMatrix(W, q, ell, ordinary, modular, D,
                               kl.two_sided_cells(W))


def check_triangularity(D: DecompositionMatrix, mode: str = "a") -> dict:
    """Tries to build the injection M -> E_M with d_{E_M,M} = 1 and every
    other row E with d_{E,M} != 0 strictly larger in the a-order (mode "a")
    or strictly smaller in the cell order (mode "cell")."""
    if mode not in ("a", "cell"):
        raise ValueError("mode must be 'a' or 'cell'")
    part = D.cell_partition
    injection = {}
    violations = []
    for j, M in enumerate(D.cols):
        nz = [i for i in range(len(D.rows)) if D.entries[i, j]]
        candidates = []
        for i in nz:
            if D.entries[i, j] != 1:
                continue
            ok = True
            for k in nz:
                if k == i:
                    continue
                if mode == "a":
                    ok = ok and D.rows[k].a_value > D.rows[i].a_value
                else:
                    ci, ck = D.rows[i].cell, D.rows[k].cell
                    ok = ok and ck != ci and part.leq[ck][ci]
            if ok:
                candidates.append(i)
        if len(candidates) == 1:
            injection[M.label] = D.rows[candidates[0]].label
        else:
            violations.append({"column": M.label,
                               "candidates": [D.rows[i].label for i in candidates]})
    injective = len(set(injection.values())) == len(injection)
    ok = not violations and injective and len(injection) == len(D.cols)
    return {"mode": mode, "ok": ok, "injection": injection,
            "violations": violations}
