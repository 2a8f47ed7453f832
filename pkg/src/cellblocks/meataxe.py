"""Module chopping over small finite fields (Holt-Rees style MeatAxe):
composition factors with multiplicity, irreducibility certificates via
Norton's criterion, isomorphism testing and fixed-vector computation.

Modules are matrix representations acting on column vectors; all matrices
use the integer code convention of the gf module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import gf
from .gf import spin

_RETRY_CAP = 64


class ChopFailure(RuntimeError):
    """The randomized search exhausted its retry budget."""


@dataclass(eq=False)
class FFModule:
    """A module over F_{l^r} given by the matrices of its acting generators."""

    field: "gf._Field"
    generators: List[np.ndarray]
    seed: int = 0
    irreducible: Optional[bool] = dc_field(default=None, compare=False)
    certificate: Optional[dict] = dc_field(default=None, compare=False)

    def __post_init__(self):
        gens = [np.asarray(g, dtype=np.int64) for g in self.generators]
        if gens:
            n = gens[0].shape[0]
            for g in gens:
                if g.shape != (n, n):
                    raise ValueError("generators must be square of equal size")
            self._dim = n
        else:
            raise ValueError("need the dimension: pass at least one generator "
                             "(use an identity matrix for a trivial action)")
        self.generators = gens

    @property
    def dim(self) -> int:
        return self._dim

    def word_matrix(self, word: Sequence[int]) -> np.ndarray:
        out = self.field.identity(self.dim)
        for s in word:
            out = self.field.mat_mul(out, self.generators[s])
        return out

    def dual(self) -> "FFModule":
        return FFModule(self.field, [g.T for g in self.generators], seed=self.seed)

    def to_text(self) -> str:
        lines = [f"{self.field.p} {self.field.r} {self.dim} {len(self.generators)}"]
        for g in self.generators:
            for row in g:
                lines.append(" ".join(str(int(c)) for c in row))
        return "\n".join(lines) + "\n"


@dataclass
class CompositionSeries:
    factors: List[Tuple[FFModule, int]]
    dimension: int

    def __post_init__(self):
        total = sum(m.dim * k for m, k in self.factors)
        assert total == self.dimension, "composition factor dimensions must add up"

    @property
    def factor_dims(self) -> List[int]:
        out = []
        for m, k in self.factors:
            out.extend([m.dim] * k)
        return sorted(out)


# -- random algebra elements -------------------------------------------------------

def _random_algebra_element(M: FFModule, rng: random.Random) -> np.ndarray:
    """Short random word combination with small random coefficients."""
    F = M.field
    n = M.dim
    acc = F.zeros(n, n)
    terms = rng.randint(2, 4)
    for _ in range(terms):
        word = [rng.randrange(len(M.generators))
                for _ in range(rng.randint(1, 3))]
        c = rng.randrange(1, F.order)
        acc = F.vadd(acc, _scaled(F, M.word_matrix(word), c))
    return acc


def _scaled(F, A, c):
    if F.r == 1:
        return (A * c) % F.p
    return F.vmul(A, np.int64(c))


# -- chopping -------------------------------------------------------------------

def _basis_complement(F, B, n):
    """Extend echelonized rows B to a full basis; returns (C, k) with the
    first k rows spanning B."""
    k = B.shape[0]
    _, pivots = F.rref(B)
    free = [j for j in range(n) if j not in pivots]
    C = np.zeros((n, n), dtype=np.int64)
    C[:k] = B
    for i, j in enumerate(free):
        C[k + i, j] = 1
    return C, k


def _split(M: FFModule, B: np.ndarray) -> Tuple[FFModule, FFModule]:
    """Split along the proper invariant subspace spanned by the rows of B
    into (submodule, quotient)."""
    F = M.field
    n = M.dim
    C, k = _basis_complement(F, B, n)
    Cinv = F.mat_inv(C)
    sub_gens, quo_gens = [], []
    for g in M.generators:
        # action on row vectors of the new basis: C g^T C^{-1}
        h = F.mat_mul(F.mat_mul(C, g.T), Cinv)
        assert not h[:k, k:].any(), "subspace was not invariant"
        sub_gens.append(h[:k, :k].T)
        quo_gens.append(h[k:, k:].T)
    return (FFModule(F, sub_gens, seed=M.seed + 1),
            FFModule(F, quo_gens, seed=M.seed + 2))


def _find_submodule(M: FFModule, rng: random.Random):
    """Returns (basis_rows, None) for a proper submodule, (None, cert) when
    irreducibility was certified, or (None, None) on an inconclusive draw."""
    F = M.field
    n = M.dim
    A = _random_algebra_element(M, rng)
    charpoly = F.charpoly(A)
    factors = gfp_nullities(F, A, charpoly)
    for f, nullity, N in factors:
        d = len(f) - 1
        # primal spin: every basis null vector
        for v in N:
            S = spin(F, [v], M.generators, n)
            if S.shape[0] < n:
                return S, None
        # dual spin
        fAt = gf.gfp_eval_matrix(F, f, A.T)
        Nd = F.nullspace(fAt)
        duals = [g.T for g in M.generators]
        for w in Nd:
            S = spin(F, [w], duals, n)
            if S.shape[0] < n:
                # annihilator of a dual submodule is a submodule
                ann = F.nullspace(S)
                return ann, None
        if nullity == d:
            # Norton: multiplicity-free factor, both spins full => irreducible
            cert = {"factor": [int(c) for c in f], "nullity": nullity}
            return None, cert
    return None, None


def gfp_nullities(F, A, charpoly):
    """Irreducible factors of the characteristic polynomial with the
    nullity and a nullspace basis of f(A), sorted by (nullity, degree)."""
    rng = random.Random(0xC0FFEE)
    out = []
    for f, _m in gf.gfp_factor(F, charpoly, rng):
        if len(f) <= 1:
            continue
        fA = gf.gfp_eval_matrix(F, f, A)
        N = F.nullspace(fA)
        out.append((f, N.shape[0], N))
    out.sort(key=lambda t: (t[1], len(t[0])))
    return out


def chop(M: FFModule) -> CompositionSeries:
    """Composition factors with multiplicities; deterministic per seed."""
    if M.dim < 1:
        raise ValueError("chop needs dimension >= 1")
    leaves = _chop_rec(M, M.seed)
    merged: List[Tuple[FFModule, int]] = []
    for fac in leaves:
        for i, (rep, mult) in enumerate(merged):
            if rep.dim == fac.dim and is_isomorphic(rep, fac)[0]:
                merged[i] = (rep, mult + 1)
                break
        else:
            merged.append((fac, 1))
    merged.sort(key=lambda t: t[0].dim)
    return CompositionSeries(merged, M.dim)


def _chop_rec(M: FFModule, seed: int) -> List[FFModule]:
    if M.dim == 1:
        M.irreducible = True
        M.certificate = {"factor": None, "nullity": 1}
        return [M]
    rng = random.Random(seed)
    for attempt in range(_RETRY_CAP):
        B, cert = _find_submodule(M, rng)
        if B is not None:
            sub, quo = _split(M, B)
            return _chop_rec(sub, seed + 1) + _chop_rec(quo, seed + 2)
        if cert is not None:
            M.irreducible = True
            M.certificate = cert
            return [M]
    raise ChopFailure(
        f"no certificate after {_RETRY_CAP} random draws (dim {M.dim})")


# -- isomorphism and endomorphisms ---------------------------------------------

def _mat_kron(F, A, B):
    """Kronecker product over the field (code matrices)."""
    na, ma = A.shape
    nb, mb = B.shape
    K = F.vmul(A[:, None, :, None], B[None, :, None, :])
    return K.reshape(na * nb, ma * mb)


def hom_space(M: FFModule, N: FFModule) -> np.ndarray:
    """Basis (rows, each a row-major flattened matrix X with g_M X = X g_N)."""
    if M.field is not N.field:
        raise ValueError("modules must share a field")
    F = M.field
    n, m = M.dim, N.dim
    Im = F.identity(m)
    In = F.identity(n)
    blocks = []
    for gM, gN in zip(M.generators, N.generators):
        # vec(g_M X) = (g_M kron I) vec(X);  vec(X g_N) = (I kron g_N^T) vec(X)
        blocks.append(F.vsub(_mat_kron(F, gM, Im), _mat_kron(F, In, gN.T)))
    return F.nullspace(np.concatenate(blocks, axis=0))


def is_isomorphic(M: FFModule, N: FFModule):
    """(flag, intertwiner): for irreducible inputs, true iff isomorphic;
    the intertwiner X satisfies g_M X = X g_N."""
    if M.irreducible is not True or N.irreducible is not True:
        raise ValueError("is_isomorphic needs Norton-certified irreducibles")
    if M.field is not N.field or M.dim != N.dim:
        return False, None
    if len(M.generators) != len(N.generators):
        return False, None
    F = M.field
    if M.dim == 1:
        same = all(int(a[0, 0]) == int(b[0, 0])
                   for a, b in zip(M.generators, N.generators))
        return (same, F.identity(1) if same else None)
    # cheap invariant filter before solving for an intertwiner
    probe = random.Random(7)
    for _ in range(2):
        word = [probe.randrange(len(M.generators)) for _ in range(3)]
        if F.charpoly(M.word_matrix(word)) != F.charpoly(N.word_matrix(word)):
            return False, None
    H = hom_space(M, N)
    if H.shape[0] == 0:
        return False, None
    X = H[0].reshape(M.dim, N.dim)
    return True, X


def endomorphism_dim(M: FFModule) -> int:
    return hom_space(M, M).shape[0]


def is_absolutely_irreducible(M: FFModule) -> bool:
    """For an irreducible module: true iff End = F (Schur dimension one)."""
    if M.irreducible is not True:
        raise ValueError("certify irreducibility first (chop)")
    return endomorphism_dim(M) == 1


# -- fixed vectors ---------------------------------------------------------------

def fixed_vectors(M: FFModule, subset: Sequence[Sequence[int]]) -> int:
    """Dimension of the common fixed space of the operators given by the
    listed generator words."""
    F = M.field
    n = M.dim
    blocks = []
    for word in subset:
        P = M.word_matrix(word)
        blocks.append(F.vsub(P, F.identity(n)))
    if not blocks:
        return n
    return F.nullspace(np.concatenate(blocks, axis=0)).shape[0]
