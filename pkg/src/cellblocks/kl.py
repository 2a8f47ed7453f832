"""Kazhdan-Lusztig polynomials, mu-coefficients, two-sided cells with the
induced order on cells, and the structure-constant a-function.

Polynomials are kept as plain {exponent: int} dicts internally for speed;
the public accessors convert to exactalg.Poly.  All per-group data is
memoised on first use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
import numpy as np

from .coxeter import CoxeterSystem, GroupElement
from .exactalg import Poly


# -- tiny integer polynomial helpers (variable q) ----------------------------

def _padd(f, g):
    out = dict(f)
    for k, v in g.items():
        w = out.get(k, 0) + v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def _pshift(f, k, c=1):
    return {e + k: c * v for e, v in f.items()}


def _psub(f, g):
    return _padd(f, {k: -v for k, v in g.items()})


class KLData:
    """All KL data for one Coxeter system: the polynomial table, mu, the
    two-sided cell partition and the a-function."""

    def __init__(self, W: CoxeterSystem):
        self.W = W
        self._P: Dict[Tuple[int, int], dict] = {}
        self._cells: Optional["CellPartition"] = None
        self._a: Optional[np.ndarray] = None

    # -- KL polynomials ----------------------------------------------------

    def P(self, y: int, w: int) -> dict:
        key = (y, w)
        hit = self._P.get(key)
        if hit is not None:
            return hit
        W = self.W
        ye, we = W.elements[y], W.elements[w]
        if y == w:
            val = {0: 1}
        elif not W.bruhat_leq(ye, we):
            val = {}
        else:
            s = W.left_descents(we)[0]
            v = W.left_mul_gen(s, we)
            sy = W.left_mul_gen(s, ye)
            c = 1 if sy.length < ye.length else 0
            val = _padd(_pshift(self.P(sy.index, v.index), 1 - c),
                        _pshift(self.P(y, v.index), c))
            lw = we.length
            for z in W._bruhat_below(v.index):
                ze = W.elements[z]
                if z == v.index:
                    continue
                if W.left_mul_gen(s, ze).length > ze.length:
                    continue
                m = self.mu(z, v.index)
                if m:
                    val = _psub(val, _pshift(self.P(y, z), (lw - ze.length) // 2, m))
        self._P[key] = val
        return val

    def mu(self, y: int, w: int) -> int:
        ye, we = self.W.elements[y], self.W.elements[w]
        d = we.length - ye.length
        if d <= 0 or d % 2 == 0:
            return 0
        return self.P(y, w).get((d - 1) // 2, 0)

    # -- cells ----------------------------------------------------------------

    def _cprime_edges(self):
        """Directed edges w -> u meaning u <=_LR w, from the supports of
        C'_s C'_w and C'_w C'_s."""
        W = self.W
        edges = set()
        for w in range(W.order):
            we = W.elements[w]
            mu_targets = None
            for s in range(W.rank):
                sw = W.left_mul_gen(s, we)
                ws = W.right_mul_gen(we, s)
                for other, side in ((sw, "L"), (ws, "R")):
                    if other.length < we.length:
                        continue
                    edges.add((w, other.index))
                    if mu_targets is None:
                        mu_targets = [z for z in W._bruhat_below(w)
                                      if z != w and self.mu(z, w)]
                    for z in mu_targets:
                        ze = W.elements[z]
                        if side == "L":
                            if W.left_mul_gen(s, ze).length < ze.length:
                                edges.add((w, z))
                        else:
                            if W.right_mul_gen(ze, s).length < ze.length:
                                edges.add((w, z))
        return edges

    def cells(self) -> "CellPartition":
        if self._cells is None:
            W = self.W
            G = nx.DiGraph()
            G.add_nodes_from(range(W.order))
            G.add_edges_from(self._cprime_edges())
            comp = list(nx.strongly_connected_components(G))
            cond = nx.condensation(G, scc=comp)
            # reachability in the condensation: block j reaches block i
            # iff block i <=_LR block j
            n = len(comp)
            reach = [set(nx.descendants(cond, i)) | {i} for i in range(n)]
            blocks = [frozenset(c) for c in comp]
            leq = [[i in reach[j] for j in range(n)] for i in range(n)]
            self._cells = CellPartition(self, blocks, leq)
        return self._cells

    # -- a-function --------------------------------------------------------------

    def a_values(self) -> np.ndarray:
        """a(w) for every element, as the maximal v-degree of the C'-basis
        structure constants h_{x,y,w}."""
        if self._a is not None:
            return self._a
        W = self.W
        n = W.order
        # left multiplication operator of C'_s in the C'-basis, per degree of v
        Ls = []
        for s in range(W.rank):
            mats: Dict[int, np.ndarray] = {-1: np.zeros((n, n), dtype=np.int64),
                                           0: np.zeros((n, n), dtype=np.int64),
                                           1: np.zeros((n, n), dtype=np.int64)}
            for w in range(n):
                we = W.elements[w]
                sw = W.left_mul_gen(s, we)
                if sw.length < we.length:
                    mats[1][w, w] += 1
                    mats[-1][w, w] += 1
                else:
                    mats[0][sw.index, w] += 1
                    for z in W._bruhat_below(w):
                        if z == w:
                            continue
                        ze = W.elements[z]
                        if W.left_mul_gen(s, ze).length < ze.length:
                            m = self.mu(z, w)
                            if m:
                                mats[0][z, w] += m
            Ls.append({d: m for d, m in mats.items() if m.any()})
        L: List[Optional[Dict[int, np.ndarray]]] = [None] * n
        L[0] = {0: np.eye(n, dtype=np.int64)}
        order = sorted(range(n), key=lambda i: (W.elements[i].length, W.elements[i].word))
        for x in order:
            if L[x] is not None:
                continue
            xe = W.elements[x]
            if xe.length == 1:
                L[x] = Ls[xe.word[0]]
                continue
            s = xe.word[0]
            v = W.left_mul_gen(s, xe)
            acc = _matpoly_mul(Ls[s], L[v.index])
            for z in W._bruhat_below(v.index):
                if z == v.index:
                    continue
                ze = W.elements[z]
                if W.left_mul_gen(s, ze).length < ze.length:
                    m = self.mu(z, v.index)
                    if m:
                        acc = _matpoly_axpy(acc, -m, L[z])
            L[x] = acc
        a = np.zeros(n, dtype=np.int64)
        for x in range(n):
            for d, mat in L[x].items():
                rows = np.nonzero(mat.any(axis=1))[0]
                a[rows] = np.maximum(a[rows], d)
        self._a = a
        return a


def _matpoly_mul(A: Dict[int, np.ndarray], B: Dict[int, np.ndarray]):
    out: Dict[int, np.ndarray] = {}
    for da, ma in A.items():
        for db, mb in B.items():
            d = da + db
            prod = ma @ mb
            if d in out:
                out[d] += prod
            else:
                out[d] = prod
    return {d: m for d, m in out.items() if m.any()}


def _matpoly_axpy(A: Dict[int, np.ndarray], c: int, B: Dict[int, np.ndarray]):
    out = dict(A)
    for d, mb in B.items():
        if d in out:
            out[d] = out[d] + c * mb
        else:
            out[d] = c * mb
    return {d: m for d, m in out.items() if m.any()}


@dataclass
class CellPartition:
    """Two-sided cells of a Coxeter group with the <=_LR order and a-values.

    blocks[i] is a frozenset of element indices; leq[i][j] is True iff
    block i <=_LR block j.  a-values are computed on first access.
    """

    data: KLData
    blocks: List[FrozenSet[int]]
    leq: List[List[bool]]
    _a_values: Optional[List[int]] = field(default=None, repr=False)

    @property
    def W(self) -> CoxeterSystem:
        return self.data.W

    def block_of(self, w: GroupElement) -> int:
        for i, b in enumerate(self.blocks):
            if w.index in b:
                return i
        raise KeyError(w)

    @property
    def a_values(self) -> List[int]:
        if self._a_values is None:
            a = self.data.a_values()
            vals = []
            for b in self.blocks:
                block_vals = {int(a[i]) for i in b}
                assert len(block_vals) == 1, \
                    f"a-function is not constant on a cell: {sorted(block_vals)}"
                vals.append(block_vals.pop())
            self._a_values = vals
        return self._a_values

    def hasse_edges(self) -> List[Tuple[int, int]]:
        """Covering pairs (i, j) with block i <_LR block j."""
        n = len(self.blocks)
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq[i][j]:
                    continue
                if any(k != i and k != j and self.leq[i][k] and self.leq[k][j]
                       for k in range(n)):
                    continue
                out.append((i, j))
        return out

    def as_dict(self) -> dict:
        W = self.W
        return {
            "type": W.label,
            "cells": [
                {
                    "elements": sorted(repr(W.elements[i]) for i in b),
                    "size": len(b),
                    "a_value": self.a_values[k],
                }
                for k, b in enumerate(self.blocks)
            ],
            "hasse": self.hasse_edges(),
        }


# -- public API -----------------------------------------------------------------

def kl_data(W: CoxeterSystem) -> KLData:
    data = getattr(W, "_kl_data", None)
    if data is None:
        data = KLData(W)
        W._kl_data = data
    return data


def kl_polynomial(W: CoxeterSystem, y: GroupElement, w: GroupElement) -> Poly:
    """The KL polynomial P_{y,w} as an exact polynomial in q (zero when
    y is not below w in Bruhat order)."""
    raw = kl_data(W).P(y.index, w.index)
    return Poly({k: Fraction(v) for k, v in raw.items()})


def mu(W: CoxeterSystem, y: GroupElement, w: GroupElement) -> int:
    """Coefficient of q^{(l(w)-l(y)-1)/2} in P_{y,w} (0 for even gaps)."""
    return kl_data(W).mu(y.index, w.index)


def two_sided_cells(W: CoxeterSystem) -> CellPartition:
    return kl_data(W).cells()


def a_function(W: CoxeterSystem, w: GroupElement) -> int:
    return int(kl_data(W).a_values()[w.index])
