"""Finite Coxeter groups of types A_n (n <= 4), B2/C2, G2 and dihedral
I2(m), with ShortLex normal forms, lengths, Bruhat order and a stored
diagram automorphism.

Elements are realised concretely (permutations for type A, rigid motions
of an m-gon for the dihedral types) and then re-expressed as ShortLex
minimal reduced words by an ordered breadth-first enumeration of the
Cayley graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple


CLASSICAL_ORDERS = {
    "A1": 2, "A2": 6, "A3": 24, "A4": 120,
    "B2": 8, "C2": 8, "G2": 12,
}


class UnsupportedType(ValueError):
    pass


def _parse_label(label: str):
    label = label.strip()
    if label in ("A1", "A2", "A3", "A4"):
        return "A", int(label[1])
    if label in ("B2", "C2"):
        return "I2", 4
    if label == "G2":
        return "I2", 6
    if label.startswith("I2(") and label.endswith(")"):
        m = int(label[3:-1])
        if m < 2:
            raise UnsupportedType(f"I2(m) needs m >= 2, got {m}")
        return "I2", m
    raise UnsupportedType(f"unsupported Coxeter type {label!r}")


# -- concrete realisations ---------------------------------------------------

class _PermRealization:
    """Symmetric group S_{n+1}; generators are adjacent transpositions."""

    def __init__(self, n):
        self.n = n
        self.identity = tuple(range(n + 1))
        gens = []
        for i in range(n):
            g = list(range(n + 1))
            g[i], g[i + 1] = g[i + 1], g[i]
            gens.append(tuple(g))
        self.gens = gens

    def mul(self, a, b):
        # composition: (a*b)(i) = a(b(i))
        return tuple(a[b[i]] for i in range(len(a)))


class _DihedralRealization:
    """Dihedral group of order 2m as maps x -> eps*x + k on Z/m."""

    def __init__(self, m):
        self.m = m
        self.identity = (1, 0)
        self.gens = [(-1, 0), (-1, 1 % m)]

    def mul(self, a, b):
        e1, k1 = a
        e2, k2 = b
        return (e1 * e2, (e1 * k2 + k1) % self.m)


@dataclass(frozen=True)
class GroupElement:
    """A group element in ShortLex-minimal reduced word form."""
    word: Tuple[int, ...]
    index: int  # position in the ShortLex enumeration

    @property
    def length(self) -> int:
        return len(self.word)

    def __repr__(self):
        if not self.word:
            return "e"
        return "*".join(f"s{i + 1}" for i in self.word)


class CoxeterSystem:
    """A finite Coxeter system with precomputed enumeration and
    multiplication data.  Immutable after construction."""

    def __init__(self, label: str, gamma=None):
        kind, param = _parse_label(label)
        self.label = label
        if kind == "A":
            self.rank = param
            real = _PermRealization(param)
            mat = [[1 if i == j else 2 for j in range(param)] for i in range(param)]
            for i in range(param - 1):
                mat[i][i + 1] = mat[i + 1][i] = 3
        else:
            m = param
            self.rank = 2
            real = _DihedralRealization(m)
            mat = [[1, m], [m, 1]]
        self.coxeter_matrix = tuple(tuple(r) for r in mat)
        self._real = real
        if gamma is None:
            gamma = tuple(range(self.rank))
        else:
            gamma = tuple(gamma)
            if sorted(gamma) != list(range(self.rank)):
                raise ValueError("gamma must be a permutation of the generators")
            for i in range(self.rank):
                for j in range(self.rank):
                    if mat[gamma[i]][gamma[j]] != mat[i][j]:
                        raise ValueError("gamma does not preserve the Coxeter matrix")
        self.gamma_perm = gamma
        self._enumerate()

    # -- enumeration ---------------------------------------------------------

    def _enumerate(self):
        real = self._real
        key_to_index = {real.identity: 0}
        keys = [real.identity]
        words = [()]
        frontier = [0]
        while frontier:
            nxt = []
            for idx in frontier:
                for s in range(self.rank):
                    k = real.mul(keys[idx], real.gens[s])
                    if k not in key_to_index:
                        key_to_index[k] = len(keys)
                        keys.append(k)
                        words.append(words[idx] + (s,))
                        nxt.append(len(keys) - 1)
            frontier = nxt
        # re-sort into ShortLex order (BFS gives length order; break ties
        # lexicographically on the word)
        order = sorted(range(len(words)), key=lambda i: (len(words[i]), words[i]))
        self._keys = [keys[i] for i in order]
        self._words = [words[i] for i in order]
        self._key_to_index = {k: i for i, k in enumerate(self._keys)}
        self.order = len(self._keys)
        self.elements = [GroupElement(w, i) for i, w in enumerate(self._words)]
        self.identity = self.elements[0]
        # right multiplication table by generators
        self._right = [
            [self._key_to_index[real.mul(self._keys[i], real.gens[s])]
             for s in range(self.rank)]
            for i in range(self.order)
        ]
        maxlen = max(len(w) for w in self._words)
        longest = [e for e in self.elements if e.length == maxlen]
        assert len(longest) == 1, "finite Coxeter group must have a unique longest element"
        self.longest = longest[0]

    # -- basic operations ------------------------------------------------------

    def element(self, index: int) -> GroupElement:
        return self.elements[index]

    def from_word(self, word) -> GroupElement:
        idx = 0
        for s in word:
            idx = self._right[idx][s]
        return self.elements[idx]

    def multiply(self, x: GroupElement, y: GroupElement) -> GroupElement:
        idx = x.index
        for s in y.word:
            idx = self._right[idx][s]
        return self.elements[idx]

    def right_mul_gen(self, x: GroupElement, s: int) -> GroupElement:
        return self.elements[self._right[x.index][s]]

    def left_mul_gen(self, s: int, x: GroupElement) -> GroupElement:
        return self.from_word((s,) + x.word)

    def inverse(self, x: GroupElement) -> GroupElement:
        return self.from_word(tuple(reversed(x.word)))

    def length(self, x: GroupElement) -> int:
        return x.length

    def left_descents(self, x: GroupElement):
        return [s for s in range(self.rank)
                if self.left_mul_gen(s, x).length < x.length]

    def right_descents(self, x: GroupElement):
        return [s for s in range(self.rank)
                if self.right_mul_gen(x, s).length < x.length]

    def gamma(self, x: GroupElement) -> GroupElement:
        return self.from_word(tuple(self.gamma_perm[s] for s in x.word))

    # -- Bruhat order -----------------------------------------------------------

    def bruhat_leq(self, y: GroupElement, w: GroupElement) -> bool:
        """True iff y <= w in Bruhat order (subword property)."""
        if y.length > w.length:
            return False
        return y.index in self._bruhat_below(w.index)

    @lru_cache(maxsize=None)
    def _bruhat_below(self, w_index: int) -> frozenset:
        """Indices of all elements obtainable as products of subwords of the
        canonical reduced word of w; equals the Bruhat interval [e, w]."""
        word = self._words[w_index]
        reachable = {0}
        for s in word:
            new = set(reachable)
            for idx in reachable:
                new.add(self._right[idx][s])
            reachable = new
        return frozenset(reachable)

    def __repr__(self):
        return f"CoxeterSystem({self.label!r}, order={self.order})"


def enumerate_elements(W: CoxeterSystem):
    """All elements in ShortLex order (identity first)."""
    return list(W.elements)
