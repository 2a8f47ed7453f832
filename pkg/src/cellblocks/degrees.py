"""Registries of dimension polynomials and membership checking.

Each registry is a finite set of exact polynomials in one variable t,
over Q or Q(sqrt(2)), together with a provenance tag per polynomial.
Observed character or module dimensions are checked for membership by
exact evaluation at the relevant parameter value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .exactalg import (NFElem, NumberField, Poly, QQ, format_poly,
                       parse_poly, sqrt2_field)

#: provenance tags
TAG_PAPER = "paper"
TAG_SPAN = "span-construction"
TAG_EXTENSION = "extension"

_TAGS = (TAG_PAPER, TAG_SPAN, TAG_EXTENSION)


class UnknownRegistry(KeyError):
    pass


@dataclass(frozen=True)
class PolySet:
    """A labelled finite set of polynomials with per-entry provenance."""

    label: str
    field: NumberField
    entries: Tuple[Tuple[Poly, str], ...]

    def __post_init__(self):
        polys = [f for f, _ in self.entries]
        for i, f in enumerate(polys):
            assert f not in polys[:i], f"duplicate polynomial {format_poly(f)}"
        assert all(tag in _TAGS for _, tag in self.entries)

    @property
    def polynomials(self) -> List[Poly]:
        return [f for f, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, f: Poly) -> bool:
        return any(f == g for g in self.polynomials)

    def values_at(self, q) -> list:
        """Exact evaluations of every member at q (in registry order)."""
        return [f.eval(q) for f in self.polynomials]

    def with_entry(self, f: Poly, tag: str) -> "PolySet":
        if f in self:
            return self
        return PolySet(self.label, self.field, self.entries + ((f, tag),))

    def to_text(self) -> str:
        lines = [f"label: {self.label}",
                 f"field: {format_poly(_minpoly_as_poly(self.field))}"]
        for f, tag in self.entries:
            lines.append(f"{format_poly(f)} | {tag}")
        return "\n".join(lines) + "\n"


def _minpoly_as_poly(field: NumberField) -> Poly:
    return Poly({k: c for k, c in enumerate(field.min_poly)})


def from_text(text: str) -> PolySet:
    """Inverse of PolySet.to_text."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2 or not lines[0].startswith("label: ") \
            or not lines[1].startswith("field: "):
        raise ValueError("registry text must start with label: and field: lines")
    label = lines[0][len("label: "):].strip()
    minp = parse_poly(lines[1][len("field: "):])
    deg = minp.degree
    coeffs = [minp[k] for k in range(deg + 1)]
    field = QQ if coeffs == [Fraction(-1), Fraction(1)] else NumberField(coeffs)
    entries = []
    for ln in lines[2:]:
        body, _, tag = ln.rpartition(" | ")
        tag = tag.strip()
        if tag not in _TAGS:
            raise ValueError(f"bad provenance tag {tag!r}")
        f = parse_poly(body.strip(), None if field == QQ else field)
        if field != QQ:
            f = f.map_coeffs(field)
        entries.append((f, tag))
    return PolySet(label, field, tuple(entries))


def write_registry(ps: PolySet, path) -> None:
    with open(path, "w") as fh:
        fh.write(ps.to_text())


def read_registry(path) -> PolySet:
    with open(path) as fh:
        return from_text(fh.read())


# -- the explicit registries -----------------------------------------------------------

def _rational_poly(*coeffs) -> Poly:
    """Polynomial from coefficients in increasing degree, over Q."""
    return Poly({k: Fraction(c) for k, c in enumerate(coeffs)})


def registry(label: str) -> PolySet:
    """The base dimension-polynomial set for a (type, twist) label."""
    if label == "(A1,id)":
        half = Fraction(1, 2)
        polys = [
            _rational_poly(1),            # 1
            _rational_poly(0, 1),         # t
            _rational_poly(1, 1),         # t + 1
            _rational_poly(-1, 1),        # t - 1
            _rational_poly(half, half),   # (t + 1)/2
            _rational_poly(-half, half),  # (t - 1)/2
        ]
        return PolySet(label, QQ, tuple((f, TAG_PAPER) for f in polys))
    if label == "(C2,twisted)":
        K = sqrt2_field()
        s = K.gen                       # sqrt(2)
        one = K.one()
        inv_s = one / s                 # 1/sqrt(2) = sqrt(2)/2
        polys = [
            Poly({0: one}),                              # 1
            Poly({4: one}),                              # t^4
            Poly({0: one, 4: one}),                      # t^4 + 1
            Poly({1: -inv_s, 3: inv_s}),                 # t(t^2 - 1)/sqrt(2)
            # (t^2 - 1)(t^2 + sqrt(2) t + 1) and its sign twin
            Poly({0: -one, 1: -s, 3: s, 4: one}),
            Poly({0: -one, 1: s, 3: -s, 4: one}),
        ]
        return PolySet(label, K, tuple((f, TAG_PAPER) for f in polys))
    raise UnknownRegistry(label)


def extended_registry(label: str) -> PolySet:
    """The conjecturally-complete set: the base registry plus the known
    extra polynomials needed for non-defining modular dimensions."""
    if label == "(C2,twisted)":
        base = registry(label)
        one = base.field.one()
        return base.with_entry(Poly({0: -one, 4: one}), TAG_EXTENSION)  # t^4 - 1
    raise UnknownRegistry(label)


def membership(n: int, q, ps: PolySet) -> List[Poly]:
    """All registry polynomials whose exact value at q equals n."""
    if not (isinstance(n, int) and n > 0):
        raise ValueError("dimension must be a positive integer")
    return [f for f in ps.polynomials if f.eval(q) == n]


def odd_power_of_sqrt2(k: int) -> NFElem:
    """The evaluation point sqrt(2)^k as an element of Q(sqrt(2))."""
    if k % 2 == 0:
        raise ValueError("expected an odd power of sqrt(2)")
    return sqrt2_field().gen ** k


# -- the span construction for A1 -------------------------------------------------------

def span_set_A1(bound: int = 2) -> PolySet:
    """All rational combinations (a1/b1)(t+1) + (a2/b2)(t-1) with
    |a_i| <= bound and 0 < |b_i| <= bound, deduplicated.

    This is the brute-force finite superset built from the two virtual
    dimension polynomials t+1 and t-1 of the rank-one case; it contains
    the base registry by construction.
    """
    f_plus = _rational_poly(1, 1)
    f_minus = _rational_poly(-1, 1)
    seen: List[Poly] = []
    ratios = sorted({Fraction(a, b)
                     for a in range(-bound, bound + 1)
                     for b in range(1, bound + 1)})
    for c1 in ratios:
        for c2 in ratios:
            g = c1 * f_plus + c2 * f_minus
            if g not in seen:
                seen.append(g)
    return PolySet("(A1,id)-span", QQ,
                   tuple((g, TAG_SPAN) for g in seen))
