"""Exact arithmetic substrate: rationals, small number fields, Laurent
polynomials and reduction maps into finite fields.

Everything here is immutable and exact; no floating point is used
anywhere.  Number fields are limited to degree <= 4 over the rationals,
which covers Q, Q(sqrt(2)), Q(sqrt(3)) and the cyclotomic values needed
elsewhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .gf import GF, FFElem


Rat = Fraction


class FieldMismatch(ValueError):
    pass


class ReduciblePolynomial(ValueError):
    def __init__(self, factor):
        self.factor = factor
        super().__init__(f"polynomial is reducible; factor {factor}")


class BadDenominator(ValueError):
    def __init__(self, ell):
        self.ell = ell
        super().__init__(f"element is not {ell}-integral (denominator divisible by {ell})")


def _as_frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected rational, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# rational polynomial helpers (dense, monic-ish, used for minimal polynomials)

def _poly_trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    b = list(b)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and _poly_trim(a):
        if len(a) < len(b):
            break
        coef = a[-1] / b[-1]
        deg = len(a) - len(b)
        q[deg] = coef
        for i, bc in enumerate(b):
            a[deg + i] -= coef * bc
        _poly_trim(a)
    return q, a


def _rational_roots(coeffs: Sequence[Fraction]):
    """Rational roots of a polynomial with rational coefficients."""
    # clear denominators
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    if len(ints) <= 1:
        return []
    # strip trailing zero constant terms: x = 0 is a root
    roots = []
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
        ints = ints[k:]
    a0, an = abs(ints[0]), abs(ints[-1])
    for p in _divisors(a0):
        for q in _divisors(an):
            for r in (Fraction(p, q), Fraction(-p, q)):
                val = Fraction(0)
                for c in reversed(ints):
                    val = val * r + c
                if val == 0 and r not in roots:
                    roots.append(r)
    return roots


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int):
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _find_rational_factor(coeffs: Sequence[Fraction]):
    """Return a nontrivial monic factor of the given polynomial over Q,
    or None if irreducible.  Degree must be <= 4."""
    coeffs = [_as_frac(c) for c in coeffs]
    deg = len(coeffs) - 1
    if deg <= 1:
        return None
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    roots = _rational_roots(monic)
    if roots:
        r = roots[0]
        return [-r, Fraction(1)]
    if deg <= 3:
        return None
    if deg == 4:
        return _quartic_quadratic_factor(monic)
    raise ValueError("number fields are limited to degree <= 4")


def _quartic_quadratic_factor(m: Sequence[Fraction]):
    """Search for a monic quadratic factor of a monic quartic with no
    rational roots.  Scale to an integer polynomial first (Gauss lemma)."""
    den = 1
    for c in m:
        den = den * c.denominator // _gcd(den, c.denominator)
    # substitute x -> x/den and scale: y^4 + a y^3 + ...
    a = [m[i] * den ** (4 - i) for i in range(5)]  # integer coefficients, monic*den^4 ... recompute
    # easier: integer polynomial den^4 * m(x/den) is monic in y = den*x
    ints = [int(m[i] * den ** (4 - i)) for i in range(4)] + [1]
    e, d_, c_, b_, _ = ints
    # (y^2 + p y + q)(y^2 + r y + s) with integer p,q,r,s
    for q in _signed_divisors(e):
        if e % q != 0:
            continue
        s = e // q
        # p + r = b_, q + s + p r = c_, p s + q r = d_
        for p in range(-abs(b_) - abs(c_) - abs(d_) - 4, abs(b_) + abs(c_) + abs(d_) + 5):
            r = b_ - p
            if q + s + p * r == c_ and p * s + q * r == d_:
                # convert factor in y back to x: y = den*x
                return [Fraction(q, den ** 2), Fraction(p, den), Fraction(1)]
    return None


def _signed_divisors(n: int):
    if n == 0:
        return [0]
    out = []
    for d in _divisors(n):
        out.extend([d, -d])
    return out


# ---------------------------------------------------------------------------
# number fields

class NumberField:
    """A field Q[x]/(m(x)) with m monic irreducible of degree <= 4.

    The descriptor is immutable; elements are coordinate vectors in the
    power basis 1, g, ..., g^{d-1} of the generator g.
    """

    def __init__(self, min_poly: Sequence, name: str = "s"):
        coeffs = [_as_frac(c) for c in min_poly]
        coeffs = _poly_trim(list(coeffs))
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if len(coeffs) > 5:
            raise ValueError("number fields are limited to degree <= 4")
        lead = coeffs[-1]
        coeffs = tuple(c / lead for c in coeffs)
        factor = _find_rational_factor(coeffs)
        if factor is not None:
            raise ReduciblePolynomial(tuple(factor))
        self.min_poly = coeffs
        self.degree = len(coeffs) - 1
        self.name = name
        # powers of g up to g^{2d-2} reduced into the power basis
        d = self.degree
        pows = [[Fraction(0)] * d for _ in range(2 * d - 1)]
        for i in range(d):
            pows[i][i] = Fraction(1)
        for i in range(d, 2 * d - 1):
            prev = pows[i - 1]
            shifted = [Fraction(0)] + prev[:]
            top = shifted.pop()
            # g^d = -(m_0 + m_1 g + ... + m_{d-1} g^{d-1})
            for j in range(d):
                shifted[j] -= top * coeffs[j]
            pows[i] = shifted
        self._pows = [tuple(p) for p in pows]

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        return f"NumberField({list(self.min_poly)})"

    def __call__(self, coords) -> "NFElem":
        if isinstance(coords, NFElem):
            if coords.field != self:
                raise FieldMismatch("element from a different field")
            return coords
        if isinstance(coords, (int, Fraction)):
            coords = [coords] + [0] * (self.degree - 1)
        coords = [_as_frac(c) for c in coords]
        if len(coords) != self.degree:
            raise ValueError("coordinate vector has wrong length")
        return NFElem(self, tuple(coords))

    @property
    def gen(self) -> "NFElem":
        if self.degree == 1:
            # Q itself: the generator is the root of the degree-1 minpoly
            return self([-self.min_poly[0]])
        return self([0, 1] + [0] * (self.degree - 2))

    def zero(self):
        return self(0)

    def one(self):
        return self(1)


#: the rational field, as the degree-1 number field Q[x]/(x - 1)
QQ = NumberField([-1, 1], name="")


class NFElem:
    """Element of a NumberField, stored as exact power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords):
        self.field = field
        self.coords = coords

    def _coerce(self, other):
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise FieldMismatch("mixed-field arithmetic is rejected")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        acc = [Fraction(0)] * d
        pows = self.field._pows
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(o.coords):
                if b == 0:
                    continue
                p = pows[i + j]
                ab = a * b
                for k in range(d):
                    if p[k]:
                        acc[k] += ab * p[k]
        return NFElem(self.field, tuple(acc))

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        d = self.field.degree
        # solve self * x = 1 as a linear system over Q
        basis = [NFElem(self.field, tuple(Fraction(1) if i == j else Fraction(0) for j in range(d)))
                 for i in range(d)]
        cols = [(self * b).coords for b in basis]
        mat = [[cols[j][i] for j in range(d)] for i in range(d)]
        rhs = [Fraction(1)] + [Fraction(0)] * (d - 1)
        sol = _solve_rational(mat, rhs)
        return NFElem(self.field, tuple(sol))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def __repr__(self):
        return f"NFElem({list(self.coords)})"

    def __str__(self):
        name = self.field.name or "s"
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*{name}" if c != 1 else name)
            else:
                terms.append(f"{c}*{name}^{i}" if c != 1 else f"{name}^{i}")
        return " + ".join(terms) if terms else "0"


def _solve_rational(mat, rhs):
    """Solve a square rational linear system by Gaussian elimination."""
    n = len(mat)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# Laurent polynomials

Scalar = Union[int, Fraction, NFElem]


def _scalar_zero(x) -> bool:
    if isinstance(x, NFElem):
        return x.is_zero()
    return x == 0


class Poly:
    """Sparse univariate Laurent polynomial in the indeterminate t.

    Coefficients are exact rationals or NFElem values from a single
    number field.  Exponents may be negative.  The zero polynomial has
    degree None.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        cc = {}
        if coeffs:
            for k, v in coeffs.items():
                if isinstance(v, int):
                    v = Fraction(v)
                if not _scalar_zero(v):
                    cc[int(k)] = v
        self.coeffs = cc

    @staticmethod
    def t(exp: int = 1) -> "Poly":
        return Poly({exp: Fraction(1)})

    @staticmethod
    def const(c) -> "Poly":
        return Poly({0: c})

    @property
    def degree(self):
        if not self.coeffs:
            return None
        return max(self.coeffs)

    @property
    def low_degree(self):
        if not self.coeffs:
            return None
        return min(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        return self.coeffs.get(k, Fraction(0))

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            w = out.get(k)
            w = v if w is None else w + v
            if _scalar_zero(w):
                out.pop(k, None)
            else:
                out[k] = w
        p = Poly.__new__(Poly)
        p.coeffs = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly.__new__(Poly)
        p.coeffs = {k: -v for k, v in self.coeffs.items()}
        return p

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                ab = a * b
                w = out.get(k)
                w = ab if w is None else w + ab
                if _scalar_zero(w):
                    out.pop(k, None)
                else:
                    out[k] = w
        p = Poly.__new__(Poly)
        p.coeffs = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly.const(1)
        base = self
        if n < 0:
            raise ValueError("use t(-k) for negative powers")
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset((k, _hashable(v)) for k, v in self.coeffs.items()))

    def __call__(self, a):
        return self.eval(a)

    def eval(self, a):
        """Exact evaluation at a rational or NFElem point."""
        if isinstance(a, int):
            a = Fraction(a)
        acc = None
        for k, c in self.coeffs.items():
            term = c * _power(a, k)
            acc = term if acc is None else acc + term
        if acc is None:
            return Fraction(0) if isinstance(a, Fraction) else a.field.zero()
        return acc

    def map_coeffs(self, fn) -> "Poly":
        return Poly({k: fn(v) for k, v in self.coeffs.items()})

    def __repr__(self):
        return f"Poly({self.coeffs!r})"

    def __str__(self):
        return format_poly(self)


def _hashable(v):
    return v


def _power(a, k: int):
    if k >= 0:
        return a ** k
    if isinstance(a, Fraction):
        return Fraction(1) / a ** (-k)
    return a ** k  # NFElem supports negative powers


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction, NFElem)):
        return Poly.const(x)
    return None


# --- polynomial text format -------------------------------------------------
#
# sparse "coeff*t^k" terms joined by "+"; coefficients as "a/b" or "a/b*s"
# where s is the field generator.  Example: "1/2*t^1 + -1/2*t^0".

def format_scalar(c) -> str:
    if isinstance(c, NFElem):
        if c.is_rational():
            return str(c.coords[0])
        name = c.field.name or "s"
        parts = []
        for i, x in enumerate(c.coords):
            if x == 0:
                continue
            if i == 0:
                parts.append(str(x))
            else:
                sym = name if i == 1 else f"{name}^{i}"
                parts.append(f"{x}*{sym}")
        return "(" + " + ".join(parts) + ")"
    return str(c)


def format_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    terms = []
    for k in sorted(f.coeffs, reverse=True):
        terms.append(f"{format_scalar(f.coeffs[k])}*t^{k}")
    return " + ".join(terms)


def parse_poly(text: str, field: NumberField = None) -> Poly:
    """Inverse of format_poly.  A field must be supplied to parse terms
    mentioning the field generator."""
    text = text.strip()
    if text == "0":
        return Poly()
    coeffs = {}
    for term in _split_terms(text):
        term = term.strip()
        if not term:
            continue
        if "*t^" not in term:
            raise ValueError(f"bad polynomial term {term!r}")
        coef_s, exp_s = term.rsplit("*t^", 1)
        k = int(exp_s)
        c = _parse_scalar(coef_s.strip(), field)
        if k in coeffs:
            coeffs[k] = coeffs[k] + c
        else:
            coeffs[k] = c
    return Poly(coeffs)


def _split_terms(text: str):
    """Split on top-level '+' only (field coefficients are parenthesised)."""
    terms = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            terms.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    terms.append("".join(cur))
    return terms


def _parse_scalar(s: str, field: NumberField = None):
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        if field is None:
            raise ValueError("field element coefficient needs a field")
        body = s[1:-1]
        acc = field.zero()
        for part in body.split(" + "):
            part = part.strip()
            acc = acc + _parse_nf_term(part, field)
        return acc
    return Fraction(s)


def _parse_nf_term(part: str, field: NumberField):
    name = field.name or "s"
    if "*" in part:
        c_s, sym = part.split("*", 1)
        c = Fraction(c_s)
        if sym == name:
            i = 1
        elif sym.startswith(f"{name}^"):
            i = int(sym[len(name) + 1:])
        else:
            raise ValueError(f"bad generator symbol {sym!r}")
    else:
        if part == name:
            c, i = Fraction(1), 1
        else:
            c, i = Fraction(part), 0
    coords = [Fraction(0)] * field.degree
    coords[i] = c
    return field(coords)


# ---------------------------------------------------------------------------
# reduction maps

class ReductionMap:
    """Ring homomorphism from the ell-integral elements of a number field
    onto a finite field F_{ell^r}.

    The prime ideal above ell is pinned by factoring the minimal
    polynomial mod ell and taking the lexicographically smallest monic
    irreducible factor; the generator is sent to the smallest root of
    that factor in F_{ell^r}.
    """

    def __init__(self, field: NumberField, ell: int, min_r: int = 1):
        self.source = field
        self.ell = ell
        mod_coeffs = []
        for c in field.min_poly:
            if c.denominator % ell == 0:
                raise BadDenominator(ell)
            mod_coeffs.append(c.numerator * pow(c.denominator, -1, ell) % ell)
        factor = _smallest_irreducible_factor(mod_coeffs, ell)
        r = len(factor) - 1
        # allow embedding into a larger field when the caller needs one
        while r < min_r or min_r % r != 0:
            # target degree must be a multiple of the residue degree
            min_r += 1
        target_r = min_r if min_r > r else r
        if target_r % r != 0:
            raise ValueError("target extension degree must be a multiple of the residue degree")
        self.target = GF(ell, target_r)
        self.gen_image = self._find_root(factor)

    def _find_root(self, factor):
        F = self.target
        for code in range(F.order):
            acc = 0
            for c in reversed(factor):
                acc = F.add_codes(F.mul_codes(acc, code), c % self.ell)
            if acc == 0:
                return code
        raise ValueError("no root of the chosen factor in the target field")

    def __call__(self, x) -> FFElem:
        return self.reduce(x)

    def reduce(self, x) -> FFElem:
        """Image of x; raises BadDenominator if x is not ell-integral."""
        if isinstance(x, int):
            x = Fraction(x)
        if isinstance(x, Fraction):
            x = self.source(x)
        if x.field != self.source:
            raise FieldMismatch("element from a different field")
        F = self.target
        acc = 0
        gpow = 1  # code of gen_image^i
        for c in x.coords:
            if c.denominator % self.ell == 0:
                raise BadDenominator(self.ell)
            cm = c.numerator * pow(c.denominator, -1, self.ell) % self.ell
            acc = F.add_codes(acc, F.mul_codes(cm, gpow))
            gpow = F.mul_codes(gpow, self.gen_image)
        return FFElem(F, acc)


def reduce_fraction(x, ell: int, F: GF = None) -> int:
    """Reduce a rational with ell-coprime denominator to a code mod ell
    (embedded in F if given)."""
    x = _as_frac(x)
    if x.denominator % ell == 0:
        raise BadDenominator(ell)
    v = x.numerator * pow(x.denominator, -1, ell) % ell
    if F is None or F.r == 1:
        return v
    return F.embed_prime(v)


def _smallest_irreducible_factor(coeffs, ell):
    """Lexicographically smallest monic irreducible factor of an integer
    polynomial mod ell (degree <= 4, brute-force search)."""
    c = [x % ell for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    deg = len(c) - 1
    inv_lead = pow(c[-1], -1, ell)
    c = [x * inv_lead % ell for x in c]
    for d in range(1, deg + 1):
        for cand in _monic_polys(ell, d):
            if _divides_mod(cand, c, ell) and _is_irreducible_mod(cand, ell):
                return cand
    raise AssertionError("unreachable: the polynomial divides itself")


def _monic_polys(ell, d):
    # enumerate in lexicographic order of (c_0, ..., c_{d-1})
    def rec(i, cur):
        if i == d:
            yield cur + [1]
            return
        for v in range(ell):
            yield from rec(i + 1, cur + [v])
    yield from rec(0, [])


def _divides_mod(f, g, ell):
    g = [x % ell for x in g]
    df = len(f) - 1
    while len(g) - 1 >= df:
        if g[-1] == 0:
            g.pop()
            continue
        coef = g[-1]  # f monic
        shift = len(g) - len(f)
        for i, fc in enumerate(f):
            g[shift + i] = (g[shift + i] - coef * fc) % ell
        while g and g[-1] == 0:
            g.pop()
    return not g


def _is_irreducible_mod(f, ell):
    d = len(f) - 1
    if d == 1:
        return True
    for dd in range(1, d // 2 + 1):
        for cand in _monic_polys(ell, dd):
            if _divides_mod(cand, f, ell):
                return False
    return True


def field_create(min_poly, name: str = "s") -> NumberField:
    """Create a number field descriptor from a minimal polynomial over Q.

    The polynomial may be given as a Poly or a coefficient list in
    increasing degree.  Reducible input raises ReduciblePolynomial with a
    discovered factor attached.
    """
    if isinstance(min_poly, Poly):
        if min_poly.low_degree is not None and min_poly.low_degree < 0:
            raise ValueError("minimal polynomial must be an honest polynomial")
        deg = min_poly.degree or 0
        coeffs = [min_poly[k] for k in range(deg + 1)]
    else:
        coeffs = list(min_poly)
    return NumberField(coeffs, name=name)


def sqrt2_field() -> NumberField:
    return field_create([-2, 0, 1], name="s")


def sqrt3_field() -> NumberField:
    return field_create([-3, 0, 1], name="s")
