"""Finite fields F_{p^r} with table-driven, numpy-vectorised linear algebra.

Elements are integer codes 0 .. p^r - 1: the code of an element is the
base-p encoding of its coordinate vector with respect to the fixed
modulus (the lexicographically smallest monic irreducible of degree r).
Codes 0 .. p-1 always denote the prime-field constants.

Matrices are numpy int64 arrays of codes.  For r = 1 arithmetic is plain
modular arithmetic; for r > 1 elementwise ops go through q x q lookup
tables, and matrix products through coordinate decomposition, so
everything stays exact.
"""

from __future__ import annotations

import numpy as np

_FIELD_CACHE = {}

# table-based fields are capped well below the 2^16 hard bound; nothing at
# desk scale needs more
_TABLE_CAP = 1024
_ORDER_CAP = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def GF(p: int, r: int = 1) -> "_Field":
    key = (p, r)
    f = _FIELD_CACHE.get(key)
    if f is None:
        f = _Field(p, r)
        _FIELD_CACHE[key] = f
    return f


class _Field:
    def __init__(self, p: int, r: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if r < 1:
            raise ValueError("extension degree must be >= 1")
        if p ** r > _ORDER_CAP:
            raise ValueError(f"field order {p}^{r} exceeds the 2^16 bound")
        self.p = p
        self.r = r
        self.order = p ** r
        if r == 1:
            self.modulus = (0, 1)  # placeholder; unused
        else:
            if self.order > _TABLE_CAP:
                raise ValueError(
                    f"extension field of order {self.order} is beyond the table cap")
            self.modulus = _smallest_irreducible(p, r)
            self._build_tables()

    # -- scalar ops on codes -------------------------------------------------

    def add_codes(self, a, b):
        if self.r == 1:
            return (a + b) % self.p
        return int(self._add[a, b])

    def sub_codes(self, a, b):
        return self.add_codes(a, self.neg_code(b))

    def neg_code(self, a):
        if self.r == 1:
            return (-a) % self.p
        return int(self._neg[a])

    def mul_codes(self, a, b):
        if self.r == 1:
            return (a * b) % self.p
        return int(self._mul[a, b])

    def inv_code(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.r == 1:
            return pow(a, -1, self.p)
        return int(self._inv[a])

    def pow_code(self, a, n: int):
        if n < 0:
            return self.pow_code(self.inv_code(a), -n)
        out, base = 1, a
        while n:
            if n & 1:
                out = self.mul_codes(out, base)
            base = self.mul_codes(base, base)
            n >>= 1
        return out

    def embed_prime(self, v: int) -> int:
        return v % self.p

    def elements(self):
        return range(self.order)

    def __call__(self, code: int) -> "FFElem":
        return FFElem(self, code % self.order if self.r == 1 else code)

    def __eq__(self, other):
        return isinstance(other, _Field) and (self.p, self.r) == (other.p, other.r)

    def __hash__(self):
        return hash((self.p, self.r))

    def __repr__(self):
        if self.r == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.r})"

    # -- tables ---------------------------------------------------------------

    def _build_tables(self):
        p, r, q = self.p, self.r, self.order
        digits = np.zeros((q, r), dtype=np.int64)
        codes = np.arange(q)
        for i in range(r):
            digits[:, i] = (codes // p ** i) % p
        self._digits = digits
        add = np.zeros((q, q), dtype=np.int64)
        d = (digits[:, None, :] + digits[None, :, :]) % p
        for i in range(r):
            add += d[:, :, i] * p ** i
        self._add = add
        self._neg = add[0].copy()  # placeholder, fixed below
        negd = (-digits) % p
        neg = np.zeros(q, dtype=np.int64)
        for i in range(r):
            neg += negd[:, i] * p ** i
        self._neg = neg
        # multiplication via polynomial convolution + reduction
        red = _power_reductions(self.modulus, p, r)
        mul = np.zeros((q, q), dtype=np.int64)
        conv = np.zeros((q, q, 2 * r - 1), dtype=np.int64)
        for i in range(r):
            for j in range(r):
                conv[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
        outd = np.zeros((q, q, r), dtype=np.int64)
        for k in range(2 * r - 1):
            for t in range(r):
                if red[k][t]:
                    outd[:, :, t] += conv[:, :, k] * red[k][t]
        outd %= p
        for t in range(r):
            mul += outd[:, :, t] * p ** t
        self._mul = mul
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            if inv[a]:
                continue
            b = self.pow_code(a, q - 2)
            inv[a] = b
            inv[b] = a
        self._inv = inv

    # -- vectorised elementwise ops --------------------------------------------

    def vadd(self, x, y):
        if self.r == 1:
            return (x + y) % self.p
        return self._add[x, y]

    def vneg(self, x):
        if self.r == 1:
            return (-x) % self.p
        return self._neg[x]

    def vsub(self, x, y):
        return self.vadd(x, self.vneg(y))

    def vmul(self, x, y):
        if self.r == 1:
            return (x * y) % self.p
        return self._mul[x, y]

    # -- matrices ----------------------------------------------------------------

    def zeros(self, *shape):
        return np.zeros(shape, dtype=np.int64)

    def identity(self, n):
        return np.eye(n, dtype=np.int64)

    def mat_from_rows(self, rows):
        return np.array(rows, dtype=np.int64)

    def mat_mul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.r == 1:
            return (A @ B) % self.p
        p, r = self.p, self.r
        red = _power_reductions(self.modulus, p, r)
        Ad = [(A // p ** i) % p for i in range(r)]
        Bd = [(B // p ** j) % p for j in range(r)]
        outd = [np.zeros((A.shape[0], B.shape[1]), dtype=np.int64) for _ in range(r)]
        for i in range(r):
            for j in range(r):
                P = Ad[i] @ Bd[j]
                for t in range(r):
                    c = red[i + j][t]
                    if c:
                        outd[t] += c * P
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for t in range(r):
            out += (outd[t] % p) * p ** t
        return out

    def mat_pow(self, A, n: int):
        out = self.identity(A.shape[0])
        base = A
        while n:
            if n & 1:
                out = self.mat_mul(out, base)
            base = self.mat_mul(base, base)
            n >>= 1
        return out

    def rref(self, A):
        """Reduced row echelon form; returns (R, pivot column list)."""
        R = np.array(A, dtype=np.int64)
        m, n = R.shape
        pivots = []
        row = 0
        for col in range(n):
            if row >= m:
                break
            piv = None
            for i in range(row, m):
                if R[i, col]:
                    piv = i
                    break
            if piv is None:
                continue
            if piv != row:
                R[[row, piv]] = R[[piv, row]]
            inv = self.inv_code(int(R[row, col]))
            R[row] = self.vmul(R[row], inv)
            mask = R[:, col] != 0
            mask[row] = False
            if mask.any():
                factors = R[mask, col]
                R[mask] = self.vsub(R[mask], self.vmul(factors[:, None], R[row][None, :]))
            pivots.append(col)
            row += 1
        return R[:row], pivots

    def rank(self, A):
        _, piv = self.rref(A)
        return len(piv)

    def nullspace(self, A):
        """Rows form a basis of the right nullspace {v : A v = 0}."""
        A = np.asarray(A, dtype=np.int64)
        m, n = A.shape
        R, pivots = self.rref(A)
        free = [j for j in range(n) if j not in pivots]
        basis = np.zeros((len(free), n), dtype=np.int64)
        for bi, j in enumerate(free):
            basis[bi, j] = 1
            for ri, pc in enumerate(pivots):
                basis[bi, pc] = self.neg_code(int(R[ri, j]))
        return basis

    def mat_inv(self, A):
        A = np.asarray(A, dtype=np.int64)
        n = A.shape[0]
        aug = np.concatenate([A, self.identity(n)], axis=1)
        R, piv = self.rref(aug)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return R[:, n:]

    def solve(self, A, b):
        """One solution x of A x = b, or None."""
        A = np.asarray(A, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        n = A.shape[1]
        aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
        R, piv = self.rref(aug)
        if n in piv:
            return None
        x = np.zeros(n, dtype=np.int64)
        for ri, pc in enumerate(piv):
            x[pc] = R[ri, n]
        return x

    def charpoly(self, A):
        """Characteristic polynomial of A as a list of codes, low degree first,
        monic; computed via Hessenberg reduction."""
        A = np.array(A, dtype=np.int64)
        n = A.shape[0]
        H = A
        for col in range(n - 2):
            piv = None
            for i in range(col + 1, n):
                if H[i, col]:
                    piv = i
                    break
            if piv is None:
                continue
            if piv != col + 1:
                H[[col + 1, piv]] = H[[piv, col + 1]]
                H[:, [col + 1, piv]] = H[:, [piv, col + 1]]
            inv = self.inv_code(int(H[col + 1, col]))
            for i in range(col + 2, n):
                if H[i, col]:
                    f = self.mul_codes(int(H[i, col]), inv)
                    H[i] = self.vsub(H[i], self.vmul(f, H[col + 1]))
                    H[:, col + 1] = self.vadd(H[:, col + 1], self.vmul(f, H[:, i]))
        # charpoly of Hessenberg matrix by the standard recurrence
        polys = [[1]]  # p_0 = 1
        for k in range(1, n + 1):
            # p_k(x) = (x - H[k-1,k-1]) p_{k-1}(x)
            #          - sum_{i<k-1} H[i,k-1] * (prod_{j=i+1..k-1} H[j,j-1]) p_i(x)
            pk = gfp_mul(self, [self.neg_code(int(H[k - 1, k - 1])), 1], polys[k - 1])
            prod = 1
            for i in range(k - 2, -1, -1):
                prod = self.mul_codes(prod, int(H[i + 1, i]))
                if prod == 0:
                    break
                coef = self.mul_codes(int(H[i, k - 1]), prod)
                if coef:
                    term = gfp_scale(self, coef, polys[i])
                    pk = gfp_sub(self, pk, term)
            polys.append(pk)
        return polys[n]

    def minpoly_of_vector(self, A, v):
        """Minimal polynomial of A on the Krylov space of v (monic, list of
        codes, low degree first)."""
        n = A.shape[0]
        basis = np.zeros((0, n), dtype=np.int64)
        pivots = []
        krylov = []
        w = np.array(v, dtype=np.int64)
        while True:
            red, _ = _reduce_against(self, basis, pivots, w)
            if not red.any():
                if not krylov:
                    return [1]
                # w depends on the earlier Krylov vectors; solve for the
                # coefficients with respect to v, Av, ..., A^{k-1} v
                K = np.array(krylov).T  # columns are the Krylov vectors
                coeffs = self.solve(K, w)
                return [self.neg_code(int(c)) for c in coeffs] + [1]
            krylov.append(np.array(w))
            basis, pivots = _echelon_insert(self, basis, pivots, red)
            w = self.mat_mul(A, w.reshape(-1, 1)).ravel()


class FFElem:
    """Scalar finite field element: a field together with a code."""

    __slots__ = ("field", "code")

    def __init__(self, field: _Field, code: int):
        self.field = field
        self.code = int(code)

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.field != self.field:
                raise ValueError("elements from different finite fields")
            return other
        if isinstance(other, int):
            return FFElem(self.field, self.field.embed_prime(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.add_codes(self.code, o.code))

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.field, self.field.neg_code(self.code))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.mul_codes(self.code, o.code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.mul_codes(self.code, self.field.inv_code(o.code)))

    def __pow__(self, n):
        return FFElem(self.field, self.field.pow_code(self.code, n))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.code == o.code

    def __hash__(self):
        return hash((self.field.p, self.field.r, self.code))

    def is_zero(self):
        return self.code == 0

    def __repr__(self):
        return f"FFElem({self.field!r}, {self.code})"


# ---------------------------------------------------------------------------
# irreducible modulus search

def _smallest_irreducible(p: int, r: int):
    """Lexicographically smallest monic irreducible of degree r over F_p,
    ordered by the coefficient tuple (c_0, ..., c_{r-1})."""
    def candidates(d):
        def rec(i, cur):
            if i == d:
                yield tuple(cur) + (1,)
                return
            for v in range(p):
                yield from rec(i + 1, cur + [v])
        yield from rec(0, [])

    def is_irred(f):
        d = len(f) - 1
        for dd in range(1, d // 2 + 1):
            for g in candidates(dd):
                if _poly_divides_modp(g, f, p):
                    return False
        return True

    for f in candidates(r):
        if f[0] != 0 and is_irred(f):
            return f
    raise AssertionError("no irreducible polynomial found")


def _poly_divides_modp(f, g, p):
    g = [x % p for x in g]
    while len(g) >= len(f):
        if g[-1] == 0:
            g.pop()
            continue
        coef = g[-1]
        shift = len(g) - len(f)
        for i, fc in enumerate(f):
            g[shift + i] = (g[shift + i] - coef * fc) % p
        while g and g[-1] == 0:
            g.pop()
    return not g


def _power_reductions(modulus, p, r):
    """Coordinate vectors of x^k mod modulus for k = 0 .. 2r-2."""
    red = []
    for k in range(r):
        v = [0] * r
        v[k] = 1
        red.append(v)
    for k in range(r, 2 * r - 1):
        prev = red[-1]
        v = [0] + prev[:-1]
        top = prev[-1]
        for t in range(r):
            v[t] = (v[t] - top * modulus[t]) % p
        red.append(v)
    return red


# ---------------------------------------------------------------------------
# echelonised vector collections (spinning support)

def _echelon_insert(F, basis, pivots, v):
    """Insert an already-reduced nonzero vector into an echelonised basis."""
    piv = int(np.nonzero(v)[0][0])
    v = F.vmul(F.inv_code(int(v[piv])), v)
    # back-reduce existing rows
    if basis.shape[0]:
        col = basis[:, piv]
        mask = col != 0
        if mask.any():
            basis = basis.copy()
            basis[mask] = F.vsub(basis[mask], F.vmul(col[mask][:, None], v[None, :]))
    idx = 0
    while idx < len(pivots) and pivots[idx] < piv:
        idx += 1
    basis = np.insert(basis, idx, v, axis=0)
    pivots = pivots[:idx] + [piv] + pivots[idx:]
    return basis, pivots


def _reduce_against(F, basis, pivots, v, vecs=None):
    """Reduce v against an echelonised basis; returns (residue, coeffs) where
    coeffs are the coefficients with respect to the stored original vecs (only
    meaningful when the residue is zero and vecs were tracked via Krylov)."""
    w = np.array(v, dtype=np.int64)
    coeffs = []
    for i, piv in enumerate(pivots):
        c = int(w[piv])
        coeffs.append(c)
        if c:
            w = F.vsub(w, F.vmul(c, basis[i]))
    return w, coeffs


def spin(F, seeds, operators, dim):
    """Smallest operator-invariant subspace containing the seeds.

    Operators act on column vectors; the returned matrix has basis rows in
    echelon form.
    """
    basis = np.zeros((0, dim), dtype=np.int64)
    pivots = []
    queue = []
    for s in seeds:
        w, _ = _reduce_against(F, basis, pivots, np.asarray(s, dtype=np.int64))
        if w.any():
            basis, pivots = _echelon_insert(F, basis, pivots, w)
            queue.append(np.array(w))
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for op in operators:
            img = F.mat_mul(op, v.reshape(-1, 1)).ravel()
            w, _ = _reduce_against(F, basis, pivots, img)
            if w.any():
                basis, pivots = _echelon_insert(F, basis, pivots, w)
                queue.append(np.array(w))
                if basis.shape[0] == dim:
                    return basis
    return basis


# ---------------------------------------------------------------------------
# univariate polynomials over a finite field (lists of codes, low degree first)

def gfp_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def gfp_add(F, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out.append(F.add_codes(a, b))
    return gfp_trim(out)


def gfp_sub(F, f, g):
    return gfp_add(F, f, [F.neg_code(x) for x in g])


def gfp_scale(F, c, f):
    return gfp_trim([F.mul_codes(c, x) for x in f])


def gfp_mul(F, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = F.add_codes(out[i + j], F.mul_codes(a, b))
    return gfp_trim(out)


def gfp_divmod(F, f, g):
    f = list(f)
    g = gfp_trim(list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = F.inv_code(g[-1])
    q = [0] * max(0, len(f) - len(g) + 1)
    while len(gfp_trim(f)) >= len(g):
        coef = F.mul_codes(f[-1], inv_lead)
        shift = len(f) - len(g)
        q[shift] = coef
        for i, gc in enumerate(g):
            f[shift + i] = F.sub_codes(f[shift + i], F.mul_codes(coef, gc))
        gfp_trim(f)
    return gfp_trim(q), gfp_trim(f)


def gfp_gcd(F, f, g):
    f, g = gfp_trim(list(f)), gfp_trim(list(g))
    while g:
        _, r = gfp_divmod(F, f, g)
        f, g = g, r
    if f:
        f = gfp_scale(F, F.inv_code(f[-1]), f)
    return f


def gfp_monic(F, f):
    f = gfp_trim(list(f))
    if f and f[-1] != 1:
        f = gfp_scale(F, F.inv_code(f[-1]), f)
    return f


def gfp_pow_mod(F, f, n, mod):
    out = [1]
    base = gfp_divmod(F, f, mod)[1]
    while n:
        if n & 1:
            out = gfp_divmod(F, gfp_mul(F, out, base), mod)[1]
        base = gfp_divmod(F, gfp_mul(F, base, base), mod)[1]
        n >>= 1
    return out


def gfp_eval_matrix(F, f, A):
    """Evaluate a polynomial at a square matrix (Horner)."""
    n = A.shape[0]
    out = F.zeros(n, n)
    diag = np.arange(n)
    for c in reversed(f):
        out = F.mat_mul(out, A)
        if c:
            out[diag, diag] = F.vadd(out[diag, diag], c)
    return out


def gfp_derivative(F, f):
    out = []
    for i in range(1, len(f)):
        out.append(F.mul_codes(i % F.p, f[i]))
    return gfp_trim(out)


def gfp_squarefree_factors(F, f):
    """Squarefree decomposition: list of (factor, multiplicity)."""
    f = gfp_monic(F, f)
    out = []
    mult = 1
    while len(f) > 1:
        d = gfp_derivative(F, f)
        if not d:
            # f = g(x^p); take p-th roots of coefficients
            root = []
            q = F.order
            for i in range(0, len(f), F.p):
                c = f[i]
                root.append(F.pow_code(c, q // F.p))
            f = root
            mult *= F.p
            continue
        g = gfp_gcd(F, f, d)
        w, _ = gfp_divmod(F, f, g)
        m = 1
        while len(w) > 1:
            y = gfp_gcd(F, w, g)
            z, _ = gfp_divmod(F, w, y)
            if len(z) > 1:
                out.append((z, m * mult))
            g, _ = gfp_divmod(F, g, y)
            w = y
            m += 1
        f = g
    return out


def gfp_distinct_degree(F, f):
    """Distinct-degree decomposition of a squarefree monic f:
    list of (product of irreducibles of degree d, d)."""
    out = []
    q = F.order
    x = [0, 1]
    h = list(x)
    f = gfp_monic(F, f)
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = gfp_pow_mod(F, h, q, f)
        g = gfp_gcd(F, gfp_sub(F, h, x), f)
        if len(g) > 1:
            out.append((g, d))
            f, _ = gfp_divmod(F, f, g)
            h = gfp_divmod(F, h, f)[1]
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def gfp_equal_degree(F, f, d, rng):
    """Cantor-Zassenhaus split of a squarefree product of degree-d
    irreducibles into the irreducible list."""
    n = len(f) - 1
    if n == d:
        return [f]
    q = F.order
    while True:
        a = [rng.randrange(q) for _ in range(n)]
        a = gfp_trim(a)
        if len(a) <= 1:
            continue
        g = gfp_gcd(F, a, f)
        if 1 < len(g) < len(f):
            pass
        elif F.p == 2:
            # trace map sum a^(2^i) for i < d*r
            t = list(a)
            acc = list(a)
            for _ in range(d * F.r - 1):
                t = gfp_divmod(F, gfp_mul(F, t, t), f)[1]
                acc = gfp_add(F, acc, t)
            g = gfp_gcd(F, acc, f)
        else:
            e = (q ** d - 1) // 2
            b = gfp_pow_mod(F, a, e, f)
            g = gfp_gcd(F, gfp_sub(F, b, [1]), f)
        if 1 < len(g) < len(f):
            h, _ = gfp_divmod(F, f, g)
            return gfp_equal_degree(F, g, d, rng) + gfp_equal_degree(F, h, d, rng)


def gfp_factor(F, f, rng):
    """Full factorisation: list of (monic irreducible, multiplicity)."""
    out = []
    for sf, mult in gfp_squarefree_factors(F, f):
        for prod, d in gfp_distinct_degree(F, sf):
            for irr in gfp_equal_degree(F, prod, d, rng):
                out.append((gfp_monic(F, irr), mult))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def gfp_is_irreducible(F, f):
    f = gfp_monic(F, f)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    q = F.order
    x = [0, 1]
    h = gfp_pow_mod(F, x, q ** n, f)
    if gfp_trim(gfp_sub(F, h, x)):
        return False
    # n-th iterate fixes; check no smaller period over maximal subfields
    for pr in _prime_factors(n):
        h = gfp_pow_mod(F, x, q ** (n // pr), f)
        if len(gfp_gcd(F, gfp_sub(F, h, x), f)) > 1:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
