"""Exact arithmetic in F_{p^m} represented as F_p[X]/(f).

Elements are plain ints: the base-p digits of the int are the coefficients
of the residue polynomial, X^0 in the least significant digit.  For p = 2
this is the usual bit packing.  A :class:`FieldCtx` owns the modulus and
provides every operation; it is immutable after construction and safe to
share between threads (internal lookup tables are built lazily but
idempotently).

Small fields (size <= table_limit) get discrete exp/log tables on first
multiplicative use, after which mul/inv/pow/frobenius are O(1) lookups.
Larger fields fall back to direct polynomial arithmetic: bit tricks for
p = 2, digit convolution otherwise.
"""

import re

from .errors import (
    DegreeMismatchError,
    DivisionByZeroError,
    NotADivisorError,
    NotPrimeError,
    ParseError,
    ReducibleError,
)

__all__ = [
    "FieldCtx",
    "make_field",
    "find_irreducible",
    "is_irreducible",
    "factor_xn_minus_1",
    "format_poly",
    "parse_poly",
]

DEFAULT_TABLE_LIMIT = 1 << 17


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n):
    """Distinct prime factors of n, ascending."""
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


# ----------------------------------------------------------------------
# Dense polynomial arithmetic over F_p (coefficient tuples, ascending,
# trailing zeros stripped).  Used for modulus selection, irreducibility
# testing, and factoring X^n - 1; field elements never pass through here.
# ----------------------------------------------------------------------

def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(f, g, p):
    n = max(len(f), len(g))
    return _ptrim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p
                   for i in range(n)])


def _psub(f, g, p):
    n = max(len(f), len(g))
    return _ptrim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p
                   for i in range(n)])


def _pmul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def _pdivmod(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    q = [0] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and any(f):
        if f[-1] == 0:
            f.pop()
            continue
        shift = len(f) - 1 - dg
        c = (f[-1] * inv_lead) % p
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        f.pop()
    return _ptrim(q), _ptrim(f)


def _pmod(f, g, p):
    return _pdivmod(f, g, p)[1]


def _pgcd(f, g, p):
    while g:
        f, g = g, _pmod(f, g, p)
    if f:
        inv_lead = pow(f[-1], p - 2, p)
        f = _ptrim([(c * inv_lead) % p for c in f])
    return f


def _ppowmod(f, e, mod, p):
    result = (1,)
    f = _pmod(f, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, f, p), mod, p)
        f = _pmod(_pmul(f, f, p), mod, p)
        e >>= 1
    return result


def is_irreducible(p, coeffs):
    """Exact irreducibility test for a polynomial over F_p.

    Uses the Frobenius fixed-point characterisation: f of degree m is
    irreducible iff X^(p^m) = X (mod f) and gcd(X^(p^(m/l)) - X, f) = 1
    for every prime l dividing m.
    """
    f = _ptrim(coeffs)
    m = len(f) - 1
    if m <= 0:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    x = (0, 1)
    # frob[i] = X^(p^i) mod f, computed by iterated p-th powers
    t = x
    checkpoints = {m // l for l in _prime_factors(m)}
    for i in range(1, m + 1):
        t = _ppowmod(t, p, f, p)
        if i in checkpoints:
            if _pgcd(_psub(t, x, p), f, p) != (1,):
                return False
        if i == m:
            return t == x
    return False


def find_irreducible(p, m):
    """Smallest monic irreducible of degree m over F_p, as a coefficient tuple.

    Candidates are ordered by the base-p integer value of the coefficient
    vector (X^0 least significant), so the choice is deterministic.
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if m < 1:
        raise DegreeMismatchError("degree must be >= 1")
    for code in range(p ** m):
        coeffs = _digits_of(code, p, m) + (1,)
        if is_irreducible(p, coeffs):
            return coeffs
    raise AssertionError("no irreducible polynomial found")  # unreachable


def _digits_of(code, p, m):
    out = []
    for _ in range(m):
        code, r = divmod(code, p)
        out.append(r)
    return tuple(out)


def _code_of(digits, p):
    code = 0
    for d in reversed(digits):
        code = code * p + d
    return code


# ----------------------------------------------------------------------
# Polynomial text formats: "c0 c1 ... cm" coefficient strings and the
# pretty form "1 + X^2 + X^5" (with "2*X^3" style terms for p > 2).
# ----------------------------------------------------------------------

_TERM_RE = re.compile(
    r"^\s*(?:(\d+)\s*\*?\s*)?(?:([Xx])(?:\^(\d+))?)?\s*$")


def parse_poly(text, p):
    """Parse either text format into an ascending coefficient tuple mod p."""
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial text")
    if "X" not in text and "x" not in text:
        try:
            digits = [int(tok) for tok in text.split()]
        except ValueError as exc:
            raise ParseError(f"bad coefficient string {text!r}") from exc
        return _ptrim([d % p for d in digits])
    coeffs = {}
    for raw in text.replace("-", "+-").split("+"):
        term = raw.strip()
        if not term:
            continue
        sign = 1
        if term.startswith("-"):
            sign = -1
            term = term[1:]
        match = _TERM_RE.match(term)
        if not match or (match.group(1) is None and match.group(2) is None):
            raise ParseError(f"bad term {raw!r} in {text!r}")
        coeff = int(match.group(1)) if match.group(1) else 1
        if match.group(2):
            exp = int(match.group(3)) if match.group(3) else 1
        else:
            exp = 0
        coeffs[exp] = (coeffs.get(exp, 0) + sign * coeff) % p
    if not coeffs:
        return ()
    out = [0] * (max(coeffs) + 1)
    for exp, c in coeffs.items():
        out[exp] = c
    return _ptrim(out)


def format_poly(coeffs):
    """Pretty form, ascending powers: "1 + X^2 + X^5", "2 + 2*X^3", "0"."""
    terms = []
    for exp, c in enumerate(coeffs):
        if c == 0:
            continue
        if exp == 0:
            terms.append(str(c))
        else:
            x = "X" if exp == 1 else f"X^{exp}"
            terms.append(x if c == 1 else f"{c}*{x}")
    return " + ".join(terms) if terms else "0"


class FieldCtx:
    """The field F_{p^m} = F_p[X]/(modulus), with base order q = p.

    All operations take and return int-coded elements.  The context also
    carries the sum-freedom parameters: n = m is the extension degree over
    the base field F_q (only prime q is supported).
    """

    def __init__(self, p, m, modulus=None, table_limit=DEFAULT_TABLE_LIMIT):
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if m < 1:
            raise DegreeMismatchError("extension degree must be >= 1")
        if modulus is None:
            coeffs = find_irreducible(p, m)
        else:
            if isinstance(modulus, str):
                coeffs = parse_poly(modulus, p)
            else:
                coeffs = _ptrim([c % p for c in modulus])
            if len(coeffs) != m + 1 or coeffs[-1] != 1:
                raise DegreeMismatchError(
                    f"modulus must be monic of degree {m}, got {format_poly(coeffs)}")
            if not is_irreducible(p, coeffs):
                raise ReducibleError(f"{format_poly(coeffs)} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.q = p          # base order; v1 restricts q to the prime p
        self.n = m          # extension degree over F_q
        self.modulus = coeffs
        self.size = p ** m
        self.zero = 0
        self.one = 1 % self.size
        self._table_limit = table_limit
        self._pow_p = tuple(p ** i for i in range(m + 1))
        self._modint = _code_of(coeffs, p)
        if p == 2:
            self._topbit = 1 << m
        else:
            # reduction rows: digits of X^(m+t) mod f for t = 0 .. m-2
            base = tuple((-c) % p for c in coeffs[:m])
            rows = [base]
            for _ in range(m - 2):
                prev = rows[-1]
                shifted = (0,) + prev[:-1]
                top = prev[-1]
                if top:
                    shifted = tuple((shifted[i] + top * base[i]) % p for i in range(m))
                rows.append(shifted)
            self._red_rows = rows
        self._exp = None
        self._log = None
        self._frob = None

    # -- representation ------------------------------------------------

    def coeffs(self, a):
        """Coefficient tuple of an element, ascending powers, length m."""
        return _digits_of(a, self.p, self.m)

    def from_coeffs(self, digits):
        digits = list(digits)
        if len(digits) > self.m:
            raise DegreeMismatchError(f"at most {self.m} coefficients expected")
        digits += [0] * (self.m - len(digits))
        return _code_of([d % self.p for d in digits], self.p)

    def parse_element(self, text):
        coeffs = parse_poly(text, self.p)
        if len(coeffs) > self.m:
            raise ParseError(f"element degree {len(coeffs) - 1} >= field degree {self.m}")
        return self.from_coeffs(coeffs)

    def format_element(self, a):
        return format_poly(self.coeffs(a))

    def elements(self):
        return range(self.size)

    def random_element(self, rng):
        return rng.randrange(self.size)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.size)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={format_poly(self.modulus)!r})"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx)
                and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus))

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    # -- additive structure ---------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        da, db = _digits_of(a, p, self.m), _digits_of(b, p, self.m)
        return _code_of([(x + y) % p for x, y in zip(da, db)], p)

    def sub(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        da, db = _digits_of(a, p, self.m), _digits_of(b, p, self.m)
        return _code_of([(x - y) % p for x, y in zip(da, db)], p)

    def neg(self, a):
        if self.p == 2:
            return a
        p = self.p
        return _code_of([(-x) % p for x in _digits_of(a, p, self.m)], p)

    def scale(self, c, a):
        """Multiply by a base-field scalar c in [0, p)."""
        if self.p == 2:
            return a if c else 0
        p = self.p
        return _code_of([(c * x) % p for x in _digits_of(a, p, self.m)], p)

    # -- multiplicative structure ----------------------------------------

    def _mul_raw(self, a, b):
        if self.p == 2:
            res = 0
            top = self._topbit
            mod = self._modint
            while b:
                if b & 1:
                    res ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= mod
            return res
        p, m = self.p, self.m
        da, db = _digits_of(a, p, m), _digits_of(b, p, m)
        out = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    out[i + j] = (out[i + j] + x * y) % p
        for t in range(2 * m - 2, m - 1, -1):
            c = out[t]
            if c:
                row = self._red_rows[t - m]
                for j in range(m):
                    if row[j]:
                        out[j] = (out[j] + c * row[j]) % p
        return _code_of(out[:m], p)

    def _build_tables(self):
        size = self.size
        order = size - 1
        primes = _prime_factors(order)
        g = 1 if order == 1 else None
        for cand in range(2, size):
            if all(self._pow_raw(cand, order // l) != 1 for l in primes):
                g = cand
                break
        assert g is not None
        exp = [0] * order
        log = [0] * size
        cur = 1
        for i in range(order):
            exp[i] = cur
            log[cur] = i
            cur = self._mul_raw(cur, g)
        q = self.q
        frob = [0] * size
        for a in range(1, size):
            frob[a] = exp[(log[a] * q) % order]
        self._exp, self._log, self._frob = exp, log, frob

    def _tables(self):
        if self._exp is None and self.size <= self._table_limit:
            self._build_tables()
        return self._exp is not None

    def _pow_raw(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._mul_raw(result, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return result

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._tables():
            s = self._log[a] + self._log[b]
            order = self.size - 1
            if s >= order:
                s -= order
            return self._exp[s]
        return self._mul_raw(a, b)

    def square(self, a):
        return self.mul(a, a)

    def inv(self, a):
        if a == 0:
            raise DivisionByZeroError("inverse of 0")
        if self._tables():
            order = self.size - 1
            return self._exp[(order - self._log[a]) % order]
        return self._pow_raw(a, self.size - 2)

    def inv0(self, a):
        """The 0 -> 0 extension of inversion underlying the inverse-power maps."""
        return 0 if a == 0 else self.inv(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            raise ValueError("exponent must be >= 0")
        if a == 0:
            return 0 if e else 1
        order = self.size - 1
        e %= order
        if self._tables():
            return self._exp[(self._log[a] * e) % order]
        return self._pow_raw(a, e)

    def inv0_many(self, values):
        """Batch 0 -> 0 inversion via a product tree (one real inversion)."""
        idx = [i for i, v in enumerate(values) if v]
        out = [0] * len(values)
        if not idx:
            return out
        prefix = [0] * len(idx)
        acc = 1
        for j, i in enumerate(idx):
            acc = self.mul(acc, values[i])
            prefix[j] = acc
        acc = self.inv(acc)
        for j in range(len(idx) - 1, 0, -1):
            out[idx[j]] = self.mul(acc, prefix[j - 1])
            acc = self.mul(acc, values[idx[j]])
        out[idx[0]] = acc
        return out

    # -- Frobenius, trace, subfields --------------------------------------

    def frobenius(self, a, i=1):
        """a^(q^i) for i >= 0."""
        if i < 0:
            raise ValueError("Frobenius power must be >= 0")
        i %= self.n
        if i == 0 or a == 0:
            return a
        if self._tables():
            order = self.size - 1
            return self._exp[(self._log[a] * pow(self.q, i, order)) % order]
        for _ in range(i):
            a = self._pow_raw(a, self.q)
        return a

    def trace(self, a, sub_degree=1):
        """Trace from F_{q^n} onto the subfield F_{q^sub_degree}."""
        d = sub_degree
        if d <= 0 or self.n % d != 0:
            raise NotADivisorError(f"{d} does not divide {self.n}")
        total = 0
        t = a
        for _ in range(self.n // d):
            total = self.add(total, t)
            t = self.frobenius(t, d)
        assert t == a
        return total

    def in_subfield(self, a, d):
        """True iff a lies in F_{q^d} (for d dividing n)."""
        if d <= 0 or self.n % d != 0:
            raise NotADivisorError(f"{d} does not divide {self.n}")
        return self.frobenius(a, d) == a

    def subfield_basis(self, d):
        """An F_q-basis (d elements) of the subfield F_{q^d} inside this field."""
        if d <= 0 or self.n % d != 0:
            raise NotADivisorError(f"{d} does not divide {self.n}")
        # kernel of the F_q-linear map x -> x^(q^d) - x
        cols = []
        for j in range(self.n):
            bj = self._pow_p[j]
            img = self.sub(self.frobenius(bj, d), bj)
            cols.append(self.coeffs(img))
        rows = [[cols[j][i] for j in range(self.n)] for i in range(self.n)]
        kernel = kernel_mod_p(rows, self.p)
        assert len(kernel) == d
        return [self.from_coeffs(v) for v in kernel]


def kernel_mod_p(rows, p):
    """Basis of the right kernel of a matrix over F_p (rows of equal length)."""
    if not rows:
        return []
    ncols = len(rows[0])
    mat = [list(r) for r in rows]
    pivots = {}
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] % p), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % p:
                f = mat[i][c] % p
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots[c] = r
        r += 1
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for c, pr in pivots.items():
            v[c] = (-mat[pr][fc]) % p
        basis.append(v)
    return basis


def solve_mod_p(rows, rhs, p):
    """One solution x of (rows) x = rhs over F_p, or None if inconsistent."""
    if not rows:
        return [] if not any(v % p for v in rhs) else None
    ncols = len(rows[0])
    mat = [list(r) + [b % p] for r, b in zip(rows, rhs)]
    pivots = {}
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] % p), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % p:
                f = mat[i][c] % p
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots[c] = r
        r += 1
    for i in range(r, len(mat)):
        if mat[i][-1] % p:
            return None
    x = [0] * ncols
    for c, pr in pivots.items():
        x[c] = mat[pr][-1]
    return x


_FIELD_CACHE = {}


def make_field(p, m, modulus=None, table_limit=DEFAULT_TABLE_LIMIT):
    """Build (or fetch the cached) F_{p^m} context.

    When modulus is omitted the deterministic smallest irreducible is
    selected, so identical arguments always yield the identical field.
    """
    if modulus is None:
        key_mod = None
    elif isinstance(modulus, str):
        key_mod = parse_poly(modulus, p) if is_prime(p) else modulus
    else:
        key_mod = _ptrim([c % p for c in modulus])
    key = (p, m, key_mod, table_limit)
    ctx = _FIELD_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(p, m, modulus, table_limit)
        _FIELD_CACHE[key] = ctx
    return ctx


# ----------------------------------------------------------------------
# Factorization of X^n - 1 over a prime field (Berlekamp with full
# gcd splitting; deterministic for the small q used here).
# ----------------------------------------------------------------------

def _berlekamp_split(f, p):
    """One irreducible factor peeled off a squarefree monic f over F_p."""
    d = len(f) - 1
    if d <= 1:
        return [f]
    # Berlekamp matrix Q: row i = coefficients of X^(p*i) mod f
    rows = []
    xp = _ppowmod((0, 1), p, f, p)
    cur = (1,)
    for i in range(d):
        padded = list(cur) + [0] * (d - len(cur))
        rows.append(padded)
        cur = _pmod(_pmul(cur, xp, p), f, p)
    # kernel of (Q - I)^T acting on coefficient vectors
    mat = [[(rows[j][i] - (1 if i == j else 0)) % p for j in range(d)] for i in range(d)]
    kernel = kernel_mod_p(mat, p)
    if len(kernel) == 1:
        return [f]
    h = next(_ptrim(v) for v in kernel if len(_ptrim(v)) > 1)
    factors = []
    for c in range(p):
        g = _pgcd(_psub(h, (c,), p), f, p)
        if len(g) > 1 and len(g) < len(f):
            factors.extend(_berlekamp_split(g, p))
    return factors


def factor_xn_minus_1(q, n):
    """Complete factorization of X^n - 1 over F_q (q prime).

    Returns a canonically sorted list of (coefficient tuple, multiplicity)
    pairs; the product of the factors with multiplicities is X^n - 1.
    """
    if not is_prime(q):
        raise NotPrimeError(f"{q} is not prime")
    if n < 1:
        raise ValueError("n must be >= 1")
    mult = 1
    n1 = n
    while n1 % q == 0:
        n1 //= q
        mult *= q
    f = _ptrim([(-1) % q] + [0] * (n1 - 1) + [1])
    irreducibles = _berlekamp_split(f, q)
    irreducibles.sort(key=lambda c: (len(c), _code_of(c, q)))
    return [(c, mult) for c in irreducibles]
