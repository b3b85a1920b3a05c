"""Moore determinants, subspace polynomials, and Carlitz-type power sums.

The k x k Moore matrix of v_1..v_k has entry v_j^(q^i) in row i; its
determinant Delta is nonzero exactly when the v_j are F_q-independent.
The variants Delta_i drop the q^i row from the exponent range q^0..q^k.
The inverse-power sum over a subspace reduces to these determinants,
which is what makes exact witness checking cheap.
"""

from math import comb

from .errors import (
    CtxMismatchError,
    DependentBasisError,
    EmptyBasisError,
    YInSpanError,
)

__all__ = [
    "Basis",
    "QPoly",
    "moore_delta",
    "moore_delta_i",
    "subspace_poly",
    "carlitz_power_sum",
    "inverse_power_span_sum",
    "iter_span",
    "multinomial_mod",
    "field_det",
]


class Basis:
    """An ordered list of elements of a field context.

    Independence is not enforced at construction; it is certified on
    demand by a nonzero Moore determinant.
    """

    __slots__ = ("ctx", "vectors")

    def __init__(self, ctx, vectors):
        vectors = tuple(vectors)
        if not vectors:
            raise EmptyBasisError("basis needs at least one vector")
        if len(vectors) > ctx.n:
            raise ValueError(f"{len(vectors)} vectors in a degree-{ctx.n} extension")
        if any(not 0 <= v < ctx.size for v in vectors):
            raise CtxMismatchError("vector code out of range for this field")
        self.ctx = ctx
        self.vectors = vectors

    @property
    def k(self):
        return len(self.vectors)

    def is_independent(self):
        return moore_delta(self) != 0

    def texts(self):
        return [self.ctx.format_element(v) for v in self.vectors]

    def __repr__(self):
        return f"Basis({self.ctx!r}, {list(self.vectors)!r})"

    def __eq__(self, other):
        return (isinstance(other, Basis)
                and self.ctx == other.ctx and self.vectors == other.vectors)


def field_det(ctx, rows):
    """Determinant of a square matrix of field elements (Gaussian elimination)."""
    mat = [list(r) for r in rows]
    k = len(mat)
    det = ctx.one
    sign = 1
    for c in range(k):
        pivot = next((r for r in range(c, k) if mat[r][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            sign = -sign
        det = ctx.mul(det, mat[c][c])
        inv_p = ctx.inv(mat[c][c])
        for r in range(c + 1, k):
            if mat[r][c]:
                f = ctx.mul(mat[r][c], inv_p)
                mat[r] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(mat[r], mat[c])]
    return det if sign == 1 else ctx.neg(det)


def _moore_rows(ctx, vectors, exponents):
    """Rows [v^(q^e) for v in vectors] for e in the sorted exponent list."""
    rows = []
    cur = list(vectors)
    e = 0
    for target in exponents:
        while e < target:
            cur = [ctx.frobenius(v, 1) for v in cur]
            e += 1
        rows.append(list(cur))
    return rows


def moore_delta(basis):
    """Moore determinant of the basis vectors (row exponents q^0 .. q^(k-1))."""
    ctx, v = basis.ctx, basis.vectors
    return field_det(ctx, _moore_rows(ctx, v, range(len(v))))


def moore_delta_i(i, basis):
    """Moore-type determinant with row exponents {q^0..q^k} minus {q^i}."""
    ctx, v = basis.ctx, basis.vectors
    k = len(v)
    if not 0 <= i <= k:
        raise ValueError(f"row index {i} outside 0..{k}")
    exponents = [e for e in range(k + 1) if e != i]
    return field_det(ctx, _moore_rows(ctx, v, exponents))


def inverse_power_span_sum(basis):
    """sum of 1/u^(q-1) over the nonzero span of the basis, as -Delta_1/Delta_0.

    Requires an independent basis; Delta_0 = Delta^q is then nonzero.
    """
    ctx = basis.ctx
    delta = moore_delta(basis)
    if delta == 0:
        raise DependentBasisError("span sum formula needs an independent basis")
    d1 = moore_delta_i(1, basis)
    return ctx.neg(ctx.div(d1, ctx.frobenius(delta, 1)))


class QPoly:
    """A linearized polynomial sum(a_i X^(q^i)); an F_q-linear map on the field."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    @property
    def qdegree(self):
        return len(self.coeffs) - 1

    def eval(self, x):
        ctx = self.ctx
        total = 0
        t = x
        for a in self.coeffs:
            if a:
                total = ctx.add(total, ctx.mul(a, t))
            t = ctx.frobenius(t, 1)
        return total

    def __repr__(self):
        return f"QPoly({self.ctx!r}, {list(self.coeffs)!r})"


def subspace_poly(basis):
    """The monic q-polynomial prod_{u in span}(X - u), built by the tower recursion
    L' = L^q - L(v)^(q-1) L when the span is extended by v."""
    ctx = basis.ctx
    coeffs = [ctx.one]                       # L(X) = X for the zero subspace
    for v in basis.vectors:
        lv = QPoly(ctx, coeffs).eval(v)
        if lv == 0:
            raise DependentBasisError("vector already in the span")
        c = ctx.pow(lv, ctx.q - 1)
        new = [ctx.neg(ctx.mul(c, coeffs[0]))]
        for i in range(1, len(coeffs)):
            new.append(ctx.sub(ctx.frobenius(coeffs[i - 1], 1), ctx.mul(c, coeffs[i])))
        new.append(ctx.frobenius(coeffs[-1], 1))
        coeffs = new
    return QPoly(ctx, coeffs)


def iter_span(ctx, vectors):
    """Yield sum(a_i v_i) for every coefficient tuple a in F_q^k (odometer order).

    For a dependent list this walks the multiset: each span point appears
    q^(k - rank) times.
    """
    q = ctx.p
    k = len(vectors)
    digits = [0] * k
    x = 0
    yield x
    for _ in range(q ** k - 1):
        i = 0
        while True:
            if digits[i] + 1 < q:
                digits[i] += 1
                x = ctx.add(x, vectors[i])
                break
            digits[i] = 0
            x = ctx.sub(x, ctx.scale(q - 1, vectors[i]))
            i += 1
        yield x


def multinomial_mod(parts, p):
    """multinomial(sum(parts); parts) mod p via Lucas' theorem."""
    total = 0
    result = 1
    for part in parts:
        total += part
        result = (result * _binom_mod(total, part, p)) % p
        if result == 0:
            return 0
    return result


def _binom_mod(n, k, p):
    result = 1
    while n or k:
        nd, n = n % p, n // p
        kd, k = k % p, k // p
        if kd > nd:
            return 0
        result = (result * comb(nd, kd)) % p
    return result


def _compositions_base_q(l, q, slots):
    """All (l_0..l_{slots-1}) with sum(l_i q^i) = l, by bounded DFS on digits."""
    out = []

    def rec(i, rem, acc):
        # acc holds l_{slots-1} .. l_{i+1}; emit ascending l_0 .. l_{slots-1}
        if i == 0:
            out.append(tuple(reversed(acc + [rem])))
            return
        step = q ** i
        for li in range(rem // step + 1):
            acc.append(li)
            rec(i - 1, rem - li * step, acc)
            acc.pop()

    rec(slots - 1, l, [])
    return out


def carlitz_power_sum(basis, y, l):
    """sum over a in F_q^k of 1/(y + a_1 v_1 + ... + a_k v_k)^(l+1), in closed form.

    Evaluates (Delta_0/Delta) * sum over compositions sum(l_i q^i) = l of
    multinomial(l_0..l_k) * prod ((-1)^i Delta_i / Delta)^(l_i), where
    Delta = Delta(y, v_1..v_k) and Delta_i = Delta_i(v_1..v_k).
    """
    ctx = basis.ctx
    if l < 0:
        raise ValueError("l must be >= 0")
    k = basis.k
    delta_v = moore_delta(basis)
    if delta_v == 0:
        raise DependentBasisError("carlitz_power_sum needs an independent basis")
    big = Basis(ctx, (y,) + basis.vectors)
    delta_y = moore_delta(big)
    if delta_y == 0:
        raise YInSpanError("y lies in the span of the basis")
    inv_dy = ctx.inv(delta_y)
    ratios = []
    for i in range(k + 1):
        di = moore_delta_i(i, basis)
        if i % 2 == 1:
            di = ctx.neg(di)
        ratios.append(ctx.mul(di, inv_dy))
    total = 0
    for parts in _compositions_base_q(l, ctx.q, k + 1):
        coeff = multinomial_mod(parts, ctx.p)
        if coeff == 0:
            continue
        term = ctx.from_coeffs([coeff])
        for r, li in zip(ratios, parts):
            if li:
                term = ctx.mul(term, ctx.pow(r, li))
        total = ctx.add(total, term)
    return ctx.mul(ctx.mul(ctx.frobenius(delta_v, 1), inv_dy), total)
