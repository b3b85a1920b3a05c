"""Tests for the base field arithmetic layer."""

import random

import pytest

from sumfree import gfarith
from sumfree.errors import (
    DegreeMismatchError,
    DivisionByZeroError,
    NotADivisorError,
    NotPrimeError,
    ParseError,
    ReducibleError,
)
from sumfree.gfarith import (
    FieldCtx,
    factor_xn_minus_1,
    find_irreducible,
    format_poly,
    is_irreducible,
    make_field,
    parse_poly,
)


def brute_irreducible(p, coeffs):
    """Trial division by every lower-degree monic polynomial."""
    m = len(coeffs) - 1
    if m <= 0:
        return False
    for d in range(1, m):
        for code in range(p ** d):
            g = gfarith._digits_of(code, p, d) + (1,)
            if gfarith._pmod(coeffs, g, p) == ():
                return False
    return True


def test_irreducibility_matches_trial_division():
    for p in (2, 3, 5):
        for m in (2, 3, 4):
            for code in range(p ** m):
                coeffs = gfarith._digits_of(code, p, m) + (1,)
                assert is_irreducible(p, coeffs) == brute_irreducible(p, coeffs), (p, coeffs)


def test_find_irreducible_smallest_and_deterministic():
    # frozen from the trial-division oracle above
    assert find_irreducible(2, 1) == (0, 1)            # X
    assert find_irreducible(2, 4) == (1, 1, 0, 0, 1)   # 1 + X + X^4
    assert find_irreducible(3, 2) == (1, 0, 1)         # 1 + X^2
    assert find_irreducible(2, 13) == make_field(2, 13).modulus
    assert make_field(3, 5).modulus == make_field(3, 5).modulus


def test_make_field_validation():
    with pytest.raises(NotPrimeError):
        make_field(4, 2)
    with pytest.raises(ReducibleError):
        make_field(2, 2, [1, 0, 1])        # 1 + X^2 = (1 + X)^2
    with pytest.raises(DegreeMismatchError):
        make_field(2, 3, [1, 1, 1])        # degree 2, not 3
    with pytest.raises(DegreeMismatchError):
        make_field(3, 2, [1, 1, 2])        # not monic


def test_known_moduli_are_irreducible():
    f13 = make_field(2, 13, "X^13 + X^12 + X^11 + X^8 + 1")
    assert f13.size == 2 ** 13
    f21 = make_field(2, 21, "X^21 + X^19 + 1")
    assert f21.size == 2 ** 21


@pytest.mark.parametrize("p,m", [(2, 1), (2, 4), (2, 8), (3, 1), (3, 4), (5, 3)])
def test_field_axioms_random(p, m):
    ctx = make_field(p, m)
    rng = random.Random(1000 * p + m)
    for _ in range(300):
        a, b, c = (ctx.random_element(rng) for _ in range(3))
        assert ctx.add(a, b) == ctx.add(b, a)
        assert ctx.mul(a, b) == ctx.mul(b, a)
        assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
        assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
        assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
        assert ctx.sub(ctx.add(a, b), b) == a
        assert ctx.add(a, ctx.neg(a)) == 0
        if a:
            assert ctx.mul(a, ctx.inv(a)) == 1
    assert ctx.mul(ctx.one, ctx.one) == ctx.one
    with pytest.raises(DivisionByZeroError):
        ctx.inv(0)


def test_tabled_and_raw_agree():
    ctx_t = make_field(3, 4)
    ctx_r = make_field(3, 4, table_limit=0)
    assert ctx_t._tables() and not ctx_r._tables()
    rng = random.Random(7)
    for _ in range(500):
        a, b = ctx_t.random_element(rng), ctx_t.random_element(rng)
        assert ctx_t.mul(a, b) == ctx_r.mul(a, b)
        if a:
            assert ctx_t.inv(a) == ctx_r.inv(a)
            assert ctx_t.pow(a, 3 ** 7 + 5) == ctx_r.pow(a, 3 ** 7 + 5)
        assert ctx_t.frobenius(a, 2) == ctx_r.frobenius(a, 2)


def test_inv0():
    for p, m in [(2, 5), (3, 1), (5, 2)]:
        ctx = make_field(p, m)
        assert ctx.inv0(0) == 0
        assert ctx.inv0(1) == 1
        for a in range(1, ctx.size):
            assert ctx.mul(a, ctx.inv0(a)) == 1
    # in F_3: 2 * 2 = 4 = 1
    f3 = make_field(3, 1)
    assert f3.inv0(2) == 2


def test_pow_small_cases():
    f3 = make_field(3, 1)
    assert f3.pow(2, 2) == 1
    f4 = make_field(2, 2)           # modulus 1 + X + X^2
    omega = 2                       # the class of X
    assert f4.mul(omega, omega) == f4.add(omega, 1)


def test_inv0_many_matches_scalar():
    ctx = make_field(2, 13, "X^13 + X^12 + X^11 + X^8 + 1")
    rng = random.Random(3)
    values = [ctx.random_element(rng) for _ in range(200)] + [0, 0, 1]
    batch = ctx.inv0_many(values)
    assert batch == [ctx.inv0(v) for v in values]


@pytest.mark.parametrize("p,m", [(2, 6), (3, 7), (5, 4)])
def test_frobenius_properties(p, m):
    ctx = make_field(p, m)
    rng = random.Random(p * m)
    for _ in range(200):
        a, b = ctx.random_element(rng), ctx.random_element(rng)
        f1 = ctx.frobenius(a, 1)
        assert f1 == ctx.pow(a, p)
        assert ctx.frobenius(ctx.frobenius(a, 1), 1) == ctx.frobenius(a, 2)
        assert ctx.frobenius(ctx.add(a, b)) == ctx.add(f1, ctx.frobenius(b))
        assert ctx.frobenius(ctx.mul(a, b)) == ctx.mul(f1, ctx.frobenius(b))
        assert ctx.frobenius(a, m) == a
        assert ctx.frobenius(a, 0) == a
    for c in range(p):
        assert ctx.frobenius(ctx.from_coeffs([c]), 3) == ctx.from_coeffs([c])


def test_trace_surjective_and_linear_exhaustive():
    for p, m in [(2, 4), (3, 3)]:
        ctx = make_field(p, m)
        counts = {}
        for a in ctx.elements():
            t = ctx.trace(a)
            assert ctx.in_subfield(t, 1)
            counts[t] = counts.get(t, 0) + 1
        # every base-field value is hit equally often
        assert counts == {ctx.from_coeffs([c]): p ** (m - 1) for c in range(p)}
        rng = random.Random(42)
        for _ in range(100):
            a, b = ctx.random_element(rng), ctx.random_element(rng)
            assert ctx.trace(ctx.add(a, b)) == ctx.add(ctx.trace(a), ctx.trace(b))


def test_trace_tower_and_errors():
    f16 = make_field(2, 4)
    omega = next(a for a in f16.elements() if f16.in_subfield(a, 2) and not f16.in_subfield(a, 1))
    # Tr_{4/2}(omega) inside F_4: omega + omega^2 = 1
    f4 = make_field(2, 2)
    w = 2
    assert f4.trace(w, 1) == f4.add(w, f4.square(w)) == 1
    ones = sum(1 for a in f16.elements() if f16.trace(a, 1) == 1)
    assert ones == 8
    with pytest.raises(NotADivisorError):
        f16.trace(omega, 3)
    with pytest.raises(NotADivisorError):
        f16.in_subfield(omega, 3)


def test_in_subfield():
    f16 = make_field(2, 4)
    for c in (0, 1):
        assert f16.in_subfield(c, 1)
    omega = next(a for a in f16.elements() if f16.in_subfield(a, 2) and not f16.in_subfield(a, 1))
    assert not f16.in_subfield(omega, 1)
    assert f16.in_subfield(omega, 2)


def test_subfield_basis():
    f64 = make_field(2, 6)
    for d in (1, 2, 3, 6):
        basis = f64.subfield_basis(d)
        assert len(basis) == d
        seen = set()
        for mask in range(2 ** d):
            x = 0
            for i in range(d):
                if mask >> i & 1:
                    x = f64.add(x, basis[i])
            seen.add(x)
        assert len(seen) == 2 ** d
        assert all(f64.in_subfield(x, d) for x in seen)


def test_element_text_roundtrip():
    ctx = make_field(2, 13, "X^13 + X^12 + X^11 + X^8 + 1")
    rng = random.Random(5)
    for _ in range(50):
        a = ctx.random_element(rng)
        assert ctx.parse_element(ctx.format_element(a)) == a
    assert ctx.parse_element("1 + X^2 + X^5") == ctx.from_coeffs([1, 0, 1, 0, 0, 1])
    assert ctx.parse_element("0") == 0
    assert ctx.parse_element("1 0 1 0 0 1") == ctx.from_coeffs([1, 0, 1, 0, 0, 1])
    f25 = make_field(5, 2)
    assert f25.format_element(f25.from_coeffs([2, 3])) == "2 + 3*X"
    assert f25.parse_element("2 + 3*X") == f25.from_coeffs([2, 3])
    with pytest.raises(ParseError):
        ctx.parse_element("X^99")
    with pytest.raises(ParseError):
        ctx.parse_element("spam + X")


def test_format_poly_descending_input_accepted():
    assert parse_poly("X^13+X^12+X^11+X^8+1", 2) == parse_poly("1+X^8+X^11+X^12+X^13", 2)
    assert format_poly(parse_poly("X^21 + X^19 + 1", 2)) == "1 + X^19 + X^21"


def test_factor_xn_minus_1_small():
    # X^4 - 1 = (X + 1)^4 over F_2
    assert factor_xn_minus_1(2, 4) == [((1, 1), 4)]
    # X^3 - 1 = (X + 1)(X^2 + X + 1) over F_2
    assert factor_xn_minus_1(2, 3) == [((1, 1), 1), ((1, 1, 1), 1)]
    # X^2 - 1 over F_3 and F_5 splits into linear factors
    assert factor_xn_minus_1(3, 2) == [((1, 1), 1), ((2, 1), 1)]
    assert factor_xn_minus_1(5, 2) == [((1, 1), 1), ((4, 1), 1)]


@pytest.mark.parametrize("q,n", [(2, 3), (2, 6), (2, 12), (2, 21), (3, 8), (3, 9), (5, 11)])
def test_factor_xn_minus_1_product_and_irreducibility(q, n):
    factors = factor_xn_minus_1(q, n)
    prod = (1,)
    for coeffs, mult in factors:
        assert is_irreducible(q, coeffs)
        for _ in range(mult):
            prod = gfarith._pmul(prod, coeffs, q)
    target = gfarith._ptrim([(-1) % q] + [0] * (n - 1) + [1])
    assert prod == target


def test_factor_xn_minus_1_degree_pattern_2_21():
    # independent oracle: factor degrees follow multiplicative orders of 2
    # modulo the divisors of 21 (1 -> 1, 3 -> 2, 7 -> 3 twice, 21 -> 6 twice)
    degrees = sorted(len(c) - 1 for c, _ in factor_xn_minus_1(2, 21))
    expected = []
    for d in (1, 3, 7, 21):
        order = next(o for o in range(1, 100) if pow(2, o, d) % d == 1 % d)
        phi = sum(1 for x in range(1, d + 1) if _gcd(x, d) == 1)
        expected.extend([order] * (phi // order))
    assert degrees == sorted(expected)
    assert 3 in degrees and 6 in degrees


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def test_prime_field_edge():
    f2 = make_field(2, 1)
    assert f2.modulus == (0, 1)
    assert f2.add(1, 1) == 0 and f2.mul(1, 1) == 1
    assert f2.trace(1) == 1
    f5 = make_field(5, 1)
    assert f5.mul(3, 4) == 2 and f5.inv(2) == 3
    assert f5.frobenius(3, 10) == 3
