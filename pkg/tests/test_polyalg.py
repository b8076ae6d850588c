"""Polynomial kernel against sympy and grid-sign oracles."""

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nkconf.polyalg import (
    Poly,
    count_real_roots,
    divexact,
    gcd,
    isolate_real_roots,
    parse_poly,
    prem,
    resultant,
    sign_at_root,
    squarefree_part,
)
from nkconf.polyalg.poly import content_in
from nkconf.polyalg.tower import gcd_over_roots

from conftest import from_sympy, to_sympy

X, Y = sympy.symbols("x y")

coeff = st.integers(-4, 4)


@st.composite
def bivariate(draw, max_deg=3):
    terms = draw(st.lists(st.tuples(st.integers(0, max_deg), st.integers(0, max_deg), coeff), max_size=6))
    return sum((c * X ** i * Y ** j for i, j, c in terms), sympy.Integer(0))


def same_up_to_constant(a, b) -> bool:
    a, b = sympy.expand(a), sympy.expand(b)
    if a == 0 or b == 0:
        return a == b
    q = sympy.cancel(a / b)
    return q.is_number and q != 0


# parsing and arithmetic


@given(bivariate(), bivariate())
@settings(max_examples=60, deadline=None)
def test_arithmetic_matches_sympy(a, b):
    pa, pb = from_sympy(a), from_sympy(b)
    assert sympy.expand(to_sympy(pa * pb) - a * b) == 0
    assert sympy.expand(to_sympy(pa - pb) - (a - b)) == 0


@given(bivariate())
@settings(max_examples=60, deadline=None)
def test_str_parse_round_trip(a):
    p = from_sympy(a)
    assert parse_poly(str(p)) == p


def test_parse_grammar():
    p = parse_poly("(t+1)^2*(t-3) - 3/2*t")
    assert sympy.expand(to_sympy(p) - ((sympy.Symbol("t") + 1) ** 2 * (sympy.Symbol("t") - 3)
                                       - sympy.Rational(3, 2) * sympy.Symbol("t"))) == 0
    assert parse_poly("-x^2") == -parse_poly("x^2")
    with pytest.raises(ValueError):
        parse_poly("x/y")


# gcd, prem, resultant


@given(bivariate(2), bivariate(2), bivariate(2))
@settings(max_examples=50, deadline=None)
def test_gcd_matches_sympy(a, b, c):
    pa, pb = from_sympy(a * c), from_sympy(b * c)
    if pa.is_zero() and pb.is_zero():
        return
    assert same_up_to_constant(to_sympy(gcd(pa, pb)), sympy.gcd(a * c, b * c))


@given(bivariate(3), bivariate(2))
@settings(max_examples=50, deadline=None)
def test_prem_matches_sympy(a, b):
    if sympy.degree(b, Y) < 1:
        return
    r = prem(from_sympy(a), from_sympy(b), "y")
    assert sympy.expand(to_sympy(r) - sympy.prem(a, b, Y)) == 0


@given(bivariate(2), bivariate(2))
@settings(max_examples=50, deadline=None)
def test_resultant_matches_sympy(a, b):
    if sympy.degree(a, Y) < 1 or sympy.degree(b, Y) < 1:
        return
    r = resultant(from_sympy(a), from_sympy(b), "y")
    assert sympy.expand(to_sympy(r) - sympy.resultant(a, b, Y)) == 0


def test_resultant_small_example():
    """Sylvester determinant of [[theta, -1], [1, -theta]] is 1 - theta^2."""
    r = resultant(parse_poly("theta*vartheta - 1"), parse_poly("vartheta - theta"), "vartheta")
    assert r == parse_poly("1 - theta^2").with_gens(r.gens)
    assert to_sympy(r) == sympy.resultant(sympy.sympify("theta*vartheta - 1"), sympy.sympify("vartheta - theta"),
                                          sympy.Symbol("vartheta"))


def _random_univariate(rng, deg):
    return sum(rng.randint(-5, 5) * X ** i for i in range(deg + 1))


def test_resultant_vanishes_iff_common_factor():
    """200 random pairs, half of them with a planted common factor."""
    rng = random.Random(7)
    for n in range(200):
        a = _random_univariate(rng, rng.randint(1, 3))
        b = _random_univariate(rng, rng.randint(1, 3))
        if n % 2:
            f = X - rng.randint(-3, 3) if rng.random() < 0.5 else X ** 2 + rng.randint(1, 3)
            a, b = a * f, b * f
        pa, pb = from_sympy(a), from_sympy(b)
        if pa.degree("x") < 1 or pb.degree("x") < 1:
            continue
        vanishes = resultant(pa, pb, "x").is_zero()
        common = not gcd(pa, pb).is_constant()
        assert vanishes == common, (a, b)
        assert common == (sympy.degree(sympy.gcd(a, b), X) > 0)


def test_content_and_squarefree():
    p = from_sympy((X ** 2 - 1) * (Y + X) * (Y - 2) ** 2)
    assert same_up_to_constant(to_sympy(content_in(p, "y")), X ** 2 - 1)
    q = from_sympy((X - 1) ** 3 * (X + 2) ** 2)
    assert same_up_to_constant(to_sympy(squarefree_part(q, "x")), (X - 1) * (X + 2))
    assert divexact(q, from_sympy(X - 1)) == from_sympy((X - 1) ** 2 * (X + 2) ** 2)


def test_substitute_rational_function():
    t, v = sympy.symbols("t v")
    p = parse_poly("t*v^2 + v - 1")
    num, den = parse_poly("t + 1"), parse_poly("t^2 - 3")
    out, k = p.substitute_rational_function("v", num, den)
    expect = sympy.expand((t * (t + 1) ** 2 + (t + 1) * (t ** 2 - 3) - (t ** 2 - 3) ** 2))
    assert k == 2
    assert sympy.expand(to_sympy(out) - expect) == 0


# real roots


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _grid_sign_count(coeffs) -> int:
    """Sign changes on a grid of quarter-offset points (coefficients lowest first)."""

    def value(x):
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    signs = [value(Fraction(4 * i + 1, 8)) > 0 for i in range(-80, 80)]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def test_sturm_counts_match_grid_oracle():
    """1000 random polynomials of degree <= 6 with roots on a half-integer lattice.

    The oracle evaluates the product of the distinct factors, which has the
    same real roots, all simple, so each one shows up as a sign change.
    """
    rng = random.Random(2024)
    for _ in range(1000):
        factors = []
        deg = rng.randint(1, 6)
        while sum(len(f) - 1 for f in factors) < deg:
            if deg - sum(len(f) - 1 for f in factors) >= 2 and rng.random() < 0.3:
                factors.append((rng.randint(1, 4), 0, 1))  # x^2 + c, no real roots
            else:
                factors.append((-rng.randint(-12, 12), 2))  # 2x - m, root at m/2
        full, distinct = [rng.choice([-3, -1, 1, 2])], [1]
        for f in factors:
            full = _mul(full, f)
        for f in set(factors):
            distinct = _mul(distinct, f)
        poly = Poly({(i,): c for i, c in enumerate(full)}, ("x",))
        assert count_real_roots(poly) == _grid_sign_count(distinct)


def test_sturm_counts_match_sympy_on_dense_random():
    rng = random.Random(99)
    for _ in range(150):
        p = _random_univariate(rng, rng.randint(1, 6))
        if sympy.degree(p, X) < 1:
            continue
        poly = from_sympy(p)
        assert count_real_roots(poly) == len(set(sympy.real_roots(p)))


def test_isolation_intervals_contain_roots():
    rng = random.Random(5)
    for _ in range(60):
        p = _random_univariate(rng, rng.randint(1, 6))
        if sympy.degree(p, X) < 1:
            continue
        roots = isolate_real_roots(from_sympy(p))
        exact = sorted(set(sympy.real_roots(p)), key=lambda r: float(r))
        assert len(roots) == len(exact)
        for r, e in zip(roots, exact):
            if r.is_rational:
                assert e == sympy.Rational(r.lo.numerator, r.lo.denominator)
            else:
                assert float(r.lo) < float(e) < float(r.hi)


def test_sign_at_root():
    r = isolate_real_roots(parse_poly("x^2 - 2"))[-1]
    assert sign_at_root(parse_poly("x^2 - 2"), r) == 0
    assert sign_at_root(parse_poly("x - 1"), r) == 1
    assert sign_at_root(parse_poly("3*x - 5"), r) == -1  # 3*sqrt(2) < 5
    assert sign_at_root(parse_poly("x^4 - 4"), r) == 0


# gcds over algebraic roots


def test_gcd_over_roots_simple_extension():
    g = parse_poly("x^2 - 2")
    a = from_sympy(sympy.expand((Y - X) * (Y + 1)))
    b = from_sympy(sympy.expand((Y - X) * (Y - 3)))
    ((gi, h),) = gcd_over_roots(g, [a, b], "x", "y")
    assert gi == g and h == from_sympy(Y - X).with_gens(h.gens)


def test_gcd_over_roots_splits_minimal_polynomial():
    """On x = 1 both polynomials share y - 1; on x^2 = 2 they are coprime."""
    g = from_sympy(sympy.expand((X - 1) * (X ** 2 - 2)))
    a = from_sympy(sympy.expand(Y ** 2 - X))
    b = from_sympy(sympy.expand(Y - X))
    pieces = {str(gi): h for gi, h in gcd_over_roots(g, [a, b], "x", "y")}
    assert set(pieces) == {"x - 1", "x^2 - 2"}
    assert to_sympy(pieces["x - 1"]) == Y - 1
    assert pieces["x^2 - 2"].is_constant() and not pieces["x^2 - 2"].is_zero()
    # sympy over the same extension agrees
    s2 = sympy.sqrt(2)
    assert sympy.degree(sympy.gcd(Y ** 2 - s2, Y - s2, extension=s2), Y) == 0


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(2, 5))
@settings(max_examples=30, deadline=None)
def test_gcd_over_roots_matches_sympy_extension(c0, c1, d):
    """Planted common factor y - (c0 + c1*x) over x^2 = d."""
    if sympy.sqrt(d).is_rational:
        return
    g = parse_poly(f"x^2 - {d}")
    common = Y - (c0 + c1 * X)
    a = from_sympy(sympy.expand(common * (Y ** 2 + 1)))
    b = from_sympy(sympy.expand(common * (Y - X - 7)))
    ((_, h),) = gcd_over_roots(g, [a, b], "x", "y")
    s = sympy.sqrt(d)
    oracle = sympy.gcd(sympy.expand((common * (Y ** 2 + 1)).subs(X, s)),
                       sympy.expand((common * (Y - X - 7)).subs(X, s)), extension=s)
    assert sympy.simplify(to_sympy(h).subs(X, s) - sympy.monic(oracle, Y)) == 0


def test_fraction_coefficients_are_exact():
    p = Poly.const(Fraction(1, 3), ("x",)) * parse_poly("x") + Fraction(2, 3)
    assert str(p) == "1/3*x + 2/3"
