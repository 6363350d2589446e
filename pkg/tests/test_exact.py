from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hpmkit.exact import (
    ExactArithmeticError,
    ParseError,
    PolyNL,
    format_poly,
    format_rational,
    numeric_domain,
    parse_poly,
    parse_rational,
    poly_arith,
    poly_eval,
    rational_arith,
    symbolic_domain,
)

n, l = PolyNL.n(), PolyNL.l()
sn, sl = sympy.symbols("n l")

rationals = st.builds(Fraction, st.integers(-99, 99), st.integers(1, 50))
small_polys = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)), rationals, max_size=6
).map(PolyNL)


def to_sympy(p: PolyNL):
    return sum((sympy.Rational(c.numerator, c.denominator) * sn**a * sl**b for (a, b), c in p), sympy.Integer(0))


@pytest.mark.parametrize(
    "a, b, op, expected",
    [
        (Fraction(1, 2), Fraction(1, 3), "add", Fraction(5, 6)),
        (Fraction(3, 8), Fraction(3, 8), "sub", Fraction(0)),
        (Fraction(-159, 1024), Fraction(1024), "mul", Fraction(-159)),
        (Fraction(3, 4), Fraction(-3, 2), "div", Fraction(-1, 2)),
    ],
)
def test_rational_arith(a, b, op, expected):
    got = rational_arith(a, b, op)
    assert got == expected
    assert got.denominator > 0


def test_rational_zero_is_canonical():
    z = rational_arith(Fraction(3, 8), Fraction(3, 8), "sub")
    assert (z.numerator, z.denominator) == (0, 1)
    assert format_rational(z) == "0"


def test_division_by_zero_is_an_explicit_error():
    with pytest.raises(ExactArithmeticError):
        rational_arith(Fraction(1), Fraction(0), "div")


def test_unknown_op():
    with pytest.raises(ValueError):
        rational_arith(1, 2, "pow")


@pytest.mark.parametrize("text", ["3/8", "-159/1024", "-2", "0", "123456789012345678901234567891/2"])
def test_rational_text_round_trip(text):
    assert format_rational(parse_rational(text)) == text


@pytest.mark.parametrize("text", ["1.5", "1e3", "3/0", "/4", "3/-4", "", "+3"])
def test_parse_rational_rejects(text):
    with pytest.raises(ParseError):
        parse_rational(text)


def test_poly_examples():
    assert poly_arith(2 * n - 1, 2 * n - 1, "mul") == 4 * n * n - 4 * n + 1
    p = 3 * n * l - Fraction(1, 2)
    assert poly_arith(p, PolyNL(), "add") == p
    assert poly_arith(n + l, n - l, "mul") == n**2 - l**2


def test_poly_zero_terms_dropped():
    p = (n + l) - (n + l)
    assert p.is_zero() and len(p) == 0 and p.degree() == -1
    assert PolyNL({(1, 0): 0, (0, 0): 2}).terms == {(0, 0): Fraction(2)}


def test_poly_eval_published_first_order():
    eps1 = Fraction(1, 8) * (2 * n - 1) ** 2 * (-3 * l**2 + 3 + 5 * n**2 - 5 * n)
    assert poly_eval(eps1, 1, 0) == Fraction(3, 8)
    # (9/8)(3 + 20 - 10) by hand
    assert poly_eval(eps1, 2, 0) == Fraction(117, 8)


def test_poly_eval_published_second_order():
    bracket = (-21 * l**4 - 138 * l**2 + 159 - 90 * l**2 * n**2 + 90 * l**2 * n
               + 582 * n**2 - 439 * n + 143 * n**4 - 286 * n**3)
    eps2 = Fraction(-1, 1024) * (2 * n - 1) ** 6 * bracket
    assert poly_eval(eps2, 1, 0) == Fraction(-159, 1024)


def test_canonical_order_is_graded_lex_n_first():
    p = l + n + n * l + l**2 + n**2 + 1
    assert format_poly(p) == "1*n^2 + 1*n*l + 1*l^2 + 1*n + 1*l + 1"
    assert format_poly(-(n**3) * l**2 + Fraction(5, 2)) == "-1*n^3*l^2 + 5/2"
    assert format_poly(PolyNL()) == "0"


def test_parse_poly_errors():
    for bad in ["n + 1", "2*x", "1*n^2 + 2*n^2", "1*l*n"]:
        with pytest.raises(ParseError):
            parse_poly(bad)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        PolyNL({(-1, 0): 1})


def test_degree_and_power():
    p = (2 * n - 1) ** 14
    assert p.degree() == 14 and p.degree_in("n") == 14 and p.degree_in("l") == 0
    assert PolyNL().degree_in("n") == -1
    assert p.coefficient(14, 0) == 2**14
    with pytest.raises(ValueError):
        n ** -1


def test_domains_constants():
    d = numeric_domain(1, 0)
    assert d.xi == Fraction(-1, 4) and d.inv_eps0 == Fraction(-1, 2) and d.eps0 == -2
    s = symbolic_domain()
    assert s.xi == l**2 - Fraction(1, 4)
    assert s.inv_eps0 == Fraction(-1, 2) * (4 * n**2 - 4 * n + 1)
    assert s.eps0 is None
    # the numeric constants are the symbolic ones evaluated
    for nn, ll in [(1, 0), (3, 1), (5, 4)]:
        d = numeric_domain(nn, ll)
        assert s.xi.evaluate(nn, ll) == d.xi and s.inv_eps0.evaluate(nn, ll) == d.inv_eps0


@given(rationals, rationals, rationals)
def test_rational_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_poly_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p - p == PolyNL()


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_poly_product_matches_sympy(p, q):
    expected = sympy.Poly(sympy.expand(to_sympy(p) * to_sympy(q)), sn, sl)
    got = p * q
    assert {k: Fraction(int(v.p), int(v.q)) for k, v in expected.as_dict().items()} == got.terms
    if p and q:
        assert got.degree() == p.degree() + q.degree()


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, rationals, rationals)
def test_poly_eval_is_a_homomorphism(p, q, nv, lv):
    assert poly_eval(p * q, nv, lv) == poly_eval(p, nv, lv) * poly_eval(q, nv, lv)
    assert poly_eval(p + q, nv, lv) == poly_eval(p, nv, lv) + poly_eval(q, nv, lv)


@given(rationals)
def test_embedding_is_a_homomorphism(a):
    emb = PolyNL.constant
    b = Fraction(7, 3)
    assert emb(a + b) == emb(a) + emb(b)
    assert emb(a * b) == emb(a) * emb(b)


@given(small_polys)
def test_poly_serialization_round_trip(p):
    text = format_poly(p)
    assert parse_poly(text) == p
    assert format_poly(parse_poly(text)) == text


@given(rationals)
def test_rational_serialization_round_trip(a):
    assert parse_rational(format_rational(a)) == a


def test_equal_polys_serialize_identically():
    p1 = (n + l) * (n - l) + 3
    p2 = PolyNL({(0, 0): 3, (0, 2): -1, (2, 0): 1})
    assert p1 == p2 and hash(p1) == hash(p2)
    assert format_poly(p1).encode() == format_poly(p2).encode()
