"""Exact scalars: rationals and sparse polynomials in the quantum numbers n, l.

Rationals are :class:`fractions.Fraction` (always canonical: positive
denominator, reduced, zero stored as ``0/1``).  :class:`PolyNL` is a sparse
polynomial in two formal symbols with rational coefficients.  The recurrence
engine never touches either type directly; it goes through a
:class:`CoefficientDomain`, which is what lets one implementation serve both
the numeric and the symbolic mode.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Callable, Iterator, Mapping, Union

Rational = Fraction

_RATIONAL_RE = re.compile(r"-?[0-9]+(/[0-9]+)?")


class ExactArithmeticError(ArithmeticError):
    pass


class ParseError(ValueError):
    pass


def rational_arith(a: Fraction, b: Fraction, op: str) -> Fraction:
    """Apply ``op`` (one of add, sub, mul, div) to two rationals exactly."""
    a, b = Fraction(a), Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ExactArithmeticError(f"division of {format_rational(a)} by zero")
        return a / b
    raise ValueError(f"unknown rational operation {op!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or ``p``.  Decimal or exponent notation is rejected."""
    text = text.strip()
    if not _RATIONAL_RE.fullmatch(text):
        raise ParseError(f"not an exact rational: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


Scalar = Union[int, Fraction]
Monomial = tuple[int, int]


def _monomial_key(mono: Monomial) -> tuple[int, int]:
    # graded lex, n before l: higher total degree first, then higher n power
    a, b = mono
    return (-(a + b), -a)


class PolyNL:
    """Sparse polynomial in ``n`` and ``l`` with exact rational coefficients.

    Instances are immutable.  Internally a mapping ``(a, b) -> c`` for the
    term ``c * n**a * l**b``; zero coefficients are never stored, so the
    mapping itself is the canonical form and equality is mapping equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in monomial {(a, b)}")
            c = Fraction(c)
            if c:
                clean[(int(a), int(b))] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> PolyNL:
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Scalar) -> PolyNL:
        return cls({(0, 0): c})

    @classmethod
    def n(cls) -> PolyNL:
        return cls({(1, 0): 1})

    @classmethod
    def l(cls) -> PolyNL:  # noqa: E743
        return cls({(0, 1): 1})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        for mono in sorted(self._terms, key=_monomial_key):
            yield mono, self._terms[mono]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((a + b for a, b in self._terms), default=-1)

    def degree_in(self, symbol: str) -> int:
        idx = {"n": 0, "l": 1}[symbol]
        return max((mono[idx] for mono in self._terms), default=-1)

    def coefficient(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> PolyNL | None:
        if isinstance(other, PolyNL):
            return other
        if isinstance(other, (int, _RationalABC)):
            return PolyNL.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return PolyNL._raw(out)

    __radd__ = __add__

    def __neg__(self) -> PolyNL:
        return PolyNL._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self) -> PolyNL:
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC)):
            c = Fraction(other)
            if not c:
                return PolyNL._raw({})
            return PolyNL._raw({m: v * c for m, v in self._terms.items()})
        if not isinstance(other, PolyNL):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                mono = (a1 + a2, b1 + b2)
                out[mono] = out.get(mono, 0) + c1 * c2
        return PolyNL._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> PolyNL:
        if not isinstance(k, int) or k < 0:
            raise ValueError("PolyNL powers must be non-negative integers")
        result = PolyNL.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation and text form ------------------------------------------

    def evaluate(self, n_val: Scalar, l_val: Scalar) -> Fraction:
        """Substitute rational values for ``n`` and ``l``; exact."""
        n_val, l_val = Fraction(n_val), Fraction(l_val)
        total = Fraction(0)
        for (a, b), c in self._terms.items():
            total += c * n_val**a * l_val**b
        return total

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"PolyNL({format_poly(self)!r})"


def poly_arith(p: PolyNL, q: PolyNL, op: str) -> PolyNL:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_eval(p: PolyNL, n_val: Scalar, l_val: Scalar) -> Fraction:
    return p.evaluate(n_val, l_val)


def _format_term(mono: Monomial, c: Fraction) -> str:
    parts = [format_rational(c)]
    for sym, e in zip("nl", mono):
        if e == 1:
            parts.append(sym)
        elif e > 1:
            parts.append(f"{sym}^{e}")
    return "*".join(parts)


def format_poly(p: PolyNL) -> str:
    """Canonical text: ``c*n^a*l^b`` terms in graded-lex order, n before l.

    Every term carries an explicit coefficient; negative terms are joined
    with `` - `` and the zero polynomial is ``0``.
    """
    out = []
    for mono, c in p:
        if not out:
            out.append(_format_term(mono, c))
        elif c < 0:
            out.append(" - " + _format_term(mono, -c))
        else:
            out.append(" + " + _format_term(mono, c))
    return "".join(out) if out else "0"


_TERM_RE = re.compile(
    r"(?P<c>[0-9]+(?:/[0-9]+)?)"
    r"(?:\*n(?:\^(?P<a>[0-9]+))?(?P<has_n>))?"
    r"(?:\*l(?:\^(?P<b>[0-9]+))?(?P<has_l>))?"
)


def parse_poly(text: str) -> PolyNL:
    """Inverse of :func:`format_poly`."""
    text = text.strip()
    if text == "0":
        return PolyNL()
    pieces = re.split(r"\s+([+-])\s+", text)
    signs = ["+"] + pieces[1::2]
    bodies = pieces[0::2]
    if bodies[0].startswith("-"):
        signs[0] = "-"
        bodies[0] = bodies[0][1:]
    terms: dict[Monomial, Fraction] = {}
    for sign, body in zip(signs, bodies):
        m = _TERM_RE.fullmatch(body)
        if m is None:
            raise ParseError(f"bad polynomial term {body!r} in {text!r}")
        c = parse_rational(m["c"])
        a = int(m["a"]) if m["a"] else (1 if m["has_n"] is not None else 0)
        b = int(m["b"]) if m["b"] else (1 if m["has_l"] is not None else 0)
        if (a, b) in terms:
            raise ParseError(f"repeated monomial n^{a}*l^{b} in {text!r}")
        terms[(a, b)] = -c if sign == "-" else c
    return PolyNL(terms)


# -- coefficient domains ---------------------------------------------------


@dataclass(frozen=True)
class CoefficientDomain:
    """The ring the recurrence runs over, plus the two problem constants.

    ``xi`` is the centrifugal parameter l^2 - 1/4 and ``inv_eps0`` the
    reciprocal of the unperturbed energy, both as domain elements.
    ``eps0`` is the unperturbed energy itself when it belongs to the
    domain (numeric mode) and ``None`` otherwise (symbolic mode, where it
    is a rational function of n).
    """

    name: str
    zero: object
    one: object
    embed: Callable[[Fraction], object]
    xi: object
    inv_eps0: object
    eps0: object | None = None

    def is_zero(self, x) -> bool:
        return x == self.zero


def numeric_domain(n: int, l: int) -> CoefficientDomain:  # noqa: E741
    half = Fraction(1, 2)
    eps0 = -1 / (2 * (Fraction(n) - half) ** 2)
    return CoefficientDomain(
        name="rational",
        zero=Fraction(0),
        one=Fraction(1),
        embed=Fraction,
        xi=Fraction(l) ** 2 - Fraction(1, 4),
        inv_eps0=-2 * (Fraction(n) - half) ** 2,
        eps0=eps0,
    )


def symbolic_domain() -> CoefficientDomain:
    n, l = PolyNL.n(), PolyNL.l()  # noqa: E741
    return CoefficientDomain(
        name="polynl",
        zero=PolyNL(),
        one=PolyNL.constant(1),
        embed=PolyNL.constant,
        xi=l * l - Fraction(1, 4),
        inv_eps0=Fraction(-1, 2) * (2 * n - 1) ** 2,
        eps0=None,
    )
