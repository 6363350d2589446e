"""Turning exact coefficient lists into numbers.

Everything here is evaluated exactly (``lam`` is converted to a Fraction
without rounding, so a float 0.1 means the binary double nearest 0.1) and
rounded once at the end.  That matters: by order 20 the coefficients span
60 orders of magnitude and any intermediate float arithmetic would cancel
catastrophically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from hpmkit.hpm import PerturbationSeries

Real = Union[int, float, Fraction]

POLE_TOLERANCE = 1e-6


class SeriesRangeError(IndexError):
    pass


class DegenerateApproximantError(ArithmeticError):
    """The Pade denominator system is singular."""


@dataclass(frozen=True)
class FieldSpec:
    """Field strength in units of B0 = hbar/(e a0) and nuclear charge Z."""

    B_over_B0: Real
    Z: Real = 1

    def __post_init__(self):
        if self.B_over_B0 < 0:
            raise ValueError(f"B/B0 must be >= 0, got {self.B_over_B0}")
        if self.Z <= 0:
            raise ValueError(f"Z must be > 0, got {self.Z}")


def lambda_from_field(field: FieldSpec) -> Real:
    """lam = (B/B0)^2 / (8 Z^4).  Exact if the inputs are ints/Fractions."""
    b, z = field.B_over_B0, field.Z
    if isinstance(b, (int, Fraction)) and isinstance(z, (int, Fraction)):
        return Fraction(b) ** 2 / (8 * Fraction(z) ** 4)
    return float(b) ** 2 / (8 * float(z) ** 4)


def zeeman_shift(lam: Real, m_l: int) -> float:
    """sqrt(2 lam) * m_l, the orbital Zeeman term in the same energy unit as eps."""
    if lam < 0:
        raise ValueError(f"lam must be >= 0, got {lam}")
    return math.sqrt(2 * float(lam)) * m_l


def _numeric(series: PerturbationSeries) -> None:
    if series.symbolic:
        raise TypeError("numeric evaluation needs a series for a fixed state")


def partial_sum_exact(series: PerturbationSeries, lam: Real, order: int) -> Fraction:
    _numeric(series)
    if not 0 <= order <= series.order:
        raise SeriesRangeError(f"order {order} outside 0..{series.order}")
    x = Fraction(lam)
    total = Fraction(0)
    power = Fraction(1)
    for p in range(order + 1):
        total += series[p] * power
        power *= x
    return total


def partial_sum(series: PerturbationSeries, lam: Real, order: int) -> float:
    """sum_{p<=order} eps_p lam^p, summed exactly and rounded once."""
    return float(partial_sum_exact(series, lam, order))


def term_magnitudes(series: PerturbationSeries, lam: Real) -> list[Fraction]:
    """|eps_p lam^p| for p = 0..P, exact."""
    _numeric(series)
    x = abs(Fraction(lam))
    return [abs(c) * x**p for p, c in enumerate(series.coefficients)]


@dataclass(frozen=True)
class Truncation:
    order: int
    error_estimate: float
    saturated: bool
    """True when the smallest available term is the last one, i.e. the
    series has not yet turned around within the computed orders."""

    def __iter__(self):
        yield self.order
        yield self.error_estimate


def optimal_truncation(series: PerturbationSeries, lam: Real) -> Truncation:
    """Stop before the smallest term |eps_{p+1} lam^{p+1}|, p + 1 <= P.

    Exact ties go to the lower order.
    """
    _numeric(series)
    if series.order < 1:
        raise SeriesRangeError("optimal truncation needs at least eps_1")
    if not lam > 0:
        raise ValueError(f"optimal truncation needs lam > 0, got {lam}")
    terms = term_magnitudes(series, lam)
    best = min(range(series.order), key=lambda p: (terms[p + 1], p))
    return Truncation(best, float(terms[best + 1]), best == series.order - 1)


def _solve_exact(a: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rhs)
    m = [row[:] + [r] for row, r in zip(a, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise DegenerateApproximantError("singular Pade denominator system")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for k in range(col, n + 1):
                    m[r][k] -= f * m[col][k]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = m[r][n] - sum(m[r][k] * x[k] for k in range(r + 1, n))
        x[r] = s / m[r][r]
    return x


def pade_coefficients(
    coeffs: Sequence[Fraction], L: int, M: int
) -> tuple[list[Fraction], list[Fraction]]:
    """Numerator a_0..a_L and denominator b_0..b_M (b_0 = 1) of the [L/M]
    approximant, solved in exact arithmetic."""
    if L < 0 or M < 0:
        raise ValueError("Pade orders must be non-negative")
    if L + M >= len(coeffs):
        raise SeriesRangeError(f"[{L}/{M}] needs {L + M + 1} coefficients, have {len(coeffs)}")
    c = [Fraction(x) for x in coeffs]

    def cc(k: int) -> Fraction:
        return c[k] if k >= 0 else Fraction(0)

    if M:
        a = [[cc(L + j - k) for k in range(1, M + 1)] for j in range(1, M + 1)]
        rhs = [-cc(L + j) for j in range(1, M + 1)]
        b = [Fraction(1)] + _solve_exact(a, rhs)
    else:
        b = [Fraction(1)]
    num = [sum((b[k] * cc(i - k) for k in range(min(i, M) + 1)), Fraction(0)) for i in range(L + 1)]
    return num, b


def _horner(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _roots(b: Sequence[Fraction]) -> list[complex]:
    b = list(b)
    while len(b) > 1 and b[-1] == 0:
        b.pop()
    if len(b) < 2:
        return []
    # x = s*y with s = |b_0/b_M|^(1/M) keeps the float coefficients in range
    deg = len(b) - 1
    log_s = (_log_abs(b[0]) - _log_abs(b[-1])) / deg
    scaled = [
        0.0 if c == 0 else math.copysign(math.exp(_log_abs(c) + k * log_s), c)
        for k, c in enumerate(b)
    ]
    return [complex(r) * math.exp(log_s) for r in np.roots(scaled[::-1])]


def _log_abs(c: Fraction) -> float:
    return math.log(abs(c.numerator)) - math.log(c.denominator)


@dataclass(frozen=True)
class PadeResult:
    value: float
    L: int
    M: int
    numerator: tuple[Fraction, ...] = field(repr=False)
    denominator: tuple[Fraction, ...] = field(repr=False)
    poles: tuple[complex, ...] = ()
    near_pole: bool = False

    def __float__(self) -> float:
        return self.value


def pade_eval(series: PerturbationSeries, lam: Real, L: int, M: int) -> PadeResult:
    """Evaluate the [L/M] Pade approximant of the series at ``lam``.

    Raises DegenerateApproximantError when the denominator system is
    singular.  A pole within ``1e-6 * max(1, lam)`` of ``lam`` sets
    ``near_pole`` instead of raising.
    """
    _numeric(series)
    if L + M > series.order:
        raise SeriesRangeError(f"[{L}/{M}] needs order {L + M}, series has {series.order}")
    num, den = pade_coefficients(series.coefficients, L, M)
    x = Fraction(lam)
    poles = tuple(_roots(den))
    tol = POLE_TOLERANCE * max(1.0, abs(float(lam)))
    d = _horner(den, x)
    near = d == 0 or any(abs(complex(float(lam)) - p) < tol for p in poles)
    value = math.copysign(math.inf, float(_horner(num, x))) if d == 0 else float(_horner(num, x) / d)
    return PadeResult(value, L, M, tuple(num), tuple(den), poles, near)


def ratio_diagnostics(series: PerturbationSeries) -> list[float | None]:
    """|eps_{p+1} / eps_p| for p = 1..P-1; ``None`` where eps_p = 0."""
    _numeric(series)
    if series.order < 2:
        raise SeriesRangeError("ratio diagnostics need P >= 2")
    out: list[float | None] = []
    for p in range(1, series.order):
        if series[p] == 0:
            out.append(None)
        else:
            out.append(float(abs(series[p + 1] / series[p])))
    return out


@dataclass(frozen=True)
class EvalReport:
    lam: float
    partial_sums: tuple[float, ...]
    chosen_order: int
    error_estimate: float | None
    estimate: float
    zeeman: float
    total_dimensionless_energy: float
    method: str
    pade_value: float | None = None
    warnings: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "method": self.method,
            "partial_sums": list(self.partial_sums),
            "chosen_order": self.chosen_order,
            "error_estimate": self.error_estimate,
            "estimate": self.estimate,
            "pade_value": self.pade_value,
            "zeeman": self.zeeman,
            "total_dimensionless_energy": self.total_dimensionless_energy,
            "warnings": list(self.warnings),
        }


def evaluate_energy(
    series: PerturbationSeries,
    lam: Real,
    m_l: int = 0,
    method: str = "optimal",
    order: int | None = None,
    L: int | None = None,
    M: int | None = None,
) -> EvalReport:
    """Dimensionless energy estimate eps(lam) plus the Zeeman term.

    ``method`` is ``truncate`` (sum through ``order``, default P),
    ``optimal`` (optimal truncation) or ``pade`` ([L/M], default the
    near-diagonal split of P).  ``error_estimate`` is always the magnitude
    of the first coefficient left out, or None when none is left out.
    """
    _numeric(series)
    P = series.order
    sums = tuple(partial_sum(series, lam, p) for p in range(P + 1))
    terms = term_magnitudes(series, lam)
    warnings: list[str] = []
    pade_value = None

    if method == "truncate":
        chosen = P if order is None else order
        if not 0 <= chosen <= P:
            raise SeriesRangeError(f"order {chosen} outside 0..{P}")
        estimate = sums[chosen]
    elif method == "optimal":
        if lam == 0 or P == 0:
            chosen = 0 if lam == 0 else P
        else:
            tr = optimal_truncation(series, lam)
            chosen = tr.order
            if tr.saturated:
                warnings.append("smallest term is the last computed one; not yet in the asymptotic regime")
        estimate = sums[chosen]
    elif method == "pade":
        if L is None and M is None:
            M = P // 2
            L = P - M
        elif L is None:
            L = P - M
        elif M is None:
            M = P - L
        chosen = L + M
        try:
            res = pade_eval(series, lam, L, M)
        except DegenerateApproximantError as exc:
            warnings.append(f"degenerate approximant: {exc}; falling back to the partial sum")
            estimate = sums[chosen]
        else:
            pade_value = res.value
            estimate = res.value
            if res.near_pole:
                warnings.append(f"[{L}/{M}] approximant has a pole near lambda={float(lam)}")
    else:
        raise ValueError(f"unknown method {method!r}")

    err = float(terms[chosen + 1]) if chosen < P else None
    z = zeeman_shift(lam, m_l)
    return EvalReport(
        lam=float(lam),
        partial_sums=sums,
        chosen_order=chosen,
        error_estimate=err,
        estimate=estimate,
        zeeman=z,
        total_dimensionless_energy=estimate + z,
        method=method,
        pade_value=pade_value,
        warnings=tuple(warnings),
    )
