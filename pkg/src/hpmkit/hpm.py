"""Hypervirial perturbation recurrences for the 2D hydrogen-like atom.

The radial operator is

    H = -1/2 d^2/dq^2 + xi/(2 q^2) - 1/q + lam * q^K,    xi = l^2 - 1/4,

and ``Q[j, i]`` is the lam^i coefficient of the expectation value <q^j>.
Commuting H with ``(j+1)/2 q^j - q^(j+1) d/dq`` gives, order by order,

    Q[j,i] = 1/(2(j+1) eps0) * { j (xi - (j^2-1)/4) Q[j-2,i] - (2j+1) Q[j-1,i]
                                 - 2(j+1) sum_{m=1..i} eps_m Q[j,i-m]
                                 + (2j+K+2) Q[j+K,i-1] }

for j >= 1, with Q[0,i] = delta_{i0}, Q[-1,i] = -2 eps_i + (K+2) Q[K,i-1]
and the Hellmann-Feynman closure eps_i = Q[K,i-1] / i.

Table extent.  eps_P needs Q[K,P-1]; Q[j,i] reads Q[j+K,i-1] and the
lower-order Q[j,i-m].  Walking the dependency back gives the minimal closed
set j <= K*(P-i) for i = 0..P-1, which is what gets stored unless a wider
table is requested with ``extra_j``.

Symbolic mode.  1/eps0 = -(2n-1)^2/2 is a polynomial but eps0 is not, and
Q[-1,0] = -2 eps0 is the only table entry that would leave the polynomial
ring.  It is only ever read multiplied by 1/eps0, where it equals -2; the
engine uses that product directly and never stores Q[-1,0] symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from hpmkit.exact import (
    CoefficientDomain,
    PolyNL,
    format_poly,
    format_rational,
    numeric_domain,
    symbolic_domain,
)


class TableRangeError(LookupError):
    """A Q-table entry outside the computed range was requested."""


@dataclass(frozen=True)
class StateSpec:
    """Quantum numbers of one radial channel.

    ``m_l`` defaults to ``+l``; only its sign matters, and only for the
    Zeeman shift.
    """

    n_r: int
    l: int  # noqa: E741
    m_l: int | None = None

    def __post_init__(self):
        if self.n_r < 0 or self.l < 0:
            raise ValueError(f"n_r and l must be non-negative, got {self.n_r}, {self.l}")
        if self.m_l is None:
            object.__setattr__(self, "m_l", self.l)
        elif abs(self.m_l) != self.l:
            raise ValueError(f"|m_l| must equal l, got m_l={self.m_l}, l={self.l}")

    @classmethod
    def from_n(cls, n: int, l: int, m_l: int | None = None) -> StateSpec:  # noqa: E741
        if n < l + 1:
            raise ValueError(f"need n >= l + 1, got n={n}, l={l}")
        return cls(n - l - 1, l, m_l)

    @property
    def n(self) -> int:
        return self.n_r + self.l + 1

    @property
    def xi(self) -> Fraction:
        return Fraction(self.l**2) - Fraction(1, 4)

    def as_dict(self) -> dict:
        return {"n_r": self.n_r, "l": self.l, "m_l": self.m_l, "n": self.n}


@dataclass(frozen=True)
class ProblemSpec:
    K: int = 2
    P: int = 0

    def __post_init__(self):
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        if self.P < 0:
            raise ValueError(f"P must be >= 0, got {self.P}")

    def j_max(self, i: int) -> int:
        return self.K * (self.P - i)

    def as_dict(self) -> dict:
        return {"K": self.K, "P": self.P}


@dataclass(frozen=True)
class QTable:
    """Write-once table of the expansion coefficients ``Q[j, i]``."""

    problem: ProblemSpec
    entries: dict = field(default_factory=dict, repr=False)
    extra_j: int = 0

    def j_max(self, i: int) -> int:
        return self.problem.j_max(i) + self.extra_j

    def _put(self, j: int, i: int, value) -> None:
        assert (j, i) not in self.entries, f"Q[{j},{i}] computed twice"
        self.entries[(j, i)] = value

    def __getitem__(self, key: tuple[int, int]):
        try:
            return self.entries[key]
        except KeyError:
            j, i = key
            raise TableRangeError(
                f"Q[{j},{i}] is outside the computed table "
                f"(K={self.problem.K}, P={self.problem.P})"
            ) from None

    def __contains__(self, key) -> bool:
        return key in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.entries, key=lambda ji: (ji[1], ji[0])))


@dataclass(frozen=True)
class PerturbationSeries:
    """Coefficients eps_start ... eps_P of the weak-field expansion.

    Numeric series start at order 0.  Symbolic series start at order 1,
    because eps0 = -2/(2n-1)^2 is not a polynomial; see
    :func:`epsilon_zero_symbolic`.
    """

    coefficients: tuple
    problem: ProblemSpec
    state: StateSpec | None = None
    start: int = 0

    def __post_init__(self):
        expected = self.problem.P + 1 - self.start
        if len(self.coefficients) != expected:
            raise ValueError(
                f"expected {expected} coefficients for P={self.problem.P}, "
                f"got {len(self.coefficients)}"
            )

    @property
    def symbolic(self) -> bool:
        return self.state is None

    @property
    def order(self) -> int:
        return self.problem.P

    def orders(self) -> range:
        return range(self.start, self.problem.P + 1)

    def __getitem__(self, p: int):
        if not self.start <= p <= self.problem.P:
            raise IndexError(f"order {p} outside {self.start}..{self.problem.P}")
        return self.coefficients[p - self.start]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def truncated(self, P: int) -> PerturbationSeries:
        if not self.start <= P <= self.problem.P:
            raise ValueError(f"cannot truncate order-{self.problem.P} series to {P}")
        return PerturbationSeries(
            self.coefficients[: P + 1 - self.start],
            ProblemSpec(self.problem.K, P),
            self.state,
            self.start,
        )

    def as_strings(self) -> list[str]:
        fmt = format_poly if self.symbolic else format_rational
        return [fmt(c) for c in self.coefficients]


def epsilon_zero(state: StateSpec) -> Fraction:
    """Unperturbed energy -1/(2 (n_r + l + 1/2)^2) = -2/(2n-1)^2."""
    return Fraction(-2, (2 * state.n - 1) ** 2)


def epsilon_zero_symbolic() -> tuple[PolyNL, PolyNL]:
    """eps0 as a (numerator, denominator) pair of polynomials in n."""
    n = PolyNL.n()
    return PolyNL.constant(-2), (2 * n - 1) ** 2


def _scaled(domain: CoefficientDomain, table: QTable, j: int, i: int):
    """inv_eps0 * Q[j, i], defined even where Q[-1, 0] is not stored."""
    if (j, i) == (-1, 0):
        return domain.embed(Fraction(-2))
    return domain.inv_eps0 * table[j, i]


def _run(domain: CoefficientDomain, problem: ProblemSpec, eps0, extra_j: int = 0):
    if extra_j < 0:
        raise ValueError(f"extra_j must be >= 0, got {extra_j}")
    K, P = problem.K, problem.P
    xi, inv = domain.xi, domain.inv_eps0
    zero, one = domain.zero, domain.one
    eps = [eps0]
    table = QTable(problem, extra_j=extra_j)
    Q = table.entries

    for i in range(P + 1):
        if i >= 1:
            eps.append(Q[K, i - 1] * Fraction(1, i))
        if i == P:
            break

        if i == 0:
            if eps0 is not None:
                table._put(-1, 0, -2 * eps0)
        else:
            table._put(-1, i, -2 * eps[i] + (K + 2) * Q[K, i - 1])
        table._put(0, i, one if i == 0 else zero)

        for j in range(1, table.j_max(i) + 1):
            acc = -(2 * j + 1) * Q[j - 1, i]
            for m in range(1, i + 1):
                acc = acc - (2 * (j + 1)) * (eps[m] * Q[j, i - m])
            if i >= 1:
                acc = acc + (2 * j + K + 2) * Q[j + K, i - 1]
            c = j * (xi - Fraction(j * j - 1, 4))
            if j == 1 and i == 0:
                val = inv * acc + c * domain.embed(Fraction(-2))
            else:
                val = inv * (acc + c * Q[j - 2, i])
            table._put(j, i, val * Fraction(1, 2 * (j + 1)))

    return eps, table


def compute_series(
    state: StateSpec, problem: ProblemSpec, extra_j: int = 0
) -> tuple[PerturbationSeries, QTable]:
    """Exact rational eps_0..eps_P and the Q table for one state.

    ``extra_j`` widens every order of the table by that many j values
    beyond the minimal set, for residual checks at larger j.
    """
    domain = numeric_domain(state.n, state.l)
    eps, table = _run(domain, problem, epsilon_zero(state), extra_j)
    return PerturbationSeries(tuple(eps), problem, state, start=0), table


def compute_series_symbolic(
    problem: ProblemSpec, extra_j: int = 0
) -> tuple[PerturbationSeries, QTable]:
    """eps_1..eps_P as expanded polynomials in n and l."""
    eps, table = _run(symbolic_domain(), problem, None, extra_j)
    return PerturbationSeries(tuple(eps[1:]), problem, None, start=1), table


def hypervirial_residual(
    series: PerturbationSeries,
    qtable: QTable,
    state: StateSpec | None,
    problem: ProblemSpec,
    j: int,
    i: int,
):
    """lam^i coefficient of the hypervirial relation at index ``j``.

    The relation is

        2j eps Q[j-1] + (j-1)(j(j-2)/4 - xi) Q[j-3] + (2j-1) Q[j-2]
            - (2j+K) lam Q[j+K-1] = 0.

    Numeric mode returns the coefficient itself.  Symbolic mode returns it
    multiplied by 1/eps0 (a nonzero polynomial), which keeps the result
    inside the polynomial ring; zero either way iff the relation holds.
    """
    if j < 1 or i < 0:
        raise ValueError(f"need j >= 1 and i >= 0, got j={j}, i={i}")
    if i > series.order:
        raise TableRangeError(f"eps_{i} is outside the series (P={series.order})")
    K = problem.K
    if state is None:
        domain = symbolic_domain()
    else:
        domain = numeric_domain(state.n, state.l)
    inv = domain.inv_eps0

    total = 2 * j * qtable[j - 1, i]
    tail = domain.zero
    for m in range(1, i + 1):
        tail = tail + series[m] * qtable[j - 1, i - m]
    tail = 2 * j * tail
    if i >= 1:
        tail = tail - (2 * j + K) * qtable[j + K - 1, i - 1]
    total = total + inv * tail
    total = total + (2 * j - 1) * _scaled(domain, qtable, j - 2, i)
    if j >= 2:
        c = (j - 1) * (Fraction(j * (j - 2), 4) - domain.xi)
        total = total + c * _scaled(domain, qtable, j - 3, i)

    if domain.eps0 is not None:
        return domain.eps0 * total
    return total


def hellmann_feynman_defect(series: PerturbationSeries, qtable: QTable) -> list:
    """``i * eps_i - Q[K, i-1]`` for every computed order i >= 1."""
    K = series.problem.K
    return [i * series[i] - qtable[K, i - 1] for i in range(1, series.order + 1)]
