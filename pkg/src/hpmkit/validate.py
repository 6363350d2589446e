"""Self-contained validation against the embedded reference data."""

from __future__ import annotations

from dataclasses import dataclass

from hpmkit.exact import format_poly, format_rational
from hpmkit.hpm import (
    ProblemSpec,
    StateSpec,
    compute_series,
    compute_series_symbolic,
    hellmann_feynman_defect,
    hypervirial_residual,
)
from hpmkit.reference import REFERENCE, REFERENCE_DIGEST, ReferenceData


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def reference_checks(reference: ReferenceData = REFERENCE) -> list[Check]:
    """One check per published coefficient: 20 numeric and 4 symbolic."""
    checks = []
    n_ref = len(reference.coeffs_n1_l0)
    series, _ = compute_series(StateSpec(0, 0), ProblemSpec(2, n_ref))
    for p, want in enumerate(reference.coeffs_n1_l0, start=1):
        got = series[p]
        detail = "" if got == want else f"computed {format_rational(got)} != reference {format_rational(want)}"
        checks.append(Check(f"eps_{p} (n=1, l=0, K=2)", got == want, detail))
    s_ref = len(reference.symbolic_eps)
    sym, _ = compute_series_symbolic(ProblemSpec(2, s_ref))
    for p, want in enumerate(reference.symbolic_eps, start=1):
        got = sym[p]
        detail = "" if got == want else f"computed {format_poly(got)} != reference {format_poly(want)}"
        checks.append(Check(f"symbolic eps_{p} (K=2)", got == want, detail))
    return checks


RESIDUAL_STATES = (StateSpec(0, 0), StateSpec(1, 0), StateSpec(1, 2))


def residual_checks(j_max: int = 6, i_max: int = 6) -> list[Check]:
    """Hypervirial residuals and the Hellmann-Feynman identity, K = 1 and 2."""
    checks = []
    for K in (1, 2):
        # the relation at (j, i) reads Q[j+K-1, i-1], which needs P >= i + j/K
        P = i_max + 1 + -(-(j_max + K - 1) // K)
        problem = ProblemSpec(K, P)
        for state in RESIDUAL_STATES:
            series, table = compute_series(state, problem)
            bad = [
                (j, i)
                for j in range(1, j_max + 1)
                for i in range(i_max + 1)
                if hypervirial_residual(series, table, state, problem, j, i) != 0
            ]
            tag = f"n_r={state.n_r}, l={state.l}, K={K}"
            checks.append(Check(f"hypervirial residuals j<={j_max}, i<={i_max} ({tag})", not bad,
                                f"nonzero at {bad[:3]}" if bad else ""))
            hf = [i for i, d in enumerate(hellmann_feynman_defect(series, table), start=1) if d != 0]
            checks.append(Check(f"Hellmann-Feynman i*eps_i = Q[K,i-1] ({tag})", not hf,
                                f"fails at i={hf[:3]}" if hf else ""))
    return checks


def agreement_checks(orders: range, states: list[tuple[int, int]], K: int = 2) -> list[Check]:
    """Symbolic eps_p evaluated at (n, l) against the numeric run, exactly."""
    P = max(orders)
    sym, _ = compute_series_symbolic(ProblemSpec(K, P))
    checks = []
    for n, l in states:  # noqa: E741
        state = StateSpec.from_n(n, l)
        num, _ = compute_series(state, ProblemSpec(K, P))
        bad = [p for p in orders if p >= 1 and sym[p].evaluate(n, l) != num[p]]
        checks.append(Check(f"symbolic == numeric, orders {orders.start}..{P} (n={n}, l={l})",
                            not bad, f"differs at orders {bad}" if bad else ""))
    return checks


def checksum_check(reference: ReferenceData) -> Check:
    digest = reference.digest()
    return Check("reference data checksum", digest == REFERENCE_DIGEST,
                 "" if digest == REFERENCE_DIGEST else f"got {digest[:16]}...")


def run_validation(
    reference: ReferenceData = REFERENCE,
    orders: range | None = None,
    states: list[tuple[int, int]] | None = None,
) -> list[Check]:
    checks = [checksum_check(reference)]
    checks += reference_checks(reference)
    checks += residual_checks()
    if orders is not None or states is not None:
        checks += agreement_checks(orders or range(1, 9), states or [(1, 0), (2, 0), (2, 1), (3, 2)])
    return checks
