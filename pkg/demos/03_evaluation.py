# Turning a divergent series into a number.
#
# At small lam the terms first shrink and then blow up.  Optimal truncation
# stops before the smallest term and quotes that term as the error.  Pade
# approximants resum the same coefficients into a rational function.

from fractions import Fraction

from hpmkit import ProblemSpec, StateSpec, compute_series
from hpmkit.series import (
    FieldSpec,
    evaluate_energy,
    lambda_from_field,
    optimal_truncation,
    pade_eval,
    ratio_diagnostics,
    term_magnitudes,
)

series, _ = compute_series(StateSpec(0, 0), ProblemSpec(2, 30))

lam = Fraction(1, 20)
mags = term_magnitudes(series, lam)
print("term sizes at lam=1/20:", " ".join(f"{float(t):.1e}" for t in mags[:16]))
tr = optimal_truncation(series, lam)
print(f"optimal order {tr.order}, error estimate {tr.error_estimate:.2e}")

# Ratios |eps_{p+1}/eps_p| grow roughly linearly in p, the usual sign of
# factorial divergence with zero radius of convergence.
print("ratios:", [round(r, 2) for r in ratio_diagnostics(series)[:10]])

for L, M in [(5, 5), (10, 10), (15, 15)]:
    res = pade_eval(series, Fraction(1, 5), L, M)
    print(f"[{L}/{M}] at lam=1/5: {res.value:.12f}  near pole: {res.near_pole}")

# Physical input: field in units of B0 and nuclear charge Z.  The Zeeman
# shift m_l * sqrt(lam/2) is added on top of the diamagnetic series.
lam = lambda_from_field(FieldSpec(B_over_B0=Fraction(1, 2), Z=1))
for method in ("truncate", "optimal", "pade"):
    rep = evaluate_energy(series, lam, m_l=0, method=method)
    print(f"{method:>8}: {rep.total_dimensionless_energy:.15f} (order {rep.chosen_order})")
