# Checking the series against a direct solve of the radial equation.
#
# Two independent solvers: a second-order finite-difference scheme (floats,
# quick) and a Rayleigh-Ritz solve in a Slater basis (mpmath, slow but good
# to ~50 digits).  Neither uses the perturbation recurrence.

from fractions import Fraction

import mpmath

from hpmkit import ProblemSpec, StateSpec, compute_series, epsilon_zero
from hpmkit.oracle import refine, solve_radial, solve_radial_ritz
from hpmkit.series import optimal_truncation, partial_sum_exact

# Field-free limit: the FD solver should land on -2/(2n-1)^2.
for n_r, l in [(0, 0), (1, 0), (0, 1), (2, 1)]:
    res = refine(solve_radial(0.0, l, n_r))
    exact = float(epsilon_zero(StateSpec(n_r, l)))
    print(f"n_r={n_r} l={l}: fd {res.epsilon:.10f}  exact {exact:.10f}  nodes {res.node_count}")

# At lam = 1e-2 the series band is ~1e-17, so here the gap measures the
# FD solver (good to ~1e-10 after one refine), not the series.
series, _ = compute_series(StateSpec(0, 0), ProblemSpec(2, 20))
lam = 0.01
fd = refine(solve_radial(lam, 0, 0))
tr = optimal_truncation(series, Fraction(1, 100))
est = float(partial_sum_exact(series, Fraction(1, 100), tr.order))
print(f"lam=0.01: fd {fd.epsilon:.12f}  series {est:.12f}  band {tr.error_estimate:.1e}")

# At lam = 1e-3 the first omitted term is ~6e-38, far below float rounding.
# The Ritz solver resolves it.
lam = Fraction(1, 1000)
rz = solve_radial_ritz(lam, 0, 0)
tr = optimal_truncation(series, lam)
est = partial_sum_exact(series, lam, tr.order)
with mpmath.workdps(60):
    gap = abs(rz.epsilon - mpmath.mpf(est.numerator) / est.denominator)
print("ritz  ", mpmath.nstr(rz.epsilon, 45))
print(f"gap {float(gap):.3e} vs 3 x band {3 * tr.error_estimate:.3e}")
