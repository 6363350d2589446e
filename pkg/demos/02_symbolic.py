# Coefficients as polynomials in n and l.
#
# eps_0 = -2/(2n-1)^2 is not polynomial, so the symbolic run starts at eps_1
# and keeps eps_0 aside as a numerator/denominator pair.

from hpmkit import (
    ProblemSpec,
    StateSpec,
    compute_series,
    compute_series_symbolic,
    epsilon_zero_symbolic,
    format_poly,
)

num, den = epsilon_zero_symbolic()
print(f"eps_0 = ({format_poly(num)}) / ({format_poly(den)})")

sym, _ = compute_series_symbolic(ProblemSpec(K=2, P=3))
for p in sym.orders():
    text = format_poly(sym[p])
    print(f"eps_{p}: degree {sym[p].degree()}, {len(sym[p].terms)} terms")
    print("   ", text if len(text) < 110 else text[:110] + " ...")

# Substituting (n, l) reproduces the numeric run exactly.
state = StateSpec(n_r=1, l=1)
num_series, _ = compute_series(state, ProblemSpec(2, 3))
for p in sym.orders():
    print(p, sym[p].evaluate(state.n, state.l) == num_series[p])
