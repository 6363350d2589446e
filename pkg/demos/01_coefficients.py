# Exact weak-field coefficients for the 2D hydrogen ground state.
#
# The energy in units of Z^2 Hartree expands as eps(lam) = sum_p eps_p lam^p
# with lam = (B/B0)^2 / (8 Z^4).  Every eps_p is an exact rational.

from hpmkit import ProblemSpec, StateSpec, compute_series

state = StateSpec(n_r=0, l=0)
series, table = compute_series(state, ProblemSpec(K=2, P=12))

for p, c in zip(series.orders(), series):
    print(f"eps_{p:<2} = {str(c):>40}   ~ {float(c): .6e}")

# The Q table holds the lam^i coefficients of <q^j>.  Order zero gives the
# unperturbed moments, e.g. <q> = 1/2 and <q^2> = 3/8 for this state.
print("<q>_0   =", table[1, 0])
print("<q^2>_0 =", table[2, 0])

# Signs alternate and magnitudes grow factorially: the series diverges.
big, _ = compute_series(state, ProblemSpec(K=2, P=60))
print("digits in numerator of eps_60:", len(str(abs(big[60].numerator))))

# Other states and powers of q work the same way.  K=1 is a linear potential.
excited, _ = compute_series(StateSpec(n_r=1, l=2), ProblemSpec(K=1, P=4))
print("n_r=1, l=2, K=1:", excited.as_strings())
