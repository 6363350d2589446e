from fractions import Fraction

import mpmath
import numpy as np
import pytest

from hpmkit.hpm import ProblemSpec, StateSpec, compute_series, epsilon_zero
from hpmkit.oracle import (
    GridSpec,
    OracleError,
    default_grid,
    refine,
    relative_error,
    ritz_matrices,
    solve_radial,
    solve_radial_ritz,
)
from hpmkit.series import optimal_truncation, partial_sum_exact


def exact_level(n_r, ell):
    return float(epsilon_zero(StateSpec(n_r, ell)))


@pytest.mark.parametrize("n_r, ell", [(0, 0), (0, 1)])
def test_coulomb_limit_on_fine_grid(n_r, ell):
    res = refine(solve_radial(0.0, ell, n_r, grid=default_grid(n_r + ell + 1, points=16000)))
    assert relative_error(res.epsilon, exact_level(n_r, ell)) < 1e-6
    assert res.node_count == n_r


def test_refine_moves_toward_exact():
    res = solve_radial(0.0, 0, 0)
    ref = refine(res)
    assert abs(ref.epsilon + 2) < abs(res.epsilon + 2)
    assert ref.grid.points == 2 * res.grid.points


def test_second_order_convergence():
    r0 = solve_radial(0.0, 0, 0, grid=default_grid(1, points=2000))
    r1 = refine(r0)
    r2 = refine(r1)
    errs = [abs(r.raw_epsilon + 2) for r in (r0, r1, r2)]
    assert 3.5 < errs[0] / errs[1] < 4.5
    assert 3.5 < errs[1] / errs[2] < 4.5


def test_refine_keeps_converged():
    res = solve_radial(0.0, 1, 0, grid=default_grid(2, points=16000))
    assert res.converged
    again = refine(res)
    assert again.converged and again.residual_norm < res.residual_norm
    assert refine(again).converged


def test_monotone_in_field():
    levels = [refine(solve_radial(lam, 0, 0)).epsilon for lam in (0.0, 1e-3, 1e-2, 1e-1)]
    assert all(b > a for a, b in zip(levels, levels[1:]))


@pytest.mark.parametrize("n_r, ell", [(0, 0), (1, 0), (2, 0), (3, 0), (1, 2), (2, 1)])
def test_node_count(n_r, ell):
    res = solve_radial(0.01, ell, n_r)
    assert res.node_count == n_r


def test_general_K():
    # K = 1 at lam = 0.01 sits close to eps_0 + eps_1 lam
    series, _ = compute_series(StateSpec(0, 0), ProblemSpec(1, 3))
    res = refine(solve_radial(1e-3, 0, 0, K=1))
    assert abs(res.epsilon - float(partial_sum_exact(series, Fraction(1, 1000), 3))) < 1e-8


def test_small_box_is_not_converged():
    res = solve_radial(0.0, 0, 2, grid=GridSpec(q_max=8.0, points=4000))
    assert not res.tail_ok and not res.converged


def test_bad_inputs():
    with pytest.raises(ValueError):
        solve_radial(-1e-3, 0, 0)
    with pytest.raises(ValueError):
        GridSpec(q_max=10.0, points=50)
    with pytest.raises(ValueError):
        GridSpec(q_max=0.0)
    with pytest.raises(ValueError):
        GridSpec(q_max=1.0, scheme="numerov")
    with pytest.raises(OracleError):
        solve_radial(0.0, 0, 500, grid=GridSpec(q_max=10.0, points=400))


def test_fd_agrees_with_series_within_its_own_resolution():
    series, _ = compute_series(StateSpec(0, 0), ProblemSpec(2, 20))
    tr = optimal_truncation(series, 1e-3)
    res = refine(solve_radial(1e-3, 0, 0))
    assert abs(res.epsilon - float(partial_sum_exact(series, 1e-3, tr.order))) < 1e-9


def test_ritz_matrices_are_symmetric():
    S, H = ritz_matrices(Fraction(1, 10), 1, 2, 5, Fraction(2, 3))
    assert all(S[a][b] == S[b][a] and H[a][b] == H[b][a] for a in range(5) for b in range(5))


@pytest.mark.slow
def test_ritz_coulomb_limit_is_exact():
    res = solve_radial_ritz(0, 2, 1, basis_size=12)
    with mpmath.workdps(50):
        assert abs(res.epsilon - mpmath.mpf(-2) / 49) < mpmath.mpf(10) ** -40
    assert res.converged and res.node_count == 1 and res.method == "ritz"


@pytest.mark.slow
@pytest.mark.parametrize("n_r, ell", [(0, 0), (1, 1)])
def test_ritz_and_finite_differences_agree(n_r, ell):
    fd = refine(solve_radial(0.01, ell, n_r))
    rz = solve_radial_ritz(Fraction(1, 100), ell, n_r)
    assert abs(float(rz.epsilon) - fd.epsilon) < fd.residual_norm + rz.residual_norm
    assert rz.node_count == fd.node_count == n_r


def test_ritz_bad_inputs():
    with pytest.raises(ValueError):
        solve_radial_ritz(-1, 0, 0)
    with pytest.raises(OracleError):
        solve_radial_ritz(0, 0, 5, basis_size=5)
