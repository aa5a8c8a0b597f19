import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import cell_quad, star_oracle
from strategies import nonzero_sequences, step_functions

from grandlorentz.grand import (
    EpsSearch,
    eps_argmax_analytic,
    grand_fun_norm,
    grand_fun_profile,
    grand_seq_star_norm,
    grand_seq_star_profile,
    maximize_eps,
    optimize_eps,
)
from grandlorentz.rearrange import DyadicStepFunction

inf = math.inf


def constant_sup(p, q, theta):
    """sup over (0, 1] of eps^theta (q (1/p + eps))^(-1/q), the profile of f = 1."""
    if theta * q < 1:
        eps = min(theta * q / (p * (1 - theta * q)), 1.0)
    else:
        eps = 1.0
    return eps**theta * (q * (1 / p + eps)) ** (-1 / q)


@pytest.mark.parametrize("p,q,theta", [(1, 1, 1), (2, 2, 0.25), (2, 4, 0.1), (1.5, 3, 0.5), (3, 1, 0)])
def test_grand_norm_of_constant(p, q, theta):
    f = DyadicStepFunction(3, np.ones(8))
    value, prof = grand_fun_norm(f, p, q, theta)
    assert value == pytest.approx(constant_sup(p, q, theta), rel=1e-8)


def test_theta_one_p_one_q_one_is_one_half():
    value, prof = grand_fun_norm(DyadicStepFunction(0, [1.0]), 1, 1, 1)
    assert value == pytest.approx(0.5, rel=1e-8)
    assert prof.boundary == "upper"


@given(step_functions(max_level=3), st.floats(0.01, 0.99), st.sampled_from([(2.0, 2.0), (1.0, 3.0), (2.0, inf)]))
@settings(deadline=None, max_examples=30)
def test_grand_fun_profile_matches_quadrature(f, eps, pq):
    p, q = pq
    got = grand_fun_profile(f, p, q, 0.5)(np.array([eps]))[0][0]
    if q == inf:
        v = sorted(np.abs(f.values), reverse=True)
        n = len(v)
        exact = max(((i + 1) / n) ** (1 / p + eps) * c for i, c in enumerate(v))
    else:
        exact = cell_quad(f, lambda t, c: t ** (q / p + q * eps - 1) * c**q) ** (1 / q)
    assert got == pytest.approx(eps**0.5 * exact, rel=1e-9)


@given(nonzero_sequences, st.floats(0.05, 0.9))
@settings(deadline=None, max_examples=30)
def test_grand_seq_profile_is_shifted_star_norm(a, eps):
    p, q, theta, alpha = 2.0, 3.0, 0.5, 2.0
    got = grand_seq_star_profile(a, p, q, theta, alpha)(np.array([eps]))[0][0]
    assert got == pytest.approx(eps**theta * star_oracle(a, p, q, alpha, rp=1 / p - eps), rel=1e-9)


def test_grand_seq_norm_dominates_dense_grid():
    rng = np.random.default_rng(5)
    for _ in range(3):
        a = rng.pareto(1.5, 30) + 1
        value, prof = grand_seq_star_norm(a, 2.0, 4.0, 0.5, 2.0)
        eps = np.linspace(1e-4, 1 - 1e-4, 80)
        dense = [e**0.5 * star_oracle(a, 2.0, 4.0, 2.0, rp=0.5 - e) for e in eps]
        assert value >= max(dense) * (1 - 1e-12)
        at_arg = prof.argmax_eps**0.5 * star_oracle(a, 2.0, 4.0, 2.0, rp=0.5 - prof.argmax_eps)
        assert value == pytest.approx(at_arg, rel=1e-9)


def test_grand_seq_norm_divergence():
    assert grand_seq_star_norm([1.0, 2.0], 1.5, 2.0, 1.0, 2.0)[0] == inf
    # gap = 0 and theta < 1/q: eps^theta (q eps)^(-1/q) blows up
    assert grand_seq_star_norm([1.0], 2.0, 4.0, 0.1, 2.0)[0] == inf
    assert grand_seq_star_norm([0.0], 2.0, 4.0, 0.1, 2.0)[0] == 0.0
    with pytest.raises(ValueError):
        grand_seq_star_norm([1.0], 2.0, 4.0, -1.0)


@given(st.floats(1.0, 5.0), st.floats(0.1, 10.0), st.integers(2, 10**8))
@settings(deadline=None)
def test_optimizer_reaches_analytic_maximum(p, dq, n):
    q = p + dq
    c = 1 / p - 1 / q
    eps = eps_argmax_analytic(n, p, q)
    analytic = eps**c * n ** (-eps)
    got = maximize_eps(lambda e: e**c * np.exp(-e * math.log(n))).sup_value
    assert got == pytest.approx(analytic, rel=1e-6)
    assert got <= analytic * (1 + 1e-12)


def test_minimisation_and_extra_candidates():
    prof = optimize_eps(lambda e: ((e - 0.3) ** 2 + 1,) * 3, sense="min", search=EpsSearch(grid_size=16))
    assert prof.sup_value == pytest.approx(1.0, abs=1e-12)
    assert prof.argmax_eps == pytest.approx(0.3, abs=1e-5)
    spike = lambda e: (np.where(np.abs(e - 0.123456) < 1e-12, 2.0, 1.0),) * 3  # noqa: E731
    hit = optimize_eps(spike, search=EpsSearch(grid_size=16), extra=[0.123456])
    assert hit.sup_value == 2.0


def test_search_and_analytic_validation():
    with pytest.raises(ValueError):
        EpsSearch(grid_size=2)
    with pytest.raises(ValueError):
        eps_argmax_analytic(1, 1.0, 2.0)
    with pytest.raises(ValueError):
        eps_argmax_analytic(10, 2.0, 2.0)
    assert eps_argmax_analytic(2, 1.0, inf) == pytest.approx(1 - 1e-9)
