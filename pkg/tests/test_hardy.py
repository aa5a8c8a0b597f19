import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from strategies import step_functions

from grandlorentz.grand import EpsSearch
from grandlorentz.hardy import (
    HardyParams,
    hardy_grand_head_check,
    hardy_grand_tail_check,
    hardy_head_check,
    hardy_tail_check,
    head_lhs,
    tail_lhs,
)
from grandlorentz.rearrange import DyadicStepFunction
from grandlorentz.report import DIVERGENT, FAIL, PASS, REPORT_ONLY, TRIVIAL

inf = math.inf
FAST = EpsSearch(grid_size=64)


def _fstar(f):
    v = np.sort(np.abs(f.values))[::-1]
    n = v.size
    return v, n, [i / n for i in range(1, n)]


def head_oracle(f, alpha, r, q):
    v, n, pts = _fstar(f)

    def F(t):
        k = int(t * n)
        return (np.sum(v[:k] ** r) + v[min(k, n - 1)] ** r * (t * n - k)) / n

    val = quad(lambda t: (t**-alpha * F(t) ** (1 / r)) ** q / t, 0, 1, points=pts, limit=400, epsrel=1e-12)[0]
    return val ** (1 / q)


def tail_oracle(f, alpha, r, q):
    v, n, pts = _fstar(f)

    def G(t):
        k = min(int(t * n), n - 1)
        return (np.sum(v[k + 1 :] ** r) + v[k] ** r * (k + 1 - t * n)) / n

    if q == inf:
        ts = np.linspace(1e-9, 1, 200001)
        return max(t**alpha * max(G(t), 0) ** (1 / r) for t in ts[::50])
    val = quad(lambda t: (t**alpha * G(t) ** (1 / r)) ** q / t, 0, 1, points=pts, limit=400, epsrel=1e-12)[0]
    return val ** (1 / q)


@given(step_functions(max_level=3), st.sampled_from([(0.1, 1.0, 2.0), (0.4, 2.0, 2.0), (0.3, 0.5, 1.0), (0.25, 1.0, 4.0)]))
@settings(deadline=None, max_examples=25)
def test_head_and_tail_lhs_match_quadrature(f, arq):
    alpha, r, q = arq
    assert head_lhs(f, alpha, r, q)[0] == pytest.approx(head_oracle(f, alpha, r, q), rel=1e-8)
    assert tail_lhs(f, alpha, r, q)[0] == pytest.approx(tail_oracle(f, alpha, r, q), rel=1e-8)


def test_tail_sup_form_against_sampling():
    f = DyadicStepFunction(2, [3.0, 1.0, 0.5, 2.0])
    got = tail_lhs(f, 0.3, 1.0, inf)[0]
    assert got >= tail_oracle(f, 0.3, 1.0, inf) * (1 - 1e-12)
    assert got == pytest.approx(tail_oracle(f, 0.3, 1.0, inf), rel=1e-6)


def test_equality_instance():
    rep = hardy_tail_check(DyadicStepFunction(0, [1.0]), HardyParams(1.0, 1.0, 1.0))
    assert rep.status == PASS
    assert abs(rep.margin) <= 1e-12


def test_head_example_values():
    rep = hardy_head_check(DyadicStepFunction(0, [1.0]), HardyParams(0.5, 1.0, 1.0))
    # int_0^1 t^(-1/2) dt = 2; rhs 0.5^(-1) ||1||_{L_{2,1}} = 2 * 2
    assert rep.lhs == pytest.approx(2.0, rel=1e-12)
    assert rep.rhs == pytest.approx(4.0, rel=1e-12)


@given(step_functions(max_level=4), st.sampled_from([0.1, 0.25, 0.4]), st.sampled_from([0.5, 1.0, 2.0]), st.sampled_from([1.0, 2.0, 4.0, inf]))
@settings(deadline=None, max_examples=60)
def test_hardy_inequalities_hold(f, alpha, r, q):
    if q < r:
        return
    hp = HardyParams(alpha, r, q)
    if q != inf:
        head = hardy_head_check(f, hp)
        assert head.status in (PASS, DIVERGENT)
        if alpha >= 1 / r:
            assert head.status == DIVERGENT
    assert hardy_tail_check(f, hp).status == PASS


@given(step_functions(max_level=3), st.sampled_from([1.0, 2.0]), st.sampled_from([2.0, 4.0]), st.sampled_from([0.0, 0.5]))
@settings(deadline=None, max_examples=20)
def test_grand_corollaries_hold_for_r_at_least_one(f, r, q, theta):
    assert hardy_grand_head_check(f, r, q, theta, FAST).status == PASS
    assert hardy_grand_tail_check(f, r, q, theta, FAST).status == PASS


def test_grand_tail_below_one_is_report_only():
    rep = hardy_grand_tail_check(DyadicStepFunction(1, [2.0, 1.0]), 0.5, 1.0, 0.0, FAST)
    assert rep.status == REPORT_ONLY and rep.ratio is not None


def test_zero_function_is_trivial():
    f = DyadicStepFunction(1, [0.0, 0.0])
    assert hardy_tail_check(f, HardyParams(0.2, 1.0, 2.0)).status == TRIVIAL


def test_validation():
    with pytest.raises(ValueError):
        HardyParams(0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        HardyParams(0.1, 2.0, 1.0)
    with pytest.raises(ValueError):
        hardy_head_check(DyadicStepFunction(0, [1.0]), HardyParams(0.1, 1.0, inf))
    assert FAIL != PASS
