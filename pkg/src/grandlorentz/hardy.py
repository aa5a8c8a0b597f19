"""Hardy inequalities for f* in head and tail form, and their grand corollaries.

Left-hand sides are integrated directly from the sorted cell values: the
inner integrals F(t) = int_0^t f*^r and G(t) = int_t^1 f*^r are piecewise
linear, the outer integral is closed form on the cells where the integrand
is singular and Gauss-Legendre elsewhere.  Right-hand sides go through the
norm modules, so the two sides share no intermediate values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import beta as beta_fn
from scipy.special import betaincc, hyp2f1

from .grand import DEFAULT_SEARCH, EPS_MIN, EpsSearch, grand_fun_profile, optimize_eps
from .norms import lorentz_fun_norm
from .rearrange import DyadicStepFunction
from .report import DIVERGENT, CheckReport, known_constant_report, ratio_report

inf = math.inf
REL_TOL = 1e-10
_NODES = 16


@dataclass(frozen=True)
class HardyParams:
    alpha: float
    r: float
    q: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be > 0")
        if not 0 < self.r <= self.q:
            raise ValueError("need 0 < r <= q")


@lru_cache(maxsize=None)
def _gauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def _cells_integral(lo, hi, integrand):
    """Gauss-Legendre over cells [lo_j, hi_j] with a node-doubling error estimate.

    ``integrand(t)`` takes t of shape (cells, nodes) and returns (..., cells, nodes).
    Returns (integral summed over cells, error estimate).
    """
    if np.size(lo) == 0:
        return 0.0, 0.0
    h = hi - lo
    results = []
    for n in (_NODES, 2 * _NODES):
        x, w = _gauss(n)
        t = lo[:, None] + h[:, None] * x
        results.append(np.sum(integrand(t) * w * h[:, None], axis=(-1, -2)))
    return results[1], np.abs(results[1] - results[0])


def _sorted(f: DyadicStepFunction):
    v = f.sorted_moduli()
    n = v.size
    t = np.arange(0, n + 1) / n
    return v, t


def head_lhs(f: DyadicStepFunction, alpha: float, r: float, q: float) -> tuple[float, float]:
    """(int_0^1 (t^-alpha (int_0^t f*^r)^(1/r))^q dt/t)^(1/q) and its quadrature error."""
    v, t = _sorted(f)
    if v[0] == 0:
        return 0.0, 0.0
    gamma = q * (1.0 / r - alpha)
    if gamma <= 0:
        return inf, 0.0
    first = v[0] ** q * t[1] ** gamma / gamma
    F = np.concatenate([[0.0], np.cumsum(v**r) / v.size])
    c = q / r

    def integrand(tt):
        Ft = F[1:-1, None] + (v[1:, None] ** r) * (tt - t[1:-1, None])
        return tt ** (-alpha * q - 1.0) * Ft**c

    rest, err = _cells_integral(t[1:-1], t[2:], integrand)
    total = first + rest
    return total ** (1.0 / q), err / max(total, 1e-300) / q * total ** (1.0 / q)


class _PowerMoments:
    """s -> sum over cells of int t^s g(t) dt, for a g that does not depend on s.

    Node values of log t and g are fixed once for both Gauss rules, so each
    evaluation is one exp and one matrix-vector product.
    """

    def __init__(self, lo, hi, g):
        self.rules = []
        if np.size(lo) == 0:
            return
        h = hi - lo
        for n in (_NODES, 2 * _NODES):
            x, w = _gauss(n)
            t = lo[:, None] + h[:, None] * x
            self.rules.append((np.log(t).ravel(), (g(t) * w * h[:, None]).ravel()))

    def __call__(self, s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        if not self.rules:
            z = np.zeros_like(s)
            return z, z
        coarse, fine = (np.exp(np.multiply.outer(s, lt)) @ wg for lt, wg in self.rules)
        return fine, np.abs(fine - coarse)


def tail_moments(f: DyadicStepFunction, r: float, c: float):
    """Callable s -> (int_0^1 t^(s-1) G(t)^c dt, quadrature error), G(t) = int_t^1 f*^r, s > 0."""
    v, t = _sorted(f)
    last = int(np.count_nonzero(v)) - 1
    if last < 0:
        return lambda s: (np.zeros(np.size(s)), np.zeros(np.size(s)))
    n = v.size
    vr = v**r
    G = np.concatenate([np.cumsum(vr[::-1])[::-1] / n, [0.0]])  # G[i] = G(t_i)
    # cell where G reaches 0: G = v^r (t_J - t)
    tj, tj0 = t[last + 1], t[last]
    x0 = tj0 / tj
    # first cell: G = A - B t on (0, t_1]
    A, B, h = G[0], vr[0], t[1]
    lo, hi = t[1:last], t[2 : last + 1]
    Gc, vc = G[2 : last + 1], vr[1:last]
    mid = _PowerMoments(lo, hi, lambda tt: (Gc[:, None] + vc[:, None] * (hi[:, None] - tt)) ** c / tt)

    def moments(s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        vanish = v[last] ** (r * c) * tj ** (s + c) * beta_fn(s, c + 1.0)
        if x0 > 0:
            vanish = vanish * betaincc(s, c + 1.0, x0)
        if last == 0:
            return vanish, np.zeros_like(s)
        first = A**c * h**s / s * hyp2f1(-c, s, s + 1.0, B * h / A)
        rest, err = mid(s)
        return vanish + first + rest, err

    return moments


def tail_profile_integrals(f: DyadicStepFunction, r: float, c: float, s):
    """int_0^1 t^(s-1) G(t)^c dt, G(t) = int_t^1 f*^r, vectorised over s > 0."""
    return tail_moments(f, r, c)(s)


def tail_lhs(f: DyadicStepFunction, alpha: float, r: float, q: float) -> tuple[float, float]:
    """(int_0^1 (t^alpha (int_t^1 f*^r)^(1/r))^q dt/t)^(1/q); sup form for q = inf."""
    if q == inf:
        return _tail_sup(f, alpha, r), 0.0
    vals, err = tail_profile_integrals(f, r, q / r, [alpha * q])
    total = float(vals[0])
    if total == 0:
        return 0.0, 0.0
    return total ** (1.0 / q), float(err[0]) / total / q * total ** (1.0 / q)


def _tail_sup(f: DyadicStepFunction, alpha: float, r: float) -> float:
    """sup_t t^alpha G(t)^(1/r), G linear on each cell."""
    v, t = _sorted(f)
    if v[0] == 0:
        return 0.0
    n = v.size
    vr = v**r
    G = np.concatenate([np.cumsum(vr[::-1])[::-1] / n, [0.0]])
    ar = alpha * r
    A = G[1:] + vr * t[1:]  # G(t) = A - B t on cell i
    B = vr
    cands = [t[1:], t[:-1]]
    with np.errstate(divide="ignore", invalid="ignore"):
        star = ar * A / (B * (ar + 1.0))
    inside = (B > 0) & (star > t[:-1]) & (star < t[1:])
    cands.append(np.where(inside, star, t[1:]))
    best = 0.0
    for tc in cands:
        Gt = np.clip(A - B * tc, 0.0, None)
        best = max(best, float(np.max(tc**alpha * Gt ** (1.0 / r))))
    return best


def _divergent_report(name, params, note) -> CheckReport:
    return CheckReport(name, params, inf, math.nan, "free", None, None, DIVERGENT, notes=note)


def hardy_head_check(f: DyadicStepFunction, hp: HardyParams) -> CheckReport:
    alpha, r, q = hp.alpha, hp.r, hp.q
    params = {"alpha": alpha, "r": r, "q": q}
    if q == inf:
        raise ValueError("head form is stated for q < inf")
    const = (r * alpha) ** (-1.0 / r)
    lhs, err = head_lhs(f, alpha, r, q)
    if math.isinf(lhs):
        return _divergent_report(
            "hardy_head", params, "alpha >= 1/r: int_0 t^(q/r - alpha q - 1) dt diverges"
        )
    shift = 1.0 / r - alpha
    rhs = const * lorentz_fun_norm(f, 1.0 / shift, q)
    rep = known_constant_report("hardy_head", params, lhs, rhs, const, REL_TOL)
    rep.extras["quad_err"] = err
    return rep


def hardy_tail_check(f: DyadicStepFunction, hp: HardyParams) -> CheckReport:
    alpha, r, q = hp.alpha, hp.r, hp.q
    params = {"alpha": alpha, "r": r, "q": q}
    const = (r * alpha) ** (-1.0 / r)
    lhs, err = tail_lhs(f, alpha, r, q)
    rhs = const * lorentz_fun_norm(f, 1.0 / (1.0 / r + alpha), q)
    rep = known_constant_report("hardy_tail", params, lhs, rhs, const, REL_TOL)
    rep.extras["quad_err"] = err
    return rep


def head_corollary_profile(f: DyadicStepFunction, r: float, q: float, theta: float):
    """eps^-theta (int_0^1 t^-eps (int_0^t f*^r)^(1/r) dt)^(1/q), as printed."""
    v, t = _sorted(f)
    F = np.concatenate([[0.0], np.cumsum(v**r) / v.size])
    rest = _PowerMoments(
        t[1:-1], t[2:], lambda tt: (F[1:-1, None] + (v[1:, None] ** r) * (tt - t[1:-1, None])) ** (1.0 / r)
    )

    def profile(eps):
        eps = np.asarray(eps, dtype=float)
        if v[0] == 0:
            z = np.zeros_like(eps)
            return z, z, z
        e1 = 1.0 / r + 1.0 - eps
        first = v[0] * t[1] ** e1 / e1
        out = eps ** (-theta) * (first + rest(-eps)[0]) ** (1.0 / q)
        return out, out, out

    return profile


def hardy_grand_head_check(
    f: DyadicStepFunction, r: float, q: float, theta: float, search: EpsSearch = DEFAULT_SEARCH
) -> CheckReport:
    """inf_{0<eps<=1/r} eps^-theta (...)^(1/q) <= ||f||_{G^(-theta1) L_{r,q}}, theta1 = theta + 1/r."""
    if not 0 < r <= q < inf:
        raise ValueError("need 0 < r <= q < inf")
    if theta < 0:
        raise ValueError("theta must be >= 0")
    theta1 = theta + 1.0 / r
    params = {"r": r, "q": q, "theta": theta}
    left = optimize_eps(head_corollary_profile(f, r, q, theta), hi=1.0 / r, search=search, sense="min")
    right = optimize_eps(grand_fun_profile(f, r, q, -theta1), search=search)
    note = "rhs grows like eps^-theta1 as eps -> 0; reported at the search floor"
    if right.sup_value == 0:
        note = ""
    rep = known_constant_report("hardy_grand_head", params, left.sup_value, right.sup_value, 1.0, REL_TOL, note)
    rep.extras.update(lhs_eps=left.argmax_eps, rhs_eps=right.argmax_eps)
    return rep


def tail_corollary_profile(f: DyadicStepFunction, r: float, q: float, theta1: float):
    """eps^theta1 (int_0^1 (t^eps (int_t^1 f*^r)^(1/r))^q dt/t)^(1/q)."""
    moments = tail_moments(f, r, q / r)

    def profile(eps):
        eps = np.asarray(eps, dtype=float)
        vals, _ = moments(q * eps)
        out = eps**theta1 * vals ** (1.0 / q)
        return out, out, out

    return profile


def hardy_grand_tail_check(
    f: DyadicStepFunction, r: float, q: float, theta: float, search: EpsSearch = DEFAULT_SEARCH
) -> CheckReport:
    """sup_{0<eps<1/r} eps^theta1 (...)^(1/q) <= ||f||_{G^theta L_{r,q}}, theta1 = theta + 1/r.

    Gating for r >= 1 only; for r < 1 the ratio is reported.
    """
    if not 0 < r <= q < inf:
        raise ValueError("need 0 < r <= q < inf")
    if theta < 0:
        raise ValueError("theta must be >= 0")
    theta1 = theta + 1.0 / r
    params = {"r": r, "q": q, "theta": theta}
    left = optimize_eps(tail_corollary_profile(f, r, q, theta1), hi=1.0 / r - EPS_MIN, search=search)
    right = optimize_eps(grand_fun_profile(f, r, q, theta), search=search, extra=[left.argmax_eps])
    if r < 1:
        # pointwise the tail form only gives the factor r^(-1/r) > 1, and
        # eps in [1, 1/r) has no counterpart on the right
        rep = ratio_report(
            "hardy_grand_tail", params, left.sup_value, right.sup_value,
            notes="r < 1: constant 1 not established; ratio reported",
        )
    else:
        rep = known_constant_report(
            "hardy_grand_tail", params, left.sup_value, right.sup_value, 1.0, REL_TOL
        )
    rep.extras.update(lhs_eps=left.argmax_eps, rhs_eps=right.argmax_eps)
    return rep
