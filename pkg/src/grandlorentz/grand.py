"""Grand Lorentz quasi-norms: suprema over eps in (0, 1) of eps-shifted norms.

The supremum is searched on a logarithmic eps grid (dense near 0, where the
eps**theta factor competes with the blow-up of the shifted norm) and then
refined with bounded Brent iterations between the neighbours of the best
grid point.  The profile need not be unimodal, which is why the grid comes
first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from .rearrange import DyadicStepFunction, cesaro_means, decreasing_rearrangement
from .tails import certified_power_tail

inf = math.inf
EPS_MIN = 1e-9


@dataclass(frozen=True)
class EpsSearch:
    grid_size: int = 2048
    refine_tol: float = 1e-8
    eps_min: float = EPS_MIN

    def __post_init__(self):
        if self.grid_size < 3:
            raise ValueError("eps grid needs at least 3 points")

    def grid(self, hi: float) -> np.ndarray:
        return np.geomspace(self.eps_min, hi, self.grid_size)


DEFAULT_SEARCH = EpsSearch()


@dataclass
class EpsProfile:
    """Sampled Phi(eps) with the located extremum and its bracket."""

    eps_values: np.ndarray
    profile_values: np.ndarray
    argmax_eps: float
    sup_value: float
    lower: float = math.nan
    upper: float = math.nan
    boundary: str = ""
    max_rel_width: float = 0.0
    note: str = ""
    sense: str = "max"

    def rows(self):
        for e, v in zip(self.eps_values, self.profile_values):
            yield float(e), float(v)


# A profile returns (value, lower, upper) arrays for an eps array.
Profile = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]


def _point_profile(func: Callable[[np.ndarray], np.ndarray]) -> Profile:
    def wrapped(eps):
        v = func(eps)
        return v, v, v

    return wrapped


def optimize_eps(
    profile: Profile,
    hi: float = 1.0 - EPS_MIN,
    search: EpsSearch = DEFAULT_SEARCH,
    extra=(),
    sense: str = "max",
) -> EpsProfile:
    """Extremum of ``profile`` over eps in [search.eps_min, hi].

    ``extra`` adds candidate points to the grid (for instance the maximiser
    of a quantity being compared against this one).
    """
    grid = search.grid(hi)
    extra = [e for e in extra if search.eps_min <= e <= hi]
    if extra:
        grid = np.unique(np.concatenate([grid, extra]))
    vals, lows, highs = profile(grid)
    sign = 1.0 if sense == "max" else -1.0
    finite = np.isfinite(vals)
    with np.errstate(invalid="ignore"):
        widths = np.where(finite & (vals != 0), (highs - lows) / np.where(vals != 0, vals, 1), 0.0)
    max_w = float(np.max(np.abs(widths))) if widths.size else 0.0
    if sense == "max" and not np.all(finite):
        i = int(np.argmax(~finite))
        return EpsProfile(grid, vals, float(grid[i]), inf, inf, inf, "", max_w, "divergent", sense)
    i = int(np.argmax(sign * vals))
    best_eps, best_val = float(grid[i]), float(vals[i])
    if 0 < i < grid.size - 1 and np.all(finite):
        lo_u, hi_u = math.log(grid[i - 1]), math.log(grid[i + 1])

        def objective(u):
            return -sign * float(profile(np.array([math.exp(u)]))[0][0])

        res = minimize_scalar(
            objective,
            bounds=(lo_u, hi_u),
            method="bounded",
            options={"xatol": search.refine_tol * 1e-2},
        )
        cand = -sign * float(res.fun)
        if sign * cand > sign * best_val:
            best_eps, best_val = math.exp(float(res.x)), cand
    _, lo_b, hi_b = profile(np.array([best_eps]))
    if sense == "max":
        upper = max(float(hi_b[0]), float(np.max(highs)))
    else:
        upper = float(hi_b[0])
    boundary = ""
    if i == 0:
        boundary = "lower"
    elif i == grid.size - 1:
        boundary = "upper"
    return EpsProfile(
        grid, vals, best_eps, best_val, float(lo_b[0]), upper, boundary, max_w, "", sense
    )


def maximize_eps(func: Callable[[np.ndarray], np.ndarray], **kw) -> EpsProfile:
    """Maximise a plain vectorised eps -> value function."""
    return optimize_eps(_point_profile(func), **kw)


def eps_argmax_analytic(n: int, p: float, q: float) -> float:
    """Stationary point (1/p - 1/q)/ln n of eps^(1/p-1/q) * n^(-eps), clamped into (0, 1)."""
    if n < 2:
        raise ValueError("need n >= 2 (ln n = 0 otherwise)")
    if not 1 <= p < q:
        raise ValueError("need 1 <= p < q")
    c = 1.0 / p - (0.0 if q == inf else 1.0 / q)
    return min(max(c / math.log(n), EPS_MIN), 1.0 - EPS_MIN)


def _recip(x: float) -> float:
    return 0.0 if math.isinf(x) else 1.0 / x


def grand_fun_profile(f: DyadicStepFunction, p: float, q: float, theta: float) -> Profile:
    """Phi(eps) = eps^theta * ||t^eps f*||_{L_{p,q}}, exact per cell."""
    v = f.sorted_moduli()
    v = v[v > 0]
    n_cells = f.n_cells
    rp = _recip(p)
    i = np.arange(1, v.size + 1, dtype=float)
    t = i / n_cells
    log_t = np.log(t)

    def profile(eps):
        eps = np.asarray(eps, dtype=float)
        if v.size == 0:
            z = np.zeros_like(eps)
            return z, z, z
        shift = rp + eps[:, None]
        if q == inf:
            vals = np.max(np.exp(shift * log_t) * v, axis=1)
        else:
            beta = q * shift
            w = np.exp(beta * log_t)
            w[:, 1:] *= -np.expm1(beta[:, :1] * np.log1p(-1.0 / i[1:]))
            vals = (np.sum(v**q * w, axis=1) / beta[:, 0]) ** (1.0 / q)
        out = eps**theta * vals
        return out, out, out

    return profile


def grand_fun_norm(
    f: DyadicStepFunction, p: float, q: float, theta: float, search: EpsSearch = DEFAULT_SEARCH
) -> tuple[float, EpsProfile]:
    """||f||_{G^theta L_{p,q}}."""
    if theta < 0:
        raise ValueError("theta must be >= 0")
    prof = optimize_eps(grand_fun_profile(f, p, q, theta), search=search)
    return prof.sup_value, prof


def grand_seq_star_profile(a, p: float, q: float, theta: float, alpha: float) -> Profile:
    """Phi(eps) = eps^theta (sum_k (k^(1/p-eps) C_k)^q / k)^(1/q), C_k the alpha-Cesaro mean."""
    s = decreasing_rearrangement(a)
    s = s[s > 0]
    n = s.size
    rp, ra = _recip(p), 1.0 / alpha
    if n:
        means = cesaro_means(s, alpha, n)
        log_k = np.log(np.arange(1, n + 1, dtype=float))
        log_c = np.log(means)
        total = float(np.sum(s**alpha))

    def profile(eps):
        eps = np.asarray(eps, dtype=float)
        if n == 0:
            z = np.zeros_like(eps)
            return z, z, z
        weight = eps**theta
        if q == inf:
            grows = rp - ra - eps > 0
            expo = (rp - eps[:, None]) * log_k + log_c
            vals = np.exp(np.max(expo, axis=1))
            vals = np.where(grows, inf, vals) * weight
            return vals, vals, vals
        x = q * (ra - rp + eps)
        ok = x > 0
        head = np.zeros_like(eps)
        if n > 1:
            expo = (q * (rp - eps[:, None]) - 1.0) * log_k[:-1] + q * log_c[:-1]
            head = np.exp(expo).sum(axis=1)
        tv = np.full_like(eps, inf)
        tlo, thi = tv.copy(), tv.copy()
        if np.any(ok):
            tv[ok], tlo[ok], thi[ok] = certified_power_tail(x[ok], n)
        coef = total ** (q / alpha)
        out = [weight * (head + coef * t) ** (1.0 / q) for t in (tv, tlo, thi)]
        return tuple(out)

    return profile


def grand_seq_star_norm(
    a,
    p: float,
    q: float,
    theta: float,
    alpha: float | None = None,
    search: EpsSearch = DEFAULT_SEARCH,
    extra=(),
) -> tuple[float, EpsProfile]:
    """||a||_{G^theta l*_{p,q}} with inner Cesaro exponent alpha.

    alpha defaults to 2 when p == 2 and to p otherwise.
    """
    if theta < 0:
        raise ValueError("theta must be >= 0")
    if alpha is None:
        alpha = 2.0 if p == 2 else p
    rp, rq = _recip(p), _recip(q)
    s = decreasing_rearrangement(a)
    nonzero = bool(s.size and s[0] > 0)
    gap = rp - 1.0 / alpha
    if nonzero and q != inf and gap > 0:
        prof = optimize_eps(grand_seq_star_profile(a, p, q, theta, alpha), search=search)
        prof.note = f"tail diverges for eps <= 1/p - 1/alpha = {gap:.6g}"
        prof.sup_value = prof.lower = prof.upper = inf
        return inf, prof
    prof = optimize_eps(grand_seq_star_profile(a, p, q, theta, alpha), search=search, extra=extra)
    if nonzero and q != inf and gap == 0 and theta < rq:
        prof.note = "eps^theta * (q eps)^(-1/q) is unbounded as eps -> 0 (theta < 1/q)"
        prof.sup_value = prof.upper = inf
        return inf, prof
    return prof.sup_value, prof
