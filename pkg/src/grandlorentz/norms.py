"""Lorentz-type quasi-norms of finite sequences and dyadic step functions.

Infinite sums over k reduce, beyond the support of the sequence, to power
tails c * sum_k k^(-1-x); those are evaluated through
:mod:`grandlorentz.tails` and reported with a two-sided bracket.
``math.inf`` is the sentinel for both an infinite exponent and a divergent
norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rearrange import DyadicStepFunction, cesaro_means, decreasing_rearrangement
from .tails import Estimate, certified_power_tail, divergent, exact

inf = math.inf


def _check_exponent(name: str, value: float) -> None:
    if not value > 0:
        raise ValueError(f"{name} must be positive (or inf), got {value}")


def _recip(x: float) -> float:
    return 0.0 if math.isinf(x) else 1.0 / x


@dataclass(frozen=True)
class NormParams:
    p: float
    q: float
    tau: float | None = None
    inner_alpha: float = 2.0

    def __post_init__(self):
        _check_exponent("p", self.p)
        _check_exponent("q", self.q)
        if self.tau is not None:
            _check_exponent("tau", self.tau)
        if self.inner_alpha < 1:
            raise ValueError("inner_alpha must be >= 1")

    @property
    def conjugate(self) -> float:
        return conjugate(self.p)


def conjugate(p: float) -> float:
    """p' = p / (p - 1), defined for p > 1."""
    if not p > 1:
        raise ValueError("conjugate exponent needs p > 1")
    return 1.0 if p == inf else p / (p - 1.0)


def _finish(total: Estimate, q: float) -> Estimate:
    return total.power(1.0 / q)


def lorentz_seq_norm(a, p: float, q: float) -> float:
    """||a||_{l_{p,q}} = (sum_k (k^(1/p) a*_k)^q / k)^(1/q); sup form for q = inf."""
    _check_exponent("p", p)
    _check_exponent("q", q)
    s = decreasing_rearrangement(a)
    if s.size == 0 or s[0] == 0:
        return 0.0
    k = np.arange(1, s.size + 1, dtype=float)
    if q == inf:
        return float(np.max(k ** _recip(p) * s))
    terms = k ** (q * _recip(p) - 1.0) * s**q
    return math.fsum(terms) ** (1.0 / q)


def lorentz_seq_star_estimate(a, p: float, q: float, alpha: float = 2.0) -> Estimate:
    """Starred l*_{p,q} norm: a*_k replaced by the alpha-Cesaro mean of a*_1..a*_k."""
    _check_exponent("p", p)
    _check_exponent("q", q)
    s = decreasing_rearrangement(a)
    s = s[s > 0]
    if s.size == 0:
        return exact(0.0)
    n = s.size
    total = float(np.sum(s**alpha))
    rp, ra = _recip(p), 1.0 / alpha
    means = cesaro_means(s, alpha, n)
    k = np.arange(1, n + 1, dtype=float)
    if q == inf:
        if rp - ra > 0:
            return divergent(f"k^(1/p - 1/alpha) grows: 1/p - 1/alpha = {rp - ra:.6g} > 0")
        return exact(float(np.max(k**rp * means)))
    x = q * (ra - rp)
    if x <= 0:
        return divergent(
            f"tail terms ~ k^({-1 - x:.6g}) are not summable: need 1/p < 1/alpha"
        )
    head = math.fsum(k[:-1] ** (q * rp - 1.0) * means[:-1] ** q)
    tv, tlo, thi = certified_power_tail([x], n)
    coef = total ** (q / alpha)
    est = Estimate(
        float(head + coef * tv[0]), float(head + coef * tlo[0]), float(head + coef * thi[0])
    )
    return _finish(est, q)


def lorentz_seq_star_norm(a, p: float, q: float, alpha: float = 2.0) -> float:
    return lorentz_seq_star_estimate(a, p, q, alpha).value


def _cell_weights(n_cells: int, beta: float) -> np.ndarray:
    """(i/N)^beta - ((i-1)/N)^beta for i = 1..N without cancellation."""
    i = np.arange(1, n_cells + 1, dtype=float)
    t = i / n_cells
    w = t**beta
    w[1:] *= -np.expm1(beta * np.log1p(-1.0 / i[1:]))
    return w


def lorentz_fun_norm(f: DyadicStepFunction, p: float, q: float) -> float:
    """||f||_{L_{p,q}} by exact integration of t^(q/p - 1) over each cell."""
    _check_exponent("p", p)
    _check_exponent("q", q)
    v = f.sorted_moduli()
    if v[0] == 0:
        return 0.0
    n = v.size
    t = np.arange(1, n + 1) / n
    if q == inf:
        return float(np.max(t ** _recip(p) * v))
    if p == inf:
        return inf
    beta = q / p
    w = _cell_weights(n, beta)
    return (math.fsum(v**q * w) / beta) ** (1.0 / q)


@dataclass(frozen=True)
class XiSequence:
    """Dyadic block integrals xi_m = (int_{2^-m-1}^{2^-m} f*^p)^(1/p), m = 0..L-1.

    ``residual`` carries the first cell [0, 2^-L], so that
    sum(xi**p) + residual**p == ||f||_p^p.
    """

    xi: np.ndarray
    residual: float
    p: float

    def entries(self) -> np.ndarray:
        return np.concatenate([self.xi, [self.residual]])


def xi_coefficients(f: DyadicStepFunction, p: float) -> XiSequence:
    if not 0 < p < inf:
        raise ValueError("xi coefficients need 0 < p < inf")
    v = f.sorted_moduli()
    n = v.size
    cell_mass = v**p / n
    xi = np.empty(f.level)
    for m in range(f.level):
        lo, hi = n >> (m + 1), n >> m
        xi[m] = math.fsum(cell_mass[lo:hi]) ** (1.0 / p)
    return XiSequence(xi, float(cell_mass[0]) ** (1.0 / p), p)


def lpqtau_fun_norm(f: DyadicStepFunction, p: float, q: float, tau: float) -> float:
    """l_{q,tau} quasi-norm of the dyadic block sequence xi(f)."""
    return lorentz_seq_norm(xi_coefficients(f, p).entries(), q, tau)


def dyadic_block_sups(a_star: np.ndarray, p: float) -> tuple[np.ndarray, int, float]:
    """M_k = sup_{m>=k} ((1/m) sum_{l<=2^m} (a*_l)^p)^(1/p) for k = 1..m1.

    Beyond m1 = max(1, ceil(log2 n)) the block sums are saturated at
    S = sum (a*)^p and M_k = (S/k)^(1/p).  Returns (M, m1, S).
    """
    n = a_star.size
    m1 = max(1, math.ceil(math.log2(n))) if n else 1
    powers = np.cumsum(a_star**p)
    total = float(powers[-1]) if n else 0.0
    m = np.arange(1, m1 + 1)
    block = powers[np.minimum(2**m, n) - 1] if n else np.zeros(m1)
    ratios = (block / m) ** (1.0 / p)
    suffix = np.maximum.accumulate(ratios[::-1])[::-1]
    return suffix, m1, total


def lambda_estimate(a, p: float, q: float, tau: float) -> Estimate:
    """||a||_{Lambda_{p,q,tau}} = (sum_k (k^(1/q) M_k)^tau / k)^(1/tau)."""
    for name, val in (("p", p), ("q", q), ("tau", tau)):
        _check_exponent(name, val)
    if p == inf:
        raise ValueError("Lambda norm needs finite p")
    s = decreasing_rearrangement(a)
    s = s[s > 0]
    if s.size == 0:
        return exact(0.0)
    sups, m1, total = dyadic_block_sups(s, p)
    k = np.arange(1, m1 + 1, dtype=float)
    rq, rp = _recip(q), 1.0 / p
    if tau == inf:
        if rq > rp:
            return divergent("k^(1/q - 1/p) grows: need p <= q")
        nxt = (m1 + 1) ** rq * (total / (m1 + 1)) ** rp
        return exact(max(float(np.max(k**rq * sups)), nxt))
    x = tau * (rp - rq)
    if x <= 0:
        return divergent("tail terms are not summable: need p < q")
    head = math.fsum(k ** (tau * rq - 1.0) * sups**tau)
    tv, tlo, thi = certified_power_tail([x], m1 + 1)
    coef = total ** (tau / p)
    est = Estimate(
        float(head + coef * tv[0]), float(head + coef * tlo[0]), float(head + coef * thi[0])
    )
    return _finish(est, tau)


def lambda_norm(a, p: float, q: float, tau: float) -> float:
    return lambda_estimate(a, p, q, tau).value
