"""Certified evaluation of power tails sum_{k>=K} k^(-1-x), x > 0.

Every infinite sum in the package has, past the support of the sequence,
terms of the form c * k^(-1-x).  A two-sided bracket comes from the
Euler-Maclaurin formula, whose remainder for the completely monotone
integrand k^(-1-x) has the sign of, and is bounded by, the first omitted
term.  The Hurwitz zeta function gives an independent point value.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy.special import digamma, zeta

# Below this excess the Laurent expansion 1/x - psi(K) beats zeta(1 + x, K),
# because 1 + x already rounds away ~1e-16 / x of the excess.
_LAURENT_CUTOFF = 1e-6
# First index where the Euler-Maclaurin bracket is applied.
_EM_START = 32
# Target relative width of every certified tail bracket.
REL_WIDTH = 1e-10
_CROSSCHECK = 1e-8


class Estimate(NamedTuple):
    """A value with a two-sided bracket ``lower <= value <= upper``."""

    value: float
    lower: float
    upper: float
    note: str = ""

    @property
    def rel_width(self) -> float:
        if self.value == 0.0 or not math.isfinite(self.value):
            return 0.0
        return (self.upper - self.lower) / abs(self.value)

    def scaled(self, c: float) -> Estimate:
        return Estimate(self.value * c, self.lower * c, self.upper * c, self.note)

    def power(self, e: float) -> Estimate:
        return Estimate(self.value**e, self.lower**e, self.upper**e, self.note)


def exact(value: float, note: str = "") -> Estimate:
    return Estimate(value, value, value, note)


def divergent(note: str) -> Estimate:
    return Estimate(math.inf, math.inf, math.inf, note)


def power_tail(x, K: int) -> np.ndarray:
    """Point value of sum_{k>=K} k^(-1-x) for an array of excesses x > 0."""
    x = np.asarray(x, dtype=float)
    if K < 1:
        raise ValueError("tail start K must be >= 1")
    if np.any(x <= 0):
        raise ValueError("power tail diverges for excess x <= 0")
    out = np.empty_like(x)
    small = x < _LAURENT_CUTOFF
    out[small] = 1.0 / x[small] - digamma(K)
    out[~small] = zeta(1.0 + x[~small], K)
    return out


def power_tail_bracket(x, K: int, start=_EM_START) -> tuple[np.ndarray, np.ndarray]:
    """Euler-Maclaurin bracket (lower, upper) for sum_{k>=K} k^(-1-x).

    Terms K..M-1 are summed explicitly and the formula takes over at
    M = max(K, start); ``start`` may be an array matching x.  The bracket
    is formed by the expansions truncated after the B4 and after the B6
    term, which enclose the sum for the completely monotone k^(-1-x).
    """
    x = np.asarray(x, dtype=float)
    M = np.maximum(K, np.broadcast_to(np.asarray(start, dtype=np.int64), x.shape))
    top = int(M.max()) if M.size else K
    ks = np.arange(K, top, dtype=float)
    if ks.size:
        terms = np.exp(-np.multiply.outer(1.0 + x, np.log(ks)))
        terms = np.where(ks < M[..., None], terms, 0.0)
        head = terms.sum(axis=-1)
    else:
        head = np.zeros_like(x)
    Mf = M.astype(float)
    lnM = np.log(Mf)
    f0 = np.exp(-(1.0 + x) * lnM)
    rising3 = (1.0 + x) * (2.0 + x) * (3.0 + x)
    base = head + np.exp(-x * lnM) / x + f0 / 2.0 + (1.0 + x) * f0 / Mf / 12.0
    lower = base - rising3 * f0 / Mf**3 / 720.0
    upper = lower + rising3 * (4.0 + x) * (5.0 + x) * f0 / Mf**5 / 30240.0
    return lower, upper


def _em_start(x: np.ndarray) -> np.ndarray:
    """Start index at which the B6 term drops below REL_WIDTH of the tail integral."""
    need = x * (1.0 + x) * (2.0 + x) * (3.0 + x) * (4.0 + x) * (5.0 + x) / (30240.0 * REL_WIDTH)
    return np.maximum(_EM_START, np.ceil(need ** (1.0 / 6.0))).astype(np.int64)


def certified_power_tail(x, K: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (value, lower, upper) for sum_{k>=K} k^(-1-x).

    The Euler-Maclaurin start is chosen per entry so that the bracket is
    narrower than REL_WIDTH; the value is its midpoint.  The zeta route is
    kept as an independent cross-check.
    """
    x = np.asarray(x, dtype=float)
    start = _em_start(x)
    lower, upper = power_tail_bracket(x, K, start)
    wide = upper - lower > REL_WIDTH * lower
    while np.any(wide) and start.max() <= 2**16:
        start = np.where(wide, 2 * start, start)
        lower, upper = power_tail_bracket(x, K, start)
        wide = upper - lower > REL_WIDTH * lower
    value = 0.5 * (lower + upper)
    check = power_tail(x, K)
    if np.any(np.abs(check - value) > _CROSSCHECK * value):
        raise ArithmeticError("zeta cross-check disagrees with the Euler-Maclaurin bracket")
    return value, lower, upper
