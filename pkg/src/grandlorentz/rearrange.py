"""Rearrangements of finite sequences and dyadic step functions.

A step function at level L lives on N = 2**L equal cells of [0, 1].  Its
decreasing rearrangement holds the sorted moduli v_1 >= ... >= v_N, with v_i
on the cell ((i-1)/N, i/N].  Point evaluations f*(j/N) use the value of the
cell ending at j/N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DyadicStepFunction:
    """Piecewise constant function, ``values[i]`` held on [i/N, (i+1)/N)."""

    level: int
    values: np.ndarray

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be non-negative")
        vals = np.asarray(self.values)
        if vals.ndim != 1 or vals.size != 2**self.level:
            raise ValueError(
                f"expected {2**self.level} values at level {self.level}, got {vals.size}"
            )
        if not np.iscomplexobj(vals):
            vals = vals.astype(float)
        if not np.all(np.isfinite(vals)):
            raise ValueError("step function values must be finite")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_values(cls, values) -> DyadicStepFunction:
        vals = np.asarray(values)
        level = int(round(np.log2(vals.size))) if vals.size else -1
        return cls(level, vals)

    @property
    def n_cells(self) -> int:
        return self.values.size

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.values)

    def sorted_moduli(self) -> np.ndarray:
        return decreasing_rearrangement(self.values)

    def __add__(self, other: DyadicStepFunction) -> DyadicStepFunction:
        if other.level != self.level:
            raise ValueError("level mismatch")
        return DyadicStepFunction(self.level, self.values + other.values)

    def scaled(self, c) -> DyadicStepFunction:
        return DyadicStepFunction(self.level, c * self.values)

    def lp_norm(self, p: float) -> float:
        """Exact L_p([0,1]) norm (sup norm for p = inf)."""
        m = self.moduli
        if np.isinf(p):
            return float(m.max())
        return float(np.mean(m**p)) ** (1.0 / p)


def decreasing_rearrangement(a) -> np.ndarray:
    """Moduli of ``a`` sorted non-increasingly (stable on ties)."""
    m = np.abs(np.asarray(a).ravel())
    order = np.argsort(-m, kind="stable")
    return m[order].astype(float)


def step_rearrangement(f: DyadicStepFunction) -> DyadicStepFunction:
    return DyadicStepFunction(f.level, f.sorted_moduli())


def distribution_function(f: DyadicStepFunction, lam: float) -> float:
    """Measure of {x : |f(x)| > lam}."""
    if lam < 0:
        raise ValueError("distribution function needs lam >= 0")
    return np.count_nonzero(f.moduli > lam) / f.n_cells


def rearrangement_at(f: DyadicStepFunction, t: float) -> float:
    """f*(t) for 0 < t <= 1, using the value of the cell containing t from the left."""
    if not 0 < t <= 1:
        raise ValueError("t must lie in (0, 1]")
    v = f.sorted_moduli()
    i = int(np.ceil(t * f.n_cells - 1e-12))
    return float(v[max(i, 1) - 1])


def split_at_level(f: DyadicStepFunction, k: int) -> tuple[DyadicStepFunction, DyadicStepFunction]:
    """Cut f at the height f*(2**-k) into a peak part f0 and a truncated part f1.

    Where |f| >= f*(2**-k) the modulus is lowered to that height in f1 and the
    excess goes to f0; phases are preserved so that f0 + f1 == f.
    """
    if k < 0:
        raise ValueError("cut index k must be non-negative")
    if k > f.level:
        raise ValueError(f"cut 2**-{k} is finer than the grid 2**-{f.level}")
    height = f.sorted_moduli()[f.n_cells // 2**k - 1]
    m = f.moduli
    phase = np.where(m > 0, f.values / np.where(m > 0, m, 1.0), 1.0)
    top = m >= height
    f1_vals = np.where(top, height * phase, f.values)
    f0_vals = np.where(top, f.values - height * phase, 0.0)
    return DyadicStepFunction(f.level, f0_vals), DyadicStepFunction(f.level, f1_vals)


def cesaro_mean(a, alpha: float, k: int) -> float:
    """((1/k) * sum_{m <= min(k, n)} (a*_m)**alpha) ** (1/alpha)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    s = decreasing_rearrangement(a)[:k]
    return (float(np.sum(s**alpha)) / k) ** (1.0 / alpha)


def cesaro_means(a_star: np.ndarray, alpha: float, kmax: int) -> np.ndarray:
    """Vector of cesaro means for k = 1..kmax from an already sorted a*."""
    padded = np.zeros(kmax)
    m = min(kmax, a_star.size)
    padded[:m] = a_star[:m]
    csum = np.cumsum(padded**alpha)
    return (csum / np.arange(1, kmax + 1)) ** (1.0 / alpha)
