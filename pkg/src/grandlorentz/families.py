"""Test functions and seeded random corpora."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rearrange import DyadicStepFunction

PARETO_INDEX = 1.5
FAMILY_KINDS = ("power", "lacunary", "spike", "flat")


@dataclass(frozen=True)
class ExtremalFamily:
    """power(beta): cell means of t^-beta; lacunary(gamma): 2^(-gamma j) on the j-th dyadic block;
    spike: one unit cell; flat: f = 1.  ``level`` is the dyadic level of the generated function."""

    kind: str
    param: float = 0.0
    level: int = 10

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family {self.kind!r}")
        if self.kind == "power" and not self.param < 1:
            raise ValueError("power family needs beta < 1")
        if self.level < 0:
            raise ValueError("level must be >= 0")

    @property
    def label(self) -> str:
        if self.kind in ("power", "lacunary"):
            return f"{self.kind}({self.param:g})"
        return self.kind

    def member(self) -> DyadicStepFunction:
        n = 1 << self.level
        if self.kind == "power":
            return power_function(self.param, self.level)
        if self.kind == "lacunary":
            k = np.arange(1, n + 1)
            block = np.floor(np.log2(k))
            return DyadicStepFunction(self.level, 2.0 ** (-self.param * block))
        if self.kind == "spike":
            v = np.zeros(n)
            v[0] = 1.0
            return DyadicStepFunction(self.level, v)
        return DyadicStepFunction(self.level, np.ones(n))


def power_function(beta: float, level: int) -> DyadicStepFunction:
    """Exact cell averages of t^-beta, beta < 1."""
    if not beta < 1:
        raise ValueError("need beta < 1")
    n = 1 << level
    t = np.arange(n + 1, dtype=float) / n
    e = 1.0 - beta
    return DyadicStepFunction(level, n * np.diff(t**e) / e)


def _heavy_tailed(rng: np.random.Generator, size: int) -> np.ndarray:
    moduli = rng.pareto(PARETO_INDEX, size) + 1.0
    signs = rng.choice((-1.0, 1.0), size)
    return moduli * signs


def random_step_function(rng: np.random.Generator, level: int) -> DyadicStepFunction:
    return DyadicStepFunction(level, _heavy_tailed(rng, 1 << level))


def random_sequence(rng: np.random.Generator, max_len: int = 128) -> np.ndarray:
    return _heavy_tailed(rng, int(rng.integers(1, max_len + 1)))


def function_corpus(seed: int, count: int, level: int = 8) -> list[tuple[str, DyadicStepFunction]]:
    """Family members first, then random heavy-tailed functions, ``count`` in total."""
    families = [
        ExtremalFamily("flat", level=level),
        ExtremalFamily("spike", level=level),
        ExtremalFamily("power", 0.3, level),
        ExtremalFamily("power", 0.6, level),
        ExtremalFamily("lacunary", 0.5, level),
    ]
    out = [(fam.label, fam.member()) for fam in families[:count]]
    rng = np.random.default_rng(seed)
    for i in range(count - len(out)):
        out.append((f"random[{i}]", random_step_function(rng, level)))
    return out


def sequence_corpus(seed: int, count: int, max_len: int = 128) -> list[np.ndarray]:
    rng = np.random.default_rng(seed)
    return [random_sequence(rng, max_len) for _ in range(count)]
