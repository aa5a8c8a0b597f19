"""Fourier coefficients of dyadic step functions against orthonormal systems on [0, 1]."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.linalg import hadamard
from scipy.special import zeta

from .rearrange import DyadicStepFunction

ORTHO_TOL = 1e-10
DEFAULT_DEFECT_SHARE = 1e-6


@dataclass(frozen=True)
class OrthonormalSystem:
    """kind is "trig" (needs K), "walsh" (needs level) or "custom" (needs matrix).

    Custom rows must be orthonormal for <u, v> = (1/N) sum_i u_i conj(v_i).
    """

    kind: str
    K: int | None = None
    level: int | None = None
    matrix: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind == "trig":
            if self.K is None or self.K < 0:
                raise ValueError("trig system needs K >= 0")
        elif self.kind == "walsh":
            if self.level is None or self.level < 0:
                raise ValueError("walsh system needs level >= 0")
        elif self.kind == "custom":
            m = np.asarray(self.matrix)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise ValueError("custom system needs a square matrix")
            n = m.shape[0]
            if n & (n - 1) or n == 0:
                raise ValueError("custom matrix size must be a power of two")
            gram = m @ m.conj().T / n
            dev = float(np.max(np.abs(gram - np.eye(n))))
            if dev > ORTHO_TOL:
                raise ValueError(f"custom rows are not orthonormal (max Gram deviation {dev:.3g})")
            m = m.copy()
            m.setflags(write=False)
            object.__setattr__(self, "matrix", m)
        else:
            raise ValueError(f"unknown system kind {self.kind!r}")

    @classmethod
    def trig(cls, K: int) -> OrthonormalSystem:
        return cls("trig", K=K)

    @classmethod
    def walsh(cls, level: int) -> OrthonormalSystem:
        return cls("walsh", level=level)

    @classmethod
    def custom(cls, matrix) -> OrthonormalSystem:
        return cls("custom", matrix=np.asarray(matrix))

    @classmethod
    def from_file(cls, path) -> OrthonormalSystem:
        """Row-major whitespace-separated matrix; complex entries as Python literals (1+2j)."""
        text = Path(path).read_text().split()
        try:
            vals = np.array([float(t) for t in text])
        except ValueError:
            vals = np.array([complex(t) for t in text])
        n = math.isqrt(vals.size)
        if n * n != vals.size:
            raise ValueError(f"{path}: {vals.size} entries do not form a square matrix")
        return cls.custom(vals.reshape(n, n))


def _cell_transform(f: DyadicStepFunction) -> np.ndarray:
    """V[r] = sum_i v_i exp(-2 pi i r (i-1)/N), r = 0..N-1."""
    return np.fft.fft(np.asarray(f.values, dtype=complex))


def _factor(k: np.ndarray, n: int) -> np.ndarray:
    """int over one cell of exp(-2 pi i k x), relative to the cell's left end."""
    out = np.empty(k.shape, dtype=complex)
    zero = k == 0
    kk = k[~zero].astype(float)
    out[~zero] = -np.expm1(-2j * np.pi * kk / n) / (2j * np.pi * kk)
    out[zero] = 1.0 / n
    return out


def trig_coefficients(f: DyadicStepFunction, K: int) -> np.ndarray:
    """a_k = int_0^1 f(x) exp(-2 pi i k x) dx for k = -K..K (index k + K)."""
    if K < 0:
        raise ValueError("K must be >= 0")
    n = f.n_cells
    k = np.arange(-K, K + 1)
    return _factor(k, n) * _cell_transform(f)[k % n]


def trig_parseval_defect(f: DyadicStepFunction, K: int) -> float:
    """sum_{|k|>K} |a_k|^2, summed exactly by residue classes mod N."""
    if K < 0:
        raise ValueError("K must be >= 0")
    n = f.n_cells
    power = np.abs(_cell_transform(f)) ** 2
    r = np.arange(1, n)
    weight = np.sin(np.pi * r / n) ** 2 / np.pi**2
    total = 0.0
    # a_j and a_{-j} for j > K; a_{-j} picks up V[r] when j = -r (mod N)
    for residues in (r, (-r) % n):
        j0 = K + 1 + (residues - (K + 1)) % n
        total += float(np.sum(weight * power[r] * zeta(2.0, j0 / n))) / n**2
    return total


def auto_trig_order(f: DyadicStepFunction, share: float = DEFAULT_DEFECT_SHARE) -> int:
    """Smallest K with Parseval defect below share * ||f||_2^2."""
    target = share * f.lp_norm(2) ** 2
    if target == 0 or trig_parseval_defect(f, 0) < target:
        return 0
    hi = 1
    while trig_parseval_defect(f, hi) >= target:
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if trig_parseval_defect(f, mid) < target:
            hi = mid
        else:
            lo = mid
    return hi


def _bitrev(level: int) -> np.ndarray:
    n = 1 << level
    idx = np.arange(n)
    out = np.zeros(n, dtype=np.int64)
    for b in range(level):
        out |= ((idx >> b) & 1) << (level - 1 - b)
    return out


def _fwht(x: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform in Sylvester order."""
    x = np.array(x, dtype=np.result_type(x, float))
    n = x.size
    h = 1
    while h < n:
        y = x.reshape(-1, 2, h)
        a, b = y[:, 0, :].copy(), y[:, 1, :]
        y[:, 0, :] += b
        y[:, 1, :] = a - b
        h *= 2
    return x


def walsh_matrix(level: int) -> np.ndarray:
    """Paley-ordered Walsh functions sampled on the 2^level cells (rows)."""
    return hadamard(1 << level).astype(float)[:, _bitrev(level)]


def walsh_coefficients(f: DyadicStepFunction) -> np.ndarray:
    """All 2^L Paley-ordered Walsh coefficients, (1/N) sum_i v_i w_j(cell i)."""
    v = np.asarray(f.values)
    return _fwht(v[_bitrev(f.level)]) / f.n_cells


def ons_coefficients(f: DyadicStepFunction, system: OrthonormalSystem) -> np.ndarray:
    if system.kind == "trig":
        return trig_coefficients(f, system.K)
    if system.kind == "walsh":
        if system.level != f.level:
            raise ValueError("Walsh level does not match the step function level")
        return walsh_coefficients(f)
    m = system.matrix
    if m.shape[0] != f.n_cells:
        raise ValueError(f"matrix size {m.shape[0]} does not match {f.n_cells} cells")
    return m.conj() @ np.asarray(f.values) / f.n_cells


def parseval_defect(f: DyadicStepFunction, system: OrthonormalSystem) -> float:
    """||f||_2^2 minus the captured energy (zero for complete discrete systems)."""
    if system.kind == "trig":
        return trig_parseval_defect(f, system.K)
    coef = ons_coefficients(f, system)
    return max(f.lp_norm(2) ** 2 - math.fsum(np.abs(coef) ** 2), 0.0)


def trig_coefficient_lp_norm(f: DyadicStepFunction, s: float) -> float:
    """(sum over all k in Z of |a_k|^s)^(1/s), summed exactly by residue classes; s >= 2."""
    if not s >= 2:
        raise ValueError("need s >= 2 (the coefficient sequence is only l_2 in general)")
    n = f.n_cells
    V = _cell_transform(f)
    r = np.arange(1, n)
    amp = np.abs(np.sin(np.pi * r / n)) * np.abs(V[r]) / np.pi
    a0 = abs(V[0]) / n
    if s == np.inf:
        # |a_k| is largest at the smallest |k| in each class
        return float(max(a0, np.max(amp / np.minimum(r, n - r), initial=0.0)))
    tail = amp**s * (zeta(s, r / n) + zeta(s, (n - r) / n)) / float(n) ** s
    return (a0**s + math.fsum(tail)) ** (1.0 / s)
