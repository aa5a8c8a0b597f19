"""Independent reference computations (high precision or brute force)."""

import mpmath
import numpy as np
from scipy.integrate import quad


def hurwitz(x, K):
    """sum_{k>=K} k^(-1-x): zeta(1+x) minus the explicit head at 220 digits.

    mpmath's two-argument zeta drifts by ~1e-10 relative for large s, so it
    is only used where it agrees with this (small s, large K).
    """
    if K > 2000:
        with mpmath.workdps(50):
            return float(mpmath.zeta(1 + mpmath.mpf(x), K))
    with mpmath.workdps(220):
        s = 1 + mpmath.mpf(x)
        return float(mpmath.zeta(s) - mpmath.fsum(mpmath.mpf(k) ** -s for k in range(1, K)))


def sorted_moduli(a):
    return sorted((abs(complex(x)) for x in np.ravel(a)), reverse=True)


def cell_quad(f, func, n_cells=None):
    """sum over cells of quad(func(t, value)) for a step function's rearrangement."""
    v = sorted_moduli(f.values)
    n = len(v)
    return sum(quad(lambda t, c=c: func(t, c), i / n, (i + 1) / n, epsabs=0, epsrel=1e-13)[0] for i, c in enumerate(v))


def star_oracle(a, p, q, alpha, rp=None):
    """Starred norm; ``rp`` overrides 1/p (it may be <= 0)."""
    rp = 1 / p if rp is None else rp
    s = [x for x in sorted_moduli(a) if x > 0]
    n = len(s)
    head, acc = 0.0, 0.0
    for k in range(1, n):
        acc += s[k - 1] ** alpha
        head += k ** (q * rp - 1) * (acc / k) ** (q / alpha)
    total = acc + s[-1] ** alpha
    return (head + total ** (q / alpha) * hurwitz(q * (1 / alpha - rp), n)) ** (1 / q)
