"""Upper bounds for the K-functional of a couple of grand Lorentz sequence spaces.

X_i = G^(1/p) l*_{p,q_i} with inner exponent p.  K(t, a) is an infimum
over all splits a = a0 + a1; here it is bounded above by the minimum over
a finite family of truncations of the rearranged moduli, so every
quantity built from ``k_upper`` overestimates its exact counterpart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grand import EpsSearch, grand_seq_star_norm
from .norms import dyadic_block_sups, lambda_estimate
from .rearrange import decreasing_rearrangement
from .report import TRIVIAL, CheckReport, ratio_report

inf = math.inf
KFUN_SEARCH = EpsSearch(grid_size=512)
UPPER_NOTE = "K replaced by a truncation-family upper bound"


@dataclass(frozen=True)
class KCouple:
    p: float
    q0: float
    q1: float

    def __post_init__(self):
        if not 1 <= self.p < self.q0 < self.q1 <= inf:
            raise ValueError("need 1 <= p < q0 < q1 <= inf")

    @property
    def gap(self) -> float:
        """1/q0 - 1/q1."""
        return 1.0 / self.q0 - (0.0 if self.q1 == inf else 1.0 / self.q1)

    @property
    def b(self) -> float:
        return 2.0**self.gap

    def target_q(self, eta: float) -> float:
        """1/q = (1 - eta)/q0 + eta/q1."""
        if not 0 < eta < 1:
            raise ValueError("eta must lie in (0, 1)")
        rq1 = 0.0 if self.q1 == inf else 1.0 / self.q1
        return 1.0 / ((1.0 - eta) / self.q0 + eta * rq1)

    def member_norm(self, a, i: int, search: EpsSearch = KFUN_SEARCH) -> float:
        q = self.q0 if i == 0 else self.q1
        return grand_seq_star_norm(a, self.p, q, 1.0 / self.p, self.p, search)[0]


@dataclass
class KProfile:
    """Member norms of every split in the truncation family.

    Split (j, lam): a0 = (a*_1 - lam, ..., a*_j - lam, 0, ...) with
    lam in {0, a*_{j+1}}, a1 = a* - a0.
    """

    couple: KCouple
    cuts: np.ndarray
    shifts: np.ndarray
    norm0: np.ndarray
    norm1: np.ndarray

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        vals = self.norm0[:, None] + np.multiply.outer(self.norm1, np.atleast_1d(t))
        out = vals.min(axis=0)
        return out if t.ndim else float(out[0])

    def argmin(self, t: float) -> tuple[int, float]:
        i = int(np.argmin(self.norm0 + t * self.norm1))
        return int(self.cuts[i]), float(self.shifts[i])


def decompositions(a):
    """Yield (j, lam, a0, a1) over the truncation family, on the rearranged moduli."""
    s = decreasing_rearrangement(a)
    n = s.size
    nxt = np.append(s[1:], 0.0)
    seen = set()
    for j in range(n + 1):
        shifts = (0.0, float(nxt[j - 1])) if j and nxt[j - 1] > 0 else (0.0,)
        for lam in shifts:
            a0 = np.zeros(n)
            a0[:j] = np.maximum(s[:j] - lam, 0.0)
            key = a0.tobytes()
            if key in seen:
                continue
            seen.add(key)
            yield j, lam, a0, s - a0


def k_profile(a, c: KCouple, search: EpsSearch = KFUN_SEARCH) -> KProfile:
    cuts, shifts, n0, n1 = [], [], [], []
    for j, lam, a0, a1 in decompositions(a):
        cuts.append(j)
        shifts.append(lam)
        n0.append(c.member_norm(a0, 0, search))
        n1.append(c.member_norm(a1, 1, search))
    if not cuts:
        cuts, shifts, n0, n1 = [0], [0.0], [0.0], [0.0]
    return KProfile(c, np.array(cuts), np.array(shifts), np.array(n0), np.array(n1))


def k_upper(t: float, a, c: KCouple, profile: KProfile | None = None) -> float:
    """min over the family of ||a0||_X0 + t ||a1||_X1, an upper bound for K(t, a)."""
    if not t > 0:
        raise ValueError("t must be > 0")
    profile = profile or k_profile(a, c)
    return profile(t)


def interp_norm_upper(
    a, c: KCouple, eta: float, tau: float, profile: KProfile | None = None, rel_tail: float = 1e-12
) -> float:
    """(sum_{k>=0} (b^(-eta k) k_upper(b^k))^tau)^(1/tau), sup over k for tau = inf.

    Summation stops once the geometric bound b^(-eta k) ||a||_X0 on the
    remaining terms is below rel_tail of the running total.
    """
    c.target_q(eta)
    if not tau > 0:
        raise ValueError("tau must be > 0")
    profile = profile or k_profile(a, c)
    full = float(profile.norm0.max())  # the split a0 = a* is in the family
    if full == 0:
        return 0.0
    b = c.b
    total, k = 0.0, 0
    while True:
        term = b ** (-eta * k) * profile(b**k)
        if tau == inf:
            total = max(total, term)
            if b ** (-eta * (k + 1)) * full <= rel_tail * total:
                return total
        else:
            total += term**tau
            ratio = b ** (-eta * tau)
            bound = (b ** (-eta * (k + 1)) * full) ** tau / (1.0 - ratio)
            if bound <= rel_tail * total:
                return total ** (1.0 / tau)
        k += 1


def gor_chain_check(a, c: KCouple, eta: float, tau: float, extra_k: int = 8) -> CheckReport:
    """Report-only comparison of the dyadic embedding chain.

    Per k: k^(1/q) M_k against t^(-eta) k_upper(t) with t = k^(1/q0 - 1/q1),
    M_k the dyadic block supremum.  Aggregate: ||a||_{Lambda_{p,q,tau}}
    against interp_norm_upper.  Because k_upper >= K, both ratios are lower
    bounds for the exact ones.
    """
    q = c.target_q(eta)
    params = {"p": c.p, "q0": c.q0, "q1": c.q1, "eta": eta, "tau": tau, "q": q}
    s = decreasing_rearrangement(a)
    s = s[s > 0]
    if s.size == 0:
        return CheckReport("gor_chain", params, 0.0, 0.0, "free", None, None, TRIVIAL, notes=UPPER_NOTE)
    profile = k_profile(s, c)
    sups, m1, total = dyadic_block_sups(s, c.p)
    ks = np.arange(1, m1 + extra_k + 1, dtype=float)
    beyond = (total / ks[m1:]) ** (1.0 / c.p)
    m_k = np.concatenate([sups, beyond])
    t = ks**c.gap
    per_k = ks ** (1.0 / q) * m_k / (t ** (-eta) * profile(t))
    lhs = lambda_estimate(s, c.p, q, tau).value
    rhs = interp_norm_upper(s, c, eta, tau, profile)
    rep = ratio_report("gor_chain", params, lhs, rhs, notes=UPPER_NOTE)
    rep.extras["per_k_max_ratio"] = float(per_k.max())
    return rep
