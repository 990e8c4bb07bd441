"""Tutte-coefficient identities and the graded Euler characteristic recursion."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .arrangement import Arrangement, TuttePoly, tutte
from .series import LaurentSeries


# -- Brylawski-type linear relations -------------------------------------------


def brylawski_sum(T: TuttePoly, n: int, r: int, k: int) -> int:
    """sum_{i=0}^{k} (-1)^i sum_{u=0}^{r-k+i} C(r-u, k-i) t_{u, n-r-i}."""
    total = 0
    for i in range(k + 1):
        v = n - r - i
        if v < 0:
            continue
        inner = sum(comb(r - u, k - i) * T.coeff(u, v) for u in range(0, r - k + i + 1))
        total += (-1) ** i * inner
    return total


def brylawski_check(arr: Arrangement) -> list[bool]:
    """One verdict per k = 1..n-1."""
    T = tutte(arr)
    return [brylawski_sum(T, arr.n, arr.r, k) == 0 for k in range(1, arr.n)]


@dataclass
class BetaReport:
    beta: int
    beta_dual: int
    bridge_dims: tuple | None = None  # dims at (n-r, r-1) and (n-r-1, r)
    d_rank: int | None = None

    @property
    def passed(self) -> bool:
        ok = self.beta == self.beta_dual
        if self.bridge_dims is not None:
            ok = ok and self.bridge_dims == (self.beta, self.beta_dual) and self.d_rank == self.beta
        return ok

    def to_json(self) -> dict:
        return {"beta": self.beta, "beta_dual": self.beta_dual,
                "bridge_dims": list(self.bridge_dims) if self.bridge_dims else None,
                "d_rank": self.d_rank, "passed": self.passed}


def beta_duality_check(arr: Arrangement, with_super: bool = True) -> BetaReport:
    """beta = t_{1,0}, beta* = t_{0,1}; optionally the superspace bidegrees carrying them."""
    T = tutte(arr)
    rep = BetaReport(T.coeff(1, 0), T.coeff(0, 1))
    if with_super:
        from .super_zonotopal import SuperZonotopal
        sz = SuperZonotopal(arr, -1)
        n, r = arr.n, arr.r
        a, b = n - r, r - 1
        dim_ab = sz.quotient_dim(a, b) if a >= 0 and b >= 0 else 0
        dim_top = sz.quotient_dim(a - 1, b + 1) if a >= 1 else 0
        rep.bridge_dims = (dim_ab, dim_top)
        rep.d_rank = sz.d_rank(a, b) if a >= 1 and b >= 0 else 0
    return rep


# -- Euler characteristic recursion -----------------------------------------


def _binom_neg_ok(top: int, d: int) -> int:
    """C(top, d) with C(-1, 0) = 1 and C(-1, d) = 0 for d > 0."""
    if top < 0:
        return 1 if d == 0 else 0
    return comb(top, d)


def projective_chi(rho: int, m: int) -> LaurentSeries:
    """Graded Euler characteristic of O(m) on a projective space of dimension rho."""
    if m >= 0:
        return LaurentSeries.from_dict({d: _binom_neg_ok(rho - 1 + d, d) for d in range(m + 1)})
    if m >= -rho:
        return LaurentSeries()
    sign = -1 if rho & 1 else 1
    return LaurentSeries.from_dict(
        {-d - rho: sign * _binom_neg_ok(rho - 1 + d, d) for d in range(-m - rho)}
    )


def euler_char_LM(arr: Arrangement, k: int, order: Sequence[int] | None = None) -> LaurentSeries:
    """chi(L) = chi(L/i) + q chi(L - i), on matroid minors via the rank oracle.

    ``order`` fixes the preference order of elements to recurse on.
    """
    n = arr.n
    order = list(order) if order is not None else []
    order += [e for e in range(n) if e not in order]
    full = (1 << n) - 1
    rank_of = arr.rank_of
    m = k + 1
    memo: dict = {}

    def rec(C: int, D: int) -> LaurentSeries:
        key = (C, D)
        if key in memo:
            return memo[key]
        rest = full & ~(C | D)
        rkC = rank_of(C)
        rest_rank = rank_of(rest | C) - rkC
        pick = None
        coloops = 0
        for e in order:
            if not (rest >> e) & 1:
                continue
            bit = 1 << e
            if rank_of(C | bit) == rkC:
                continue  # loop
            if rank_of((rest & ~bit) | C) - rkC < rest_rank:
                coloops += 1
                continue
            pick = e
            break
        if pick is None:
            out = projective_chi(coloops, m)
        else:
            bit = 1 << pick
            out = rec(C | bit, D) + rec(C, D | bit).shift(1)
        memo[key] = out
        return out

    return rec(0, 0)


def euler_consistency(arr: Arrangement) -> bool:
    from .zonotopal import zonotopal_hilbert
    return all(
        euler_char_LM(arr, k) == zonotopal_hilbert(arr, k).series() for k in (-1, -2)
    )


def hyperplane_shadow(rho: int, m: int) -> bool:
    """chi(P^rho, m) - q chi(P^rho, m-1) = chi(P^(rho-1), m)."""
    lhs = projective_chi(rho, m) - projective_chi(rho, m - 1).shift(1)
    return lhs == projective_chi(rho - 1, m)
