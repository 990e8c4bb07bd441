"""Superspace zonotopal algebras for k <= 0 and the Boolean family for k >= 1.

The super ideal is generated by v^m and d(v^m), m = rho(v) + k + 1, over
cocircuit vectors v.  Each bidegree slice I^(i,j) is spanned by the
generators of that bidegree together with e_l I^(i-1,j) and de_l I^(i,j-1).
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from .arrangement import Arrangement, tutte
from .errors import CapExceeded, PositiveKUnsupported
from .linalg import Echelon
from .power_ideal import max_degree_override
from .series import BigradedTable
from .superspace import SuperElement, slice_basis
from .zonotopal import SequenceReport, analyze_slot, check_deletable, linear_form


class SuperZonotopal:
    def __init__(self, arr: Arrangement, k: int):
        if k >= 1:
            raise PositiveKUnsupported(
                "no generator description is available for k >= 1; use boolean_B for Boolean arrangements"
            )
        self.arr = arr
        self.k = k
        r = arr.r
        self.unit = False
        gens: list[SuperElement] = []
        exps = []
        if r >= 1:
            for cv in arr.cocircuit_vectors():
                m = cv.rho + k + 1
                exps.append(m)
                if m <= 0:
                    self.unit = True
                    continue
                p = SuperElement.linear(cv.v) ** m
                gens += [p, p.d()]
        self.generators = gens
        self.cap = r * max(exps, default=0) + 1
        override = max_degree_override()
        if override is not None:
            self.cap = override
        self._slices: dict = {}

    def slice(self, i: int, j: int) -> Echelon:
        key = (i, j)
        if key in self._slices:
            return self._slices[key]
        r = self.arr.r
        basis = slice_basis(r, i, j)
        ech = Echelon(len(basis))
        full = self.unit
        if not full and i > 0 and self.slice(i - 1, j).full and len(slice_basis(r, i - 1, j)):
            full = True
        if not full and j > 0 and self.slice(i, j - 1).full and len(slice_basis(r, i, j - 1)):
            full = True
        if full:
            for c in range(len(basis)):
                ech.add({c: Fraction(1)})
        else:
            for g in self.generators:
                if ech.full:
                    break
                part = g.component(i, j)
                if part:
                    ech.add(basis.vector(part))
            if i > 0:
                self._extend(ech, basis, slice_basis(r, i - 1, j), self.slice(i - 1, j), odd=False)
            if j > 0:
                self._extend(ech, basis, slice_basis(r, i, j - 1), self.slice(i, j - 1), odd=True)
        self._slices[key] = ech
        return ech

    def _extend(self, ech, basis, prev_basis, prev, odd: bool):
        r = self.arr.r
        for row in prev.basis():
            if ech.full:
                return
            elt = prev_basis.element(row)
            for l in range(r):
                g = (SuperElement.dvar(l, r) if odd else SuperElement.var(l, r)) * elt
                if g:
                    ech.add(basis.vector(g))

    def quotient_dim(self, i: int, j: int) -> int:
        return len(slice_basis(self.arr.r, i, j)) - self.slice(i, j).rank

    def row_length(self, j: int) -> int:
        """Number of commutative degrees with a nonzero quotient in row j."""
        i = 0
        while self.quotient_dim(i, j):
            i += 1
            if i > self.cap:
                raise CapExceeded(f"row {j} still nonzero at commutative degree cap {self.cap}")
        return i

    def table(self) -> BigradedTable:
        dims = {}
        for j in range(self.arr.r + 1):
            for i in range(self.row_length(j)):
                dims[(i, j)] = self.quotient_dim(i, j)
        return BigradedTable(self.arr.r, dims)

    def slots(self) -> list[tuple[int, int]]:
        return sorted(self.table().dims)

    def inverse_system_basis(self, i: int, j: int) -> list[SuperElement]:
        if i < 0 or j < 0 or j > self.arr.r:
            return []
        basis = slice_basis(self.arr.r, i, j)
        vecs = self.slice(i, j).complement_kernel(basis.weights())
        return [basis.element(v) for v in vecs]

    def inverse_system(self) -> dict:
        return {ij: self.inverse_system_basis(*ij) for ij in self.slots()}

    # -- d on the quotient, computed directly ---------------------------------

    def d_rank(self, i: int, j: int) -> int:
        """Rank of d: Z^(i,j) -> Z^(i-1,j+1)."""
        r = self.arr.r
        if i == 0 or j >= r:
            return 0
        src = self.slice(i, j)
        tgt = self.slice(i - 1, j + 1)
        basis = slice_basis(r, i, j)
        tbasis = slice_basis(r, i - 1, j + 1)
        work = Echelon(len(tbasis))
        for row in tgt.basis():
            work.add(row)
        base = work.rank
        for c in range(len(basis)):
            if c in src.rows:  # pivot columns are not standard monomials
                continue
            work.add(tbasis.vector(basis.element({c: Fraction(1)}).d()))
        return work.rank - base

    def d_homology_direct(self) -> BigradedTable:
        tab = self.table()
        out = {}
        for (i, j), dim in tab.dims.items():
            out[(i, j)] = dim - self.d_rank(i, j) - self.d_rank(i + 1, j - 1) if j >= 1 else dim - self.d_rank(i, j)
        return BigradedTable(self.arr.r, out)


@lru_cache(maxsize=None)
def super_algebra(arr: Arrangement, k: int) -> SuperZonotopal:
    """Shared instance per (arrangement, k); slices are filled lazily."""
    return SuperZonotopal(arr, k)


def super_zonotopal_ideal(arr: Arrangement, k: int) -> list[SuperElement]:
    return SuperZonotopal(arr, k).generators


def super_bigraded_hilbert(arr: Arrangement, k: int) -> BigradedTable:
    return super_algebra(arr, k).table()


def super_hilbert_formula(arr: Arrangement) -> BigradedTable:
    """(1+t)^r q^(n-r) T(1/(1+t), 1/q) = sum t_uv (1+t)^(r-u) q^(n-r-v)."""
    from math import comb
    dims: dict = {}
    r, n = arr.r, arr.n
    for (u, v), c in tutte(arr).coeffs:
        for j in range(r - u + 1):
            key = (n - r - v, j)
            dims[key] = dims.get(key, 0) + c * comb(r - u, j)
    return BigradedTable(r, dims)


def verify_super_hilbert_formula(arr: Arrangement) -> bool:
    return super_bigraded_hilbert(arr, -1) == super_hilbert_formula(arr)


def iota_euler_homology(spaces: dict, r: int) -> tuple[BigradedTable, bool]:
    """Homology of the d-complex on the quotient dual to ``spaces``.

    ``spaces`` maps (i, j) to a basis of the inverse-system slice.  The
    adjoint of d: Z^(i,j) -> Z^(i-1,j+1) is iota_E: C^(i-1,j+1) -> C^(i,j),
    so homology at (i,j) is dim C^(i,j) minus the ranks of iota_E out of
    C^(i-1,j+1) and out of C^(i,j).  Also reports whether iota_E preserves
    the family.
    """
    from .zonotopal import span_of, _vectorize

    ranks = {}
    closed = True
    for (i, j), elts in spaces.items():
        imgs = [g.iota_euler() for g in elts]
        ranks[(i, j)] = span_of(imgs).rank
        target = span_of(spaces.get((i + 1, j - 1), []))
        if not all(target.contains(_vectorize(x)) for x in imgs):
            closed = False
    out = {}
    for (i, j), elts in spaces.items():
        out[(i, j)] = len(elts) - ranks.get((i - 1, j + 1), 0) - ranks[(i, j)]
    return BigradedTable(r, out), closed


def d_complex_homology(arr: Arrangement, k: int) -> BigradedTable:
    sz = super_algebra(arr, k)
    table, _ = iota_euler_homology(sz.inverse_system(), arr.r)
    return table


# -- super deletion-contraction ---------------------------------------------


def default_splitting(arr: Arrangement, i: int) -> list[Fraction]:
    """v = e_j / a_ij for the first coordinate j with a_ij != 0, so a_i . v = 1."""
    a = arr.column(i)
    j = next(t for t, x in enumerate(a) if x != 0)
    return [Fraction(1) / a[j] if t == j else Fraction(0) for t in range(arr.r)]


def random_splitting(arr: Arrangement, i: int, K, rng: random.Random) -> list[Fraction]:
    """Default splitting shifted by a random vector of H_i."""
    v = default_splitting(arr, i)
    w = [Fraction(rng.randint(-50, 50)) for _ in range(arr.r - 1)]
    return [v[t] + sum((K[t][l] * w[l] for l in range(arr.r - 1)), Fraction(0)) for t in range(arr.r)]


def super_deletion_contraction(arr: Arrangement, i: int, k: int,
                               splitting: Sequence | None = None) -> SequenceReport:
    """C_{L-i}^(a-1,b) -> C_L^(a,b) -> C_{L/i}^(a,b) (+) C_{L/i}^(a,b-1).

    The first map multiplies by l_i; the second restricts to H_i and,
    in the second component, first contracts with the splitting vector v.
    """
    check_deletable(arr, i)
    con, K = arr.contraction_with_basis(i)
    v = list(splitting) if splitting is not None else default_splitting(arr, i)
    src = super_algebra(arr.deletion(i), k)
    mid = super_algebra(arr, k)
    tgt = super_algebra(con, k)
    ell = linear_form(arr, i)
    slots = set(mid.slots()) | set(tgt.slots())
    slots |= {(a, b + 1) for (a, b) in tgt.slots() if b + 1 <= arr.r}
    slots |= {(a + 1, b) for (a, b) in src.slots()}
    slots = sorted(slots)

    def phi2(g):
        return (g.substitute(K), g.iota(v).substitute(K))

    data = []
    for (a, b) in slots:
        tgt_basis = [(x, SuperElement.zero(arr.r - 1)) for x in tgt.inverse_system_basis(a, b)]
        tgt_basis += [(SuperElement.zero(arr.r - 1), x) for x in tgt.inverse_system_basis(a, b - 1)]
        data.append(analyze_slot(
            (a, b), src.inverse_system_basis(a - 1, b), mid.inverse_system_basis(a, b), tgt_basis,
            lambda g: ell * g, phi2,
        ))
    return SequenceReport(("C[L-i]", "C[L]", "C[L/i]+C[L/i](0,-1)"), ("multiply", "contract-restrict"),
                          slots, data)


# -- Boolean family for k >= 0 ----------------------------------------------


def boolean_B_basis(n: int, k: int) -> dict:
    """Distinct monomials x^a x^T dx_S with |a| <= k and T disjoint from S, by bidegree."""
    seen: dict = {}
    exps = [a for a in product(range(k + 1), repeat=n) if sum(a) <= k]
    for b in range(n + 1):
        for S in combinations(range(n), b):
            smask = sum(1 << s for s in S)
            rest = [t for t in range(n) if t not in S]
            for tsize in range(len(rest) + 1):
                for T in combinations(rest, tsize):
                    for a in exps:
                        alpha = list(a)
                        for t in T:
                            alpha[t] += 1
                        key = (tuple(alpha), smask)
                        if key not in seen:
                            seen[key] = SuperElement.monomial(alpha, smask)
    out: dict = {}
    for (alpha, s), m in sorted(seen.items()):
        out.setdefault((sum(alpha), bin(s).count("1")), []).append(m)
    return out


def boolean_B(n: int, k: int) -> tuple[BigradedTable, BigradedTable, bool]:
    """(dimension table, d-homology, closure of the span under iota_E)."""
    if k < 0:
        raise ValueError("boolean_B needs k >= 0")
    spaces = boolean_B_basis(n, k)
    table = BigradedTable(n, {ij: len(v) for ij, v in spaces.items()})
    homology, closed = iota_euler_homology(spaces, n)
    return table, homology, closed
