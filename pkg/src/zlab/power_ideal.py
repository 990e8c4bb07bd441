"""Power ideals in Sym L, their graded quotients and Macaulay inverse systems.

The ideal attached to an exponent map ``a`` is generated by ``v^(a_F + 1)``
for ``v`` in ``L_F``.  Over an infinite field such powers span
``Sym^(a_F+1)(L_F)``, so each flat contributes the finitely many monomials
of that degree in a basis of ``L_F``.  Each graded piece is then a single
exact span computation, built from the previous degree by multiplying with
the variables.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Mapping

from .arrangement import Arrangement, Flat, elements_of, mask_of, popcount
from .errors import CapExceeded, NotAPolymatroid, ParseError
from .linalg import Echelon
from .series import LaurentSeries
from .superspace import SuperElement, commutative_monomials, slice_basis


def max_degree_override() -> int | None:
    raw = os.environ.get("ZLAB_MAX_DEGREE")
    return int(raw) if raw else None


@dataclass(frozen=True)
class ExponentMap:
    """Integer a_F on every proper flat, keyed by member bitmask."""

    values: tuple  # sorted (mask, a_F) pairs

    @classmethod
    def from_dict(cls, arr: Arrangement, values: Mapping[int, int]) -> "ExponentMap":
        proper = {F.members for F in arr.proper_flats()}
        if set(values) != proper:
            raise ValueError("an exponent map must be defined on exactly the proper flats")
        return cls(tuple(sorted((m, int(a)) for m, a in values.items())))

    @classmethod
    def from_function(cls, arr: Arrangement, fn: Callable[[Flat], int]) -> "ExponentMap":
        return cls(tuple(sorted((F.members, int(fn(F))) for F in arr.proper_flats())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.values)

    def __getitem__(self, mask: int) -> int:
        return self.as_dict()[mask]

    def to_json(self) -> dict:
        return {"flats": [{"members": [e + 1 for e in elements_of(m)], "a": a} for m, a in self.values]}

    @classmethod
    def from_json(cls, arr: Arrangement, text: str) -> "ExponentMap":
        try:
            data = json.loads(text)
            vals = {mask_of(e - 1 for e in item["members"]): int(item["a"]) for item in data["flats"]}
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad exponent map JSON: {exc}") from None
        try:
            return cls.from_dict(arr, vals)
        except ValueError as exc:
            raise ParseError(str(exc)) from None


@dataclass
class HilbertFunction:
    dims: list = field(default_factory=list)
    terminated: bool = True

    def series(self) -> LaurentSeries:
        return LaurentSeries.from_coeffs(self.dims)

    def total(self) -> int:
        return sum(self.dims)

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "terminated": self.terminated}


@dataclass
class InverseSystemBasis:
    degree: int
    elements: list  # SuperElements in the x variables, no odd part


def effective_exponent(arr: Arrangement, a: ExponentMap, F: Flat) -> int:
    """m_F = min of a_{F'} over flats F' contained in F."""
    vals = a.as_dict()
    return min(v for m, v in vals.items() if m & ~F.members == 0)


def _flat_generators(arr: Arrangement, F: Flat, degree: int) -> list[SuperElement]:
    """Monomials of the given degree in a basis of L_F, expanded in e_1..e_r."""
    basis = [SuperElement.linear(u) for u in F.subspace_basis]
    out = []
    for alpha in commutative_monomials(len(basis), degree):
        g = SuperElement.one(arr.r)
        for u, e in zip(basis, alpha):
            if e:
                g = g * u ** e
        out.append(g)
    return out


class PowerIdeal:
    """Graded slices of the power ideal of ``a`` on ``arr``.

    ``mode="all"`` uses every proper flat with its effective exponent;
    ``mode="cocircuit"`` uses only the rank r-1 flats with their raw values.
    """

    def __init__(self, arr: Arrangement, a: ExponentMap, mode: str = "all"):
        if mode not in ("all", "cocircuit"):
            raise ValueError(f"unknown generator mode {mode!r}")
        self.arr = arr
        self.a = a
        self.mode = mode
        vals = a.as_dict()
        flats = {F.members: F for F in arr.proper_flats()}
        if mode == "all":
            eff = {m: effective_exponent(arr, a, F) for m, F in flats.items()}
            self.unit = any(v < 0 for v in eff.values())
            # a flat is redundant when a subflat already imposes the same power on a larger space
            self.binding = sorted(
                (eff[m], m) for m in flats
                if all(eff[m] < eff[s] for s in flats if s != m and s & ~m == 0)
            )
            top = eff.get(arr.closure_mask(0))
            self.cap = arr.r * top + 1 if top is not None else 1
        else:
            coatoms = [F.members for F in arr.flats_of_rank(arr.r - 1)] if arr.r >= 1 else []
            self.unit = any(vals[m] < 0 for m in coatoms)
            self.binding = sorted((vals[m], m) for m in coatoms)
            self.cap = arr.r * max((vals[m] for m in coatoms), default=0) + 1
        override = max_degree_override()
        if override is not None:
            self.cap = override
        self._flats = flats
        self._slices: dict[int, Echelon] = {}

    def generators(self, degree: int) -> list[SuperElement]:
        """Generators of exactly this degree."""
        out = []
        for m, mask in self.binding:
            if m + 1 == degree:
                out += _flat_generators(self.arr, self._flats[mask], degree)
        return out

    def all_generators(self) -> list[SuperElement]:
        out = []
        for m, mask in self.binding:
            out += _flat_generators(self.arr, self._flats[mask], m + 1)
        return out

    def slice(self, d: int) -> Echelon:
        """I_d as an echelon basis in the monomial coordinates of Sym^d."""
        if d in self._slices:
            return self._slices[d]
        basis = slice_basis(self.arr.r, d, 0)
        ech = Echelon(len(basis))
        if self.unit:
            for i in range(len(basis)):
                ech.add({i: Fraction(1)})
        else:
            if d > 0:
                prev = self.slice(d - 1)
                prev_basis = slice_basis(self.arr.r, d - 1, 0)
                for row in prev.basis():
                    if ech.full:
                        break
                    for l in range(self.arr.r):
                        vec: dict = {}
                        for idx, c in row.items():
                            alpha = list(prev_basis.keys[idx][0])
                            alpha[l] += 1
                            vec[basis.index[(tuple(alpha), 0)]] = c
                        ech.add(vec)
            for g in self.generators(d):
                if ech.full:
                    break
                ech.add(basis.vector(g))
        self._slices[d] = ech
        return ech

    def graded_dim(self, d: int) -> int:
        return self.slice(d).rank

    def quotient_dim(self, d: int) -> int:
        return len(slice_basis(self.arr.r, d, 0)) - self.graded_dim(d)

    def hilbert(self) -> HilbertFunction:
        if self.unit:
            return HilbertFunction([], True)
        dims = []
        d = 0
        while True:
            q = self.quotient_dim(d)
            if q == 0:
                return HilbertFunction(dims, True)
            dims.append(q)
            d += 1
            if d > self.cap:
                raise CapExceeded(
                    f"quotient still nonzero in degree {d - 1} at the degree cap {self.cap}"
                )

    def inverse_system_basis(self, d: int) -> InverseSystemBasis:
        basis = slice_basis(self.arr.r, d, 0)
        vecs = self.slice(d).complement_kernel(basis.weights())
        return InverseSystemBasis(d, [basis.element(v) for v in vecs])

    def inverse_system(self) -> list[InverseSystemBasis]:
        return [self.inverse_system_basis(d) for d in range(len(self.hilbert().dims))]


def ideal_graded_dim(arr: Arrangement, a: ExponentMap, d: int) -> int:
    return PowerIdeal(arr, a).graded_dim(d)


def hilbert_quotient(arr: Arrangement, a: ExponentMap, mode: str = "all") -> HilbertFunction:
    return PowerIdeal(arr, a, mode).hilbert()


def inverse_system_basis(arr: Arrangement, a: ExponentMap, d: int) -> InverseSystemBasis:
    return PowerIdeal(arr, a).inverse_system_basis(d)


# -- polymatroids -----------------------------------------------------------


def check_polymatroid(n: int, f: Mapping[int, int]) -> None:
    full = (1 << n) - 1
    if any(s not in f for s in range(full + 1)):
        raise NotAPolymatroid("f must be given on every subset")
    if f[0] != 0:
        raise NotAPolymatroid("f(empty set) must be 0")
    for s in range(full + 1):
        for i in range(n):
            if not (s >> i) & 1 and f[s | (1 << i)] < f[s]:
                raise NotAPolymatroid(f"f is not monotone at {elements_of(s)} + {i + 1}")
    for s in range(full + 1):
        for t in range(full + 1):
            if f[s] + f[t] < f[s | t] + f[s & t]:
                raise NotAPolymatroid(f"f is not submodular at {elements_of(s)}, {elements_of(t)}")


def polymatroid_points(n: int, f: Mapping[int, int]) -> list[tuple[int, ...]]:
    """Lattice points a >= 0 with sum_{i in S} a_i <= f(S) for every S."""
    bounds = [f[1 << i] for i in range(n)]
    out = []
    for a in product(*(range(b + 1) for b in bounds)):
        if all(sum(a[i] for i in elements_of(s)) <= f[s] for s in range(1 << n)):
            out.append(a)
    return out


@dataclass
class PolymatroidReport:
    quotient: HilbertFunction
    span_dims: list
    match: bool
    contained: bool

    def to_json(self) -> dict:
        return {
            "quotient": self.quotient.to_json(),
            "span_dims": self.span_dims,
            "match": self.match,
            "contained": self.contained,
        }


def polymatroid_exponent_map(arr: Arrangement, f: Mapping[int, int]) -> ExponentMap:
    return ExponentMap.from_function(arr, lambda F: f[arr.ground & ~F.members])


def polymatroid_span_check(arr: Arrangement, f: Mapping[int, int]) -> PolymatroidReport:
    """Compare the quotient by a_F = f(E - F) with the span of products of the forms."""
    check_polymatroid(arr.n, f)
    ideal = PowerIdeal(arr, polymatroid_exponent_map(arr, f))
    hf = ideal.hilbert()
    forms = [SuperElement.linear(arr.column(i)) for i in range(arr.n)]
    by_degree: dict[int, list[SuperElement]] = {}
    for a in polymatroid_points(arr.n, f):
        g = SuperElement.one(arr.r)
        for form, e in zip(forms, a):
            if e:
                g = g * form ** e
        by_degree.setdefault(sum(a), []).append(g)
    top = max(by_degree, default=-1)
    span_dims = []
    contained = True
    for d in range(max(top, len(hf.dims) - 1) + 1):
        basis = slice_basis(arr.r, d, 0)
        ech = Echelon(len(basis))
        ideal_slice = ideal.slice(d)
        weights = basis.weights()
        for g in by_degree.get(d, []):
            vec = basis.vector(g)
            ech.add(vec)
            # g is in the inverse system iff it pairs to zero with every row of I_d
            for row in ideal_slice.basis():
                if sum(row.get(i, 0) * c * weights[i] for i, c in vec.items()) != 0:
                    contained = False
                    break
        span_dims.append(ech.rank)
    while span_dims and span_dims[-1] == 0:
        span_dims.pop()
    return PolymatroidReport(hf, span_dims, span_dims == hf.dims, contained)


def rank_polymatroid(arr: Arrangement, scale: int = 1) -> dict[int, int]:
    return {s: scale * arr.rank_of(s) for s in range(1 << arr.n)}


def dual_rank_polymatroid(arr: Arrangement) -> dict[int, int]:
    """rk*(S) = |S| + rk(E - S) - rk(E)."""
    return {s: popcount(s) + arr.rank_of(arr.ground & ~s) - arr.r for s in range(1 << arr.n)}


def cardinality_polymatroid(n: int) -> dict[int, int]:
    return {s: popcount(s) for s in range(1 << n)}
