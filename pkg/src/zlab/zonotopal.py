"""Zonotopal and hierarchical zonotopal algebras, and exact sequences among them.

Inverse systems C_{L,k} live in Sym L* (variables x_1..x_r).  Maps between
them are materialized on explicit bases and every exactness verdict is rank
arithmetic on those images.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .arrangement import (
    Arrangement,
    Flat,
    TuttePoly,
    popcount,
    tutte,
    tutte_corank_nullity,
)
from .errors import LoopOrColoop, UnsupportedK
from .linalg import Echelon
from .power_ideal import ExponentMap, HilbertFunction, PowerIdeal
from .series import Q, Q_INV, LaurentSeries
from .superspace import SuperElement


# -- order filters ------------------------------------------------------------


@dataclass(frozen=True)
class OrderFilter:
    flats: frozenset  # member bitmasks

    @classmethod
    def build(cls, arr: Arrangement, masks: Iterable[int]) -> "OrderFilter":
        masks = frozenset(masks)
        all_flats = {F.members for F in arr.flats()}
        if not masks <= all_flats:
            raise ValueError("order filter members must be flats")
        for m in masks:
            for g in all_flats:
                if g & m == m and g not in masks:
                    raise ValueError("order filter must be upward closed")
        if masks and arr.ground not in masks:
            raise ValueError("order filter must contain E")
        return cls(masks)

    @classmethod
    def generated_by(cls, arr: Arrangement, masks: Iterable[int]) -> "OrderFilter":
        """Upward closure of the given flats, together with E."""
        gens = list(masks)
        out = {arr.ground}
        for F in arr.flats():
            if any(F.members & g == g for g in gens):
                out.add(F.members)
        return cls(frozenset(out))

    def __contains__(self, mask: int) -> bool:
        return mask in self.flats


def all_flats_filter(arr: Arrangement) -> OrderFilter:
    return OrderFilter(frozenset(F.members for F in arr.flats()))


def random_order_filter(arr: Arrangement, rng: random.Random, contain_corank_one: bool = False) -> OrderFilter:
    gens = []
    for F in arr.proper_flats():
        # the bottom flat would force the whole lattice, so it is rarely drawn
        if rng.random() < (0.1 if F.rk == 0 else 0.25):
            gens.append(F.members)
    if contain_corank_one:
        gens += [F.members for F in arr.flats_of_rank(arr.r - 1)]
    return OrderFilter.generated_by(arr, gens)


def _drop_bit(mask: int, i: int) -> int:
    low = mask & ((1 << i) - 1)
    return low | ((mask >> (i + 1)) << i)


def filter_deletion(arr: Arrangement, J: OrderFilter, i: int) -> OrderFilter:
    """J \\ i: F - i for F in J unless i is a coloop of F, as flats of L \\ i."""
    flats = {F.members for F in arr.flats()}
    bit = 1 << i
    out = set()
    for F in J.flats:
        if F & bit and (F & ~bit) in flats:
            continue
        out.add(_drop_bit(F & ~bit, i))
    return OrderFilter(frozenset(out))


def filter_contraction(J: OrderFilter, i: int) -> OrderFilter:
    bit = 1 << i
    return OrderFilter(frozenset(_drop_bit(F & ~bit, i) for F in J.flats if F & bit))


# -- exponent maps and Hilbert functions ----------------------------------------


def zonotopal_exponent_map(arr: Arrangement, k: int, J: OrderFilter | None = None) -> ExponentMap:
    """a_F = (n - |F|) + k, plus 1 on members of J for the hierarchical variant."""
    def a(F: Flat) -> int:
        bump = 1 if J is not None and F.members in J else 0
        return arr.n - F.size + k + bump
    return ExponentMap.from_function(arr, a)


@lru_cache(maxsize=None)
def zonotopal_ideal(arr: Arrangement, k: int, J: OrderFilter | None = None, mode: str = "all") -> PowerIdeal:
    return PowerIdeal(arr, zonotopal_exponent_map(arr, k, J), mode)


def zonotopal_hilbert(arr: Arrangement, k: int, J: OrderFilter | None = None, mode: str = "all") -> HilbertFunction:
    return zonotopal_ideal(arr, k, J, mode).hilbert()


def tutte_specialization(T: TuttePoly, n: int, r: int, k: int) -> LaurentSeries:
    if k == 0:
        x = 1 + Q
    elif k == -1:
        x = LaurentSeries.constant(1)
    elif k == -2:
        x = LaurentSeries()
    else:
        raise UnsupportedK(f"no Tutte formula for k = {k}; only 0, -1, -2")
    return (T.evaluate(x, Q_INV) + LaurentSeries()).shift(n - r)


def tutte_formula_hilbert(arr: Arrangement, k: int) -> HilbertFunction:
    s = tutte_specialization(tutte(arr), arr.n, arr.r, k)
    return HilbertFunction(s.as_polynomial(), True)


def verify_hilbert(arr: Arrangement, k: int) -> bool:
    return zonotopal_hilbert(arr, k).dims == tutte_formula_hilbert(arr, k).dims


# -- sequence reports -----------------------------------------------------------


def _vectorize(x) -> dict:
    """Coordinates of a SuperElement, or of a tuple of them in a direct sum."""
    if isinstance(x, SuperElement):
        return dict(x.terms)
    out = {}
    for tag, part in enumerate(x):
        for key, c in part.terms.items():
            out[(tag, key)] = c
    return out


class _Span:
    def __init__(self):
        self.index: dict = {}
        self.ech = Echelon(0)

    def _coords(self, v: dict) -> dict:
        out = {}
        for key, c in v.items():
            if key not in self.index:
                self.index[key] = len(self.index)
                self.ech.ncols = len(self.index)
            out[self.index[key]] = c
        return out

    def add(self, v: dict) -> bool:
        return self.ech.add(self._coords(v))

    def contains(self, v: dict) -> bool:
        if any(key not in self.index for key, c in v.items() if c):
            return False
        return self.ech.contains(self._coords(v))

    @property
    def rank(self) -> int:
        return self.ech.rank


def span_of(vectors: Iterable) -> _Span:
    s = _Span()
    for v in vectors:
        s.add(_vectorize(v))
    return s


@dataclass
class SlotData:
    slot: object
    src_dim: int
    mid_dim: int
    tgt_dim: int
    rank1: int
    rank2: int
    composite_zero: bool
    images_inside: bool


def analyze_slot(slot, src: Sequence, mid: Sequence, tgt: Sequence,
                 phi1: Callable, phi2: Callable) -> SlotData:
    img1 = [phi1(v) for v in src]
    img2 = [phi2(v) for v in mid]
    mid_span = span_of(mid)
    tgt_span = span_of(tgt)
    inside = all(mid_span.contains(_vectorize(v)) for v in img1) and all(
        tgt_span.contains(_vectorize(v)) for v in img2)
    composite_zero = all(not _vectorize(phi2(v)) for v in img1)
    return SlotData(slot, len(src), len(mid), len(tgt), span_of(img1).rank, span_of(img2).rank,
                    composite_zero, inside)


@dataclass
class SequenceReport:
    names: tuple  # three term names
    map_names: tuple
    slots: list
    data: list  # SlotData per slot

    @property
    def left(self) -> list[bool]:
        return [s.rank1 == s.src_dim for s in self.data]

    @property
    def middle(self) -> list[bool]:
        return [s.composite_zero and s.rank1 + s.rank2 == s.mid_dim for s in self.data]

    @property
    def right(self) -> list[bool]:
        return [s.rank2 == s.tgt_dim for s in self.data]

    @property
    def images_inside(self) -> bool:
        return all(s.images_inside for s in self.data)

    def cokernel_dims(self) -> dict:
        return {s.slot: s.tgt_dim - s.rank2 for s in self.data if s.tgt_dim != s.rank2}

    @property
    def cokernel(self) -> LaurentSeries:
        """Cokernel of the right map, for integer (commutative) slots."""
        return LaurentSeries.from_dict(self.cokernel_dims())

    def first_failure(self, which: str):
        flags = getattr(self, which)
        for s, ok in zip(self.slots, flags):
            if not ok:
                return s
        return None

    def to_json(self) -> dict:
        bigraded = bool(self.slots) and isinstance(self.slots[0], tuple)
        out = {
            "terms": [
                {"name": self.names[0], "dims": [s.src_dim for s in self.data]},
                {"name": self.names[1], "dims": [s.mid_dim for s in self.data]},
                {"name": self.names[2], "dims": [s.tgt_dim for s in self.data]},
            ],
            "maps": [
                {"name": self.map_names[0], "ranks": [s.rank1 for s in self.data]},
                {"name": self.map_names[1], "ranks": [s.rank2 for s in self.data]},
            ],
            "verdicts": {"left": self.left, "middle": self.middle, "right": self.right},
        }
        if bigraded:
            out["slots"] = [list(s) for s in self.slots]
            out["cokernel"] = [{"i": a, "j": b, "dim": v} for (a, b), v in sorted(self.cokernel_dims().items())]
        else:
            out["cokernel"] = self.cokernel.to_json()
        return out


def _basis(ideal: PowerIdeal, d: int) -> list[SuperElement]:
    if d < 0:
        return []
    return ideal.inverse_system_basis(d).elements


def _graded_report(names, map_names, src: PowerIdeal, mid: PowerIdeal, tgt: PowerIdeal,
                   phi1, phi2) -> SequenceReport:
    top = max(len(mid.hilbert().dims), len(tgt.hilbert().dims), len(src.hilbert().dims) + 1)
    slots = list(range(max(top, 1)))
    data = [analyze_slot(d, _basis(src, d - 1), _basis(mid, d), _basis(tgt, d), phi1, phi2) for d in slots]
    return SequenceReport(names, map_names, slots, data)


def linear_form(arr: Arrangement, i: int) -> SuperElement:
    """The form x -> a_i . x, as a polynomial in x_1..x_r."""
    return SuperElement.linear(arr.column(i))


def check_deletable(arr: Arrangement, i: int) -> None:
    if arr.is_loop(i):
        raise LoopOrColoop(f"element {i + 1} is a loop")
    if arr.is_coloop(i):
        raise LoopOrColoop(f"element {i + 1} is a coloop")


def deletion_contraction_sequence(arr: Arrangement, i: int, k: int,
                                  J: OrderFilter | None = None) -> SequenceReport:
    """C_{L-i}^{d-1} --(x l_i)--> C_L^d --(restrict to H_i)--> C_{L/i}^d."""
    check_deletable(arr, i)
    dele = arr.deletion(i)
    con, K = arr.contraction_with_basis(i)
    if J is None:
        Jd = Jc = None
    else:
        Jd, Jc = filter_deletion(arr, J, i), filter_contraction(J, i)
    ell = linear_form(arr, i)
    return _graded_report(
        ("C[L-i]", "C[L]", "C[L/i]"), ("multiply", "restrict"),
        zonotopal_ideal(dele, k, Jd), zonotopal_ideal(arr, k, J), zonotopal_ideal(con, k, Jc),
        lambda g: ell * g, lambda g: g.substitute(K),
    )


def truncation_sequence(arr: Arrangement, k: int, seed: int = 0) -> SequenceReport:
    """C_{L,k-1}^{d-1} --(x f)--> C_{L,k}^d --(restrict to ker f)--> C_{TL,k}^d."""
    TL, f, K = arr.truncation(seed)
    fpoly = SuperElement.linear(f)
    return _graded_report(
        ("C[L,k-1]", "C[L,k]", "C[TL,k]"), ("multiply", "restrict"),
        zonotopal_ideal(arr, k - 1), zonotopal_ideal(arr, k), zonotopal_ideal(TL, k),
        lambda g: fpoly * g, lambda g: g.substitute(K),
    )


def h1_formula(arr: Arrangement) -> LaurentSeries:
    """Sum over A with rk A <= r-2 of (-1)^(r-rk) q^(n-|A|-r+rk) (1-q)^(|A|-rk)."""
    n, r = arr.n, arr.r
    one_minus_q = 1 - Q
    total = LaurentSeries()
    for A in range(1 << n):
        rk = arr.rank_of(A)
        if rk > r - 2:
            continue
        size = popcount(A)
        term = LaurentSeries.monomial(n - size - r + rk, (-1) ** (r - rk)) * one_minus_q ** (size - rk)
        total = total + term
    return total


def truncation_tutte(arr: Arrangement) -> TuttePoly:
    """Tutte polynomial of the matroid with rank function min(rk, r-1)."""
    return tutte_corank_nullity(lambda A: min(arr.rank_of(A), arr.r - 1), arr.n, arr.r - 1)


def h1_identity_sides(arr: Arrangement) -> tuple[LaurentSeries, LaurentSeries]:
    """(q h1, q^(n-r+1) T(0,1/q) - q^(n-r) T(1,1/q) + q^(n-r+1) T_TL(1,1/q))."""
    n, r = arr.n, arr.r
    T = tutte(arr)
    TT = truncation_tutte(arr)
    zero, one = LaurentSeries(), LaurentSeries.constant(1)
    rhs = ((T.evaluate(zero, Q_INV) + zero).shift(n - r + 1)
           - (T.evaluate(one, Q_INV) + zero).shift(n - r)
           + (TT.evaluate(one, Q_INV) + zero).shift(n - r + 1))
    return h1_formula(arr).shift(1), rhs


def h1_consistency(arr: Arrangement, seed: int = 0) -> bool:
    """Cokernel of the k = -1 truncation sequence equals q * h1_formula."""
    return truncation_sequence(arr, -1, seed).cokernel == h1_formula(arr).shift(1)
