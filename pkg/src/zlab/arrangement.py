"""Hyperplane arrangements given by an r x n rational matrix, and their matroids.

Column ``a_i`` of the matrix is the linear form cutting out ``H_i`` in the
coordinates ``y_1..y_r`` of ``L``.  Ground-set elements are 0-based bit
positions internally; the text and JSON formats use the same column order.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    ContractLoop,
    GenericityFailure,
    GroundSetTooLarge,
    InternalMismatch,
    NotEssential,
    ParseError,
)
from .linalg import RatMatrix

ENUMERATION_CAP = 16
TRUNCATION_ATTEMPTS = 64
TRUNCATION_RANGE = 10 ** 6


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Flat:
    members: int
    rk: int
    subspace_basis: tuple  # tuple of tuples of Fractions spanning L_F

    @property
    def size(self) -> int:
        return popcount(self.members)

    def elements(self) -> list[int]:
        return elements_of(self.members)

    def __repr__(self):
        return f"Flat({{{','.join(str(e + 1) for e in self.elements())}}}, rk={self.rk})"


@dataclass(frozen=True)
class CocircuitVector:
    flat: Flat
    v: tuple  # primitive integer vector spanning L_F
    rho: int


@dataclass(frozen=True)
class Arrangement:
    matrix: RatMatrix

    def __post_init__(self):
        if linalg.rank(self.matrix) != self.matrix.rows:
            raise NotEssential(
                f"matrix has {self.matrix.rows} rows but rank {linalg.rank(self.matrix)}; "
                "the forms must span L*"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Arrangement":
        return cls(RatMatrix.from_rows(rows, cols))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], r: int | None = None) -> "Arrangement":
        if r is None:
            r = len(columns[0]) if columns else 0
        return cls(RatMatrix.from_rows([[c[i] for c in columns] for i in range(r)], len(columns)))

    @property
    def r(self) -> int:
        return self.matrix.rows

    @property
    def n(self) -> int:
        return self.matrix.cols

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def column(self, i: int) -> list[Fraction]:
        return self.matrix.column(i)

    @cached_property
    def _rank_cache(self) -> dict:
        return {0: 0}

    def rank_of(self, mask: int) -> int:
        cache = self._rank_cache
        got = cache.get(mask)
        if got is None:
            got = linalg.rank(self.matrix.select_columns(elements_of(mask)))
            cache[mask] = got
        return got

    def is_loop(self, i: int) -> bool:
        return self.rank_of(1 << i) == 0

    def is_coloop(self, i: int) -> bool:
        return self.rank_of(self.ground & ~(1 << i)) < self.r

    def loops(self) -> list[int]:
        return [i for i in range(self.n) if self.is_loop(i)]

    def coloops(self) -> list[int]:
        return [i for i in range(self.n) if self.is_coloop(i)]

    # -- flats -------------------------------------------------------------

    def closure_mask(self, mask: int) -> int:
        rk = self.rank_of(mask)
        out = mask
        for j in range(self.n):
            if not (mask >> j) & 1 and self.rank_of(mask | (1 << j)) == rk:
                out |= 1 << j
        return out

    def flat(self, mask: int) -> Flat:
        """The Flat record of a closed set ``mask`` (not re-closed)."""
        rows = [self.column(i) for i in elements_of(mask)]
        if rows:
            basis = linalg.kernel_basis(RatMatrix.from_rows(rows, self.r))
        else:
            basis = [[Fraction(int(i == j)) for j in range(self.r)] for i in range(self.r)]
        return Flat(mask, self.rank_of(mask), tuple(tuple(v) for v in basis))

    def closure(self, s: Iterable[int] | int) -> Flat:
        mask = s if isinstance(s, int) else mask_of(s)
        return self.flat(self.closure_mask(mask))

    @cached_property
    def _flats(self) -> tuple:
        if self.n > ENUMERATION_CAP:
            raise GroundSetTooLarge(f"n = {self.n} exceeds the enumeration cap {ENUMERATION_CAP}")
        seen = {self.closure_mask(s) for s in range(1 << self.n)}
        masks = sorted(seen, key=lambda m: (self.rank_of(m), m))
        return tuple(self.flat(m) for m in masks)

    def flats(self) -> list[Flat]:
        """All flats sorted by (rank, bitmask)."""
        return list(self._flats)

    def proper_flats(self) -> list[Flat]:
        return [F for F in self._flats if F.members != self.ground]

    def flats_of_rank(self, k: int) -> list[Flat]:
        return [F for F in self._flats if F.rk == k]

    def cocircuit_vectors(self) -> list[CocircuitVector]:
        if self.r < 1:
            raise ValueError("cocircuit vectors need r >= 1")
        out = []
        for F in self.flats_of_rank(self.r - 1):
            (v,) = F.subspace_basis
            v = tuple(linalg.primitive(v))
            rho = self.n - F.size
            hit = sum(1 for i in range(self.n) if dot(self.column(i), v) != 0)
            if hit != rho:
                raise InternalMismatch(f"rho mismatch on {F}: {hit} vs {rho}")
            out.append(CocircuitVector(F, v, rho))
        return out

    # -- minors ------------------------------------------------------------

    def deletion(self, i: int) -> "Arrangement":
        """Drop column i; re-essentialize only when i is a coloop."""
        keep = [j for j in range(self.n) if j != i]
        sub = self.matrix.select_columns(keep)
        if linalg.rank(sub) == self.r:
            return Arrangement(sub)
        return _essentialize(sub)

    def contraction(self, i: int) -> "Arrangement":
        return self.contraction_with_basis(i)[0]

    def contraction_with_basis(self, i: int) -> tuple["Arrangement", list[list[Fraction]]]:
        """Contract i; also return K (r x (r-1)) with H_i = {K z}."""
        if self.is_loop(i):
            raise ContractLoop(f"element {i + 1} is a loop")
        K = hyperplane_basis(self.column(i))
        return self.restricted_to_subspace(K, drop=i), K

    def restricted_to_subspace(self, K: list[list[Fraction]], drop: int | None = None) -> "Arrangement":
        """Arrangement induced on the subspace {K z}; K is r x s, columns independent."""
        s = len(K[0]) if K else 0
        cols = []
        for j in range(self.n):
            if j == drop:
                continue
            a = self.column(j)
            cols.append([sum((K[t][l] * a[t] for t in range(self.r)), Fraction(0)) for l in range(s)])
        return Arrangement(RatMatrix.from_rows([[c[l] for c in cols] for l in range(s)], len(cols)))

    def restriction_to(self, s: Iterable[int] | int) -> "Arrangement":
        mask = s if isinstance(s, int) else mask_of(s)
        return _essentialize(self.matrix.select_columns(elements_of(mask)))

    def truncation(self, seed: int = 0) -> tuple["Arrangement", list[Fraction], list[list[Fraction]]]:
        """Cut by a certified-generic hyperplane ker f.

        Returns (TL, f, K) where the columns of K span ker f and TL is
        presented in the coordinates z with y = K z.
        """
        if self.r < 1:
            raise ValueError("truncation needs r >= 1")
        rng = random.Random(seed)
        for _ in range(TRUNCATION_ATTEMPTS):
            f = [Fraction(rng.randint(-TRUNCATION_RANGE, TRUNCATION_RANGE)) for _ in range(self.r)]
            if all(x == 0 for x in f):
                continue
            K = hyperplane_basis(f)
            TL = self.restricted_to_subspace(K)
            if all(TL.rank_of(A) == min(self.rank_of(A), self.r - 1) for A in range(1 << self.n)):
                return TL, f, K
        raise GenericityFailure(f"no generic form found in {TRUNCATION_ATTEMPTS} attempts")

    # -- formats -----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.r} {self.n}"]
        for i in range(self.r):
            lines.append(" ".join(str(x) for x in self.matrix.row(i)))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "rows": self.r,
            "cols": self.n,
            "entries": [[str(x) for x in self.matrix.row(i)] for i in range(self.r)],
        }


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def hyperplane_basis(form: Sequence[Fraction]) -> list[list[Fraction]]:
    """r x (r-1) matrix whose columns are a basis of ker(form)."""
    r = len(form)
    vecs = linalg.kernel_basis(RatMatrix.from_rows([list(form)], r))
    return [[v[t] for v in vecs] for t in range(r)]


def _essentialize(m: RatMatrix) -> Arrangement:
    rows = linalg.row_space_basis(m)
    return Arrangement(RatMatrix.from_rows(rows, m.cols) if rows else RatMatrix(0, m.cols, ()))


# -- Tutte polynomial -------------------------------------------------------


@dataclass(frozen=True)
class TuttePoly:
    coeffs: tuple  # sorted ((i, j), t_ij) pairs with t_ij != 0

    @classmethod
    def from_dict(cls, d: dict) -> "TuttePoly":
        return cls(tuple(sorted((k, v) for k, v in d.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def coeff(self, i: int, j: int) -> int:
        return self.as_dict().get((i, j), 0)

    def evaluate(self, x, y):
        """Evaluate at ints, Fractions or LaurentSeries."""
        total = 0
        for (i, j), c in self.coeffs:
            total = total + c * (x ** i) * (y ** j)
        return total

    def swapped(self) -> "TuttePoly":
        return TuttePoly.from_dict({(j, i): c for (i, j), c in self.coeffs})

    def to_json(self) -> dict:
        return {f"({i},{j})": c for (i, j), c in sorted(self.coeffs, reverse=True)}

    def __str__(self):
        terms = []
        for (i, j), c in sorted(self.coeffs, reverse=True):
            mono = "*".join(p for p in (
                "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
            ) if p)
            terms.append(f"{c}*{mono}" if mono and c != 1 else (mono or str(c)))
        return " + ".join(terms) if terms else "0"


def tutte_corank_nullity(rank_of, n: int, r: int) -> TuttePoly:
    """sum over A of (x-1)^(r - rk A) (y-1)^(|A| - rk A)."""
    acc: dict = {}
    for A in range(1 << n):
        rk = rank_of(A)
        a, b = r - rk, popcount(A) - rk
        for i in range(a + 1):
            ci = comb(a, i) * (-1) ** (a - i)
            for j in range(b + 1):
                key = (i, j)
                acc[key] = acc.get(key, 0) + ci * comb(b, j) * (-1) ** (b - j)
    return TuttePoly.from_dict(acc)


def tutte_deletion_contraction(rank_of, n: int) -> TuttePoly:
    """Recursion over minors (M / C) \\ D, memoized on (C, D)."""
    full = (1 << n) - 1
    memo: dict = {}

    def rec(C: int, D: int) -> dict:
        key = (C, D)
        if key in memo:
            return memo[key]
        rest = full & ~(C | D)
        if rest == 0:
            out = {(0, 0): 1}
        else:
            e = (rest & -rest).bit_length() - 1
            rkC = rank_of(C)
            rest_rank = rank_of(rest | C) - rkC
            if rank_of(C | (1 << e)) == rkC:  # loop
                out = _shift(rec(C, D | (1 << e)), 0, 1)
            elif rank_of((rest & ~(1 << e)) | C) - rkC < rest_rank:  # coloop
                out = _shift(rec(C | (1 << e), D), 1, 0)
            else:
                out = dict(rec(C, D | (1 << e)))
                for k, v in rec(C | (1 << e), D).items():
                    out[k] = out.get(k, 0) + v
        memo[key] = out
        return out

    return TuttePoly.from_dict(rec(0, 0))


def _shift(d: dict, di: int, dj: int) -> dict:
    return {(i + di, j + dj): v for (i, j), v in d.items()}


def tutte(arr: Arrangement) -> TuttePoly:
    """Tutte polynomial, computed by corank-nullity and by deletion-contraction."""
    if arr.n > ENUMERATION_CAP:
        raise GroundSetTooLarge(f"n = {arr.n} exceeds the enumeration cap {ENUMERATION_CAP}")
    a = tutte_corank_nullity(arr.rank_of, arr.n, arr.r)
    b = tutte_deletion_contraction(arr.rank_of, arr.n)
    if a != b:
        raise InternalMismatch(f"corank-nullity {a} != deletion-contraction {b}")
    return a


def beta(arr: Arrangement) -> int:
    return tutte(arr).coeff(1, 0) if arr.n >= 1 else 0


def dual_tutte(arr: Arrangement) -> TuttePoly:
    return tutte(arr).swapped()


# -- parsing ----------------------------------------------------------------


def parse_text(text: str) -> Arrangement:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        lines.append((lineno, s.split()))
    if not lines:
        raise ParseError("empty arrangement file")
    lineno, head = lines[0]
    if len(head) != 2:
        raise ParseError("header must be 'r n'", lineno)
    try:
        r, n = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header must be two integers 'r n'", lineno) from None
    if r < 0 or n < 0:
        raise ParseError("r and n must be nonnegative", lineno)
    body = lines[1:]
    if len(body) != r:
        where = body[r][0] if len(body) > r else (body[-1][0] if body else lineno)
        raise ParseError(f"expected {r} matrix rows, found {len(body)}", where)
    rows = []
    for lineno, toks in body:
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", lineno)
        try:
            rows.append([Fraction(t) for t in toks])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational in {' '.join(toks)!r}", lineno) from None
    return Arrangement(RatMatrix.from_rows(rows, n) if r else RatMatrix(0, n, ()))


def parse_json(text: str) -> Arrangement:
    try:
        data = json.loads(text)
        r, n = int(data["rows"]), int(data["cols"])
        entries = data["entries"]
        if len(entries) != r or any(len(row) != n for row in entries):
            raise ParseError("entries do not match rows/cols")
        rows = [[Fraction(str(x)) for x in row] for row in entries]
    except ParseError:
        raise
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad arrangement JSON: {exc}") from None
    return Arrangement(RatMatrix.from_rows(rows, n) if r else RatMatrix(0, n, ()))


def parse_arrangement(text: str) -> Arrangement:
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)
