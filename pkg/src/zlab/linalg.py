"""Exact linear algebra over the rationals.

Every dimension count in zlab reduces to a rank computation here.  Scalars
are :class:`fractions.Fraction`; matrices are small and dense.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import DenominatorDivisibleByPrime

Rational = Fraction


def to_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major Fractions

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(to_rational(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[Fraction]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def select_columns(self, cols: Iterable[int]) -> "RatMatrix":
        cols = list(cols)
        return RatMatrix.from_rows([[self[i, j] for j in cols] for i in range(self.rows)], len(cols))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            out.append([sum((ri[k] * other[k, j] for k in range(self.cols)), Fraction(0))
                        for j in range(other.cols)])
        return RatMatrix.from_rows(out, other.cols)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((self[i, j] * v[j] for j in range(self.cols)), Fraction(0))
                for i in range(self.rows)]


def _integer_rows(m: RatMatrix) -> list[list[int]]:
    out = []
    for r in m.to_rows():
        den = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * den) for x in r])
    return out


def rank(m: RatMatrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    a = _integer_rows(m)
    nrows, ncols = m.rows, m.cols
    rk = 0
    prev = 1
    for c in range(ncols):
        if rk == nrows:
            break
        piv = next((i for i in range(rk, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        p = a[rk][c]
        for i in range(rk + 1, nrows):
            f = a[i][c]
            row_i = a[i]
            row_k = a[rk]
            for j in range(c, ncols):
                # exact division is the Bareiss invariant
                row_i[j] = (p * row_i[j] - f * row_k[j]) // prev
        prev = p
        rk += 1
    return rk


def rref(m: RatMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a[:r], pivots


def primitive(v: Sequence[Fraction]) -> list[Fraction]:
    """Scale a nonzero vector to a primitive integer vector with positive leading entry."""
    den = lcm(*(Fraction(x).denominator for x in v))
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return [Fraction(0)] * len(v)
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        g = -g
    return [Fraction(x // g) for x in ints]


def kernel_basis(m: RatMatrix) -> list[list[Fraction]]:
    """Basis of {v : m v = 0}, each vector primitive integral."""
    rows, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(primitive(v))
    return basis


def row_space_basis(m: RatMatrix) -> list[list[Fraction]]:
    rows, _ = rref(m)
    return [primitive(r) for r in rows]


def rank_modular_probe(m: RatMatrix, prime: int, seed: int = 0) -> int:
    """Rank of ``m`` reduced mod ``prime``; a lower bound for the rational rank.

    The rows are shuffled with ``seed`` before elimination, which changes
    nothing mathematically but exercises different pivot orders.
    """
    if prime <= 2 ** 20:
        raise ValueError("prime must exceed 2^20")
    for x in m.entries:
        if x.denominator % prime == 0:
            raise DenominatorDivisibleByPrime(f"denominator {x.denominator} divisible by {prime}")
    a = [[(x.numerator * pow(x.denominator, -1, prime)) % prime for x in r] for r in m.to_rows()]
    random.Random(seed).shuffle(a)
    rk = 0
    for c in range(m.cols):
        piv = next((i for i in range(rk, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        inv = pow(a[rk][c], -1, prime)
        for i in range(rk + 1, m.rows):
            f = a[i][c] * inv % prime
            if f:
                a[i] = [(x - f * y) % prime for x, y in zip(a[i], a[rk])]
        rk += 1
    return rk


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace of Q^ncols.

    Rows are sparse dicts ``{column: Fraction}``.  Adding vectors one at a
    time lets span computations stop as soon as the space is full.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def full(self) -> bool:
        return len(self.rows) == self.ncols

    def reduce(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        v = {c: Fraction(x) for c, x in vec.items() if x != 0}
        for c in [c for c in v if c in self.rows]:
            f = v.get(c)
            if not f:
                continue
            for cc, x in self.rows[c].items():
                nv = v.get(cc, 0) - f * x
                if nv:
                    v[cc] = nv
                else:
                    v.pop(cc, None)
        return v

    def add(self, vec: Mapping[int, Fraction]) -> bool:
        """Add a vector; return True when it enlarged the span."""
        if self.full:
            return False
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {c: x * inv for c, x in v.items()}
        for row in self.rows.values():
            f = row.get(p)
            if f:
                for cc, x in v.items():
                    nv = row.get(cc, 0) - f * x
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
        self.rows[p] = v
        return True

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[dict[int, Fraction]]:
        return [dict(self.rows[p]) for p in sorted(self.rows)]

    def complement_kernel(self, weights: Sequence[Fraction] | None = None) -> list[list[Fraction]]:
        """Basis of {g : sum_c row[c] * weights[c] * g[c] = 0 for every row}.

        With ``weights`` the diagonal of a pairing, this is the orthogonal
        complement of the span under that pairing.
        """
        if weights is None:
            weights = [Fraction(1)] * self.ncols
        pivots = sorted(self.rows)
        pivot_set = set(pivots)
        out = []
        for f in range(self.ncols):
            if f in pivot_set:
                continue
            # row p reads  w_p g_p + sum_{c free} row[c] w_c g_c = 0
            g = [Fraction(0)] * self.ncols
            g[f] = Fraction(1)
            for p in pivots:
                x = self.rows[p].get(f)
                if x:
                    g[p] = -x * weights[f] / weights[p]
            out.append(primitive(g))
        return out


def rank_of_vectors(vectors: Iterable[Mapping[int, Fraction]], ncols: int) -> int:
    ech = Echelon(ncols)
    for v in vectors:
        ech.add(v)
        if ech.full:
            break
    return ech.rank
