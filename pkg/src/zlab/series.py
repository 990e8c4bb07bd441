"""Integer Laurent polynomials in q and bigraded (q, t) dimension tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping


@dataclass(frozen=True)
class LaurentSeries:
    """Finitely supported sum of c_i q^(min_deg + i) with integer c_i.

    Stored trimmed: no leading or trailing zero coefficients.  The zero
    series has ``min_deg == 0`` and empty ``coeffs``.
    """

    min_deg: int = 0
    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        lo = 0
        while lo < len(c) and c[lo] == 0:
            lo += 1
        hi = len(c)
        while hi > lo and c[hi - 1] == 0:
            hi -= 1
        c = c[lo:hi]
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))
        object.__setattr__(self, "min_deg", self.min_deg + lo if c else 0)

    @classmethod
    def from_dict(cls, terms: Mapping[int, int]) -> "LaurentSeries":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, tuple(terms.get(e, 0) for e in range(lo, hi + 1)))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], min_deg: int = 0) -> "LaurentSeries":
        return cls(min_deg, tuple(coeffs))

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentSeries":
        return cls(exp, (coeff,))

    @classmethod
    def constant(cls, c: int) -> "LaurentSeries":
        return cls(0, (c,))

    def to_dict(self) -> dict[int, int]:
        return {self.min_deg + i: c for i, c in enumerate(self.coeffs) if c}

    @property
    def max_deg(self) -> int:
        return self.min_deg + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, exp: int) -> int:
        i = exp - self.min_deg
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, int):
            return LaurentSeries.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.to_dict()
        for e, c in other.to_dict().items():
            d[e] = d.get(e, 0) + c
        return LaurentSeries.from_dict(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.min_deg, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return LaurentSeries()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentSeries(self.min_deg + other.min_deg, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.coeffs) == 1 and abs(self.coeffs[0]) == 1:
                return LaurentSeries(-self.min_deg * (-n), (self.coeffs[0] ** (-n),))
            raise ValueError("only monomials ±q^e are invertible")
        out = LaurentSeries.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentSeries":
        return LaurentSeries(self.min_deg + k, self.coeffs) if self.coeffs else self

    def as_polynomial(self) -> list[int]:
        """Coefficient list from q^0; requires no negative powers."""
        if self.is_zero():
            return []
        if self.min_deg < 0:
            raise ValueError(f"{self} has negative powers of q")
        return [0] * self.min_deg + list(self.coeffs)

    def to_json(self) -> dict:
        return {"min_deg": self.min_deg, "coeffs": list(self.coeffs)}

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e, c in sorted(self.to_dict().items()):
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if mono and abs(c) == 1:
                s = ("-" if c < 0 else "") + mono
            else:
                s = f"{c}{'*' + mono if mono else ''}"
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")


Q = LaurentSeries.monomial(1)
Q_INV = LaurentSeries.monomial(-1)


@dataclass
class BigradedTable:
    """dims[(i, j)]: commutative degree i, anticommutative degree j."""

    r: int
    dims: dict = field(default_factory=dict)

    def __post_init__(self):
        self.dims = {tuple(k): int(v) for k, v in self.dims.items() if v}
        for (_, j) in self.dims:
            if j > self.r:
                raise ValueError("anticommutative degree exceeds r")

    def __getitem__(self, ij) -> int:
        return self.dims.get(tuple(ij), 0)

    def __eq__(self, other):
        if not isinstance(other, BigradedTable):
            return NotImplemented
        return self.dims == other.dims

    def total(self) -> int:
        return sum(self.dims.values())

    def row(self, j: int) -> list[int]:
        """Commutative Hilbert function of the anticommutative row j."""
        top = max((i for (i, jj) in self.dims if jj == j), default=-1)
        return [self[i, j] for i in range(top + 1)]

    def euler_sums(self) -> dict[int, int]:
        """sum_{i+j=l} (-1)^i dims(i, j) for each total degree l."""
        out: dict[int, int] = {}
        for (i, j), v in self.dims.items():
            out[i + j] = out.get(i + j, 0) + (-1) ** i * v
        return out

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "entries": [{"i": i, "j": j, "dim": v} for (i, j), v in sorted(self.dims.items())],
        }

    def render(self) -> str:
        if not self.dims:
            return "(zero)"
        imax = max(i for i, _ in self.dims)
        width = max(len(str(v)) for v in self.dims.values()) + 1
        head = "j\\i " + "".join(f"{i:>{width}}" for i in range(imax + 1))
        lines = [head]
        for j in range(self.r + 1):
            lines.append(f"{j:>3} " + "".join(f"{self[i, j]:>{width}}" for i in range(imax + 1)))
        return "\n".join(lines)


def binomial_series(n: int) -> LaurentSeries:
    """(1 + q)^n."""
    return LaurentSeries.from_coeffs([comb(n, i) for i in range(n + 1)])
