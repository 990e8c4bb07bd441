"""Sparse exact elements of Sym ⊗ ∧ on r generators.

A term is keyed by ``(alpha, S)``: ``alpha`` an exponent tuple for the
commutative variables and ``S`` a bitmask of anticommutative generators,
always written in increasing order.  The same class serves both sides of
the pairing; only the printed variable names differ (``x``/``dx`` for the
polynomial side, ``e``/``de`` for the operator side).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import CapExceeded, ParseError, VarCountMismatch

MAX_EXPONENT = 64


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _wedge_sign(s: int, t: int) -> int:
    """Sign of dx_S ∧ dx_T once reordered increasingly (S, T disjoint)."""
    inversions = 0
    for j in _bits(t):
        inversions += bin(s >> (j + 1)).count("1")
    return -1 if inversions & 1 else 1


class SuperElement:
    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Mapping | None = None):
        self.num_vars = num_vars
        clean = {}
        if terms:
            for (alpha, s), c in terms.items():
                if c:
                    clean[(tuple(alpha), s)] = Fraction(c)
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, r: int) -> "SuperElement":
        return cls(r)

    @classmethod
    def one(cls, r: int) -> "SuperElement":
        return cls(r, {((0,) * r, 0): 1})

    @classmethod
    def monomial(cls, alpha: Sequence[int], s: int | Iterable[int] = 0, coeff=1) -> "SuperElement":
        r = len(alpha)
        if not isinstance(s, int):
            s = _mask(s)
        return cls(r, {(tuple(alpha), s): coeff})

    @classmethod
    def var(cls, i: int, r: int) -> "SuperElement":
        """The commutative generator x_{i+1}."""
        return cls.monomial(tuple(int(j == i) for j in range(r)))

    @classmethod
    def dvar(cls, i: int, r: int) -> "SuperElement":
        """The anticommutative generator dx_{i+1}."""
        return cls.monomial((0,) * r, 1 << i)

    @classmethod
    def linear(cls, v: Sequence) -> "SuperElement":
        r = len(v)
        return cls(r, {(tuple(int(j == i) for j in range(r)), 0): c for i, c in enumerate(v)})

    @classmethod
    def dlinear(cls, v: Sequence) -> "SuperElement":
        r = len(v)
        return cls(r, {((0,) * r, 1 << i): c for i, c in enumerate(v)})

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, SuperElement):
            return self.num_vars == other.num_vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == SuperElement.one(self.num_vars) * other
        return NotImplemented

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "SuperElement"):
        if self.num_vars != other.num_vars:
            raise VarCountMismatch(f"{self.num_vars} vs {other.num_vars} variables")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SuperElement.one(self.num_vars) * other
        if not isinstance(other, SuperElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return SuperElement(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperElement(self.num_vars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SuperElement(self.num_vars, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, SuperElement):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for (a, s), c in self.terms.items():
            for (b, t), e in other.terms.items():
                if s & t:
                    continue
                alpha = tuple(x + y for x, y in zip(a, b))
                if sum(alpha) > MAX_EXPONENT:
                    raise CapExceeded(f"degree exceeds {MAX_EXPONENT}")
                key = (alpha, s | t)
                out[key] = out.get(key, 0) + _wedge_sign(s, t) * c * e
        return SuperElement(self.num_vars, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        out = SuperElement.one(self.num_vars)
        for _ in range(n):
            out = out * self
        return out

    # -- grading -----------------------------------------------------------

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(sum(a), bin(s).count("1")) for a, s in self.terms}

    def bidegree(self) -> tuple[int, int]:
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ValueError("element is not bihomogeneous")
        return next(iter(degs))

    def component(self, a: int, b: int) -> "SuperElement":
        return SuperElement(self.num_vars, {
            k: c for k, c in self.terms.items() if sum(k[0]) == a and bin(k[1]).count("1") == b
        })

    def constant_term(self) -> Fraction:
        return self.terms.get(((0,) * self.num_vars, 0), Fraction(0))

    # -- operators ---------------------------------------------------------

    def partial(self, j: int) -> "SuperElement":
        out: dict = {}
        for (a, s), c in self.terms.items():
            if a[j]:
                b = list(a)
                b[j] -= 1
                key = (tuple(b), s)
                out[key] = out.get(key, 0) + c * a[j]
        return SuperElement(self.num_vars, out)

    def d(self) -> "SuperElement":
        """d(f dx_S) = sum_j (∂f/∂x_j) dx_j ∧ dx_S."""
        out: dict = {}
        for (a, s), c in self.terms.items():
            for j in range(self.num_vars):
                if not a[j] or (s >> j) & 1:
                    continue
                b = list(a)
                b[j] -= 1
                sign = -1 if bin(s & ((1 << j) - 1)).count("1") & 1 else 1
                key = (tuple(b), s | (1 << j))
                out[key] = out.get(key, 0) + sign * a[j] * c
        return SuperElement(self.num_vars, out)

    def iota(self, v: Sequence) -> "SuperElement":
        """Contraction: the odd derivation with iota_v(dx_i) = v_i."""
        if len(v) != self.num_vars:
            raise VarCountMismatch(f"vector of length {len(v)} on {self.num_vars} variables")
        out: dict = {}
        for (a, s), c in self.terms.items():
            for m, i in enumerate(_bits(s)):
                if not v[i]:
                    continue
                key = (a, s & ~(1 << i))
                out[key] = out.get(key, 0) + (-1) ** m * v[i] * c
        return SuperElement(self.num_vars, out)

    def iota_basis(self, i: int) -> "SuperElement":
        return self.iota([int(j == i) for j in range(self.num_vars)])

    def iota_euler(self) -> "SuperElement":
        """iota_E = sum_i x_i iota_{e_i}."""
        out = SuperElement.zero(self.num_vars)
        for i in range(self.num_vars):
            out = out + SuperElement.var(i, self.num_vars) * self.iota_basis(i)
        return out

    def substitute(self, K: Sequence[Sequence]) -> "SuperElement":
        """Pull back along y = K z: x_j -> sum_l K[j][l] z_l and likewise dx_j.

        K has ``num_vars`` rows; the result lives on ``len(K[0])`` variables.
        """
        if len(K) != self.num_vars:
            raise VarCountMismatch(f"substitution matrix has {len(K)} rows, need {self.num_vars}")
        s_dim = len(K[0]) if K else 0
        cols = [[Fraction(K[j][l]) for l in range(s_dim)] for j in range(self.num_vars)]
        lin = [SuperElement.linear(c) if s_dim else SuperElement.zero(0) for c in cols]
        dlin = [SuperElement.dlinear(c) if s_dim else SuperElement.zero(0) for c in cols]
        cache: dict = {}

        def lin_pow(j, e):
            if (j, e) not in cache:
                cache[j, e] = lin[j] ** e if s_dim else (SuperElement.one(0) if e == 0 else SuperElement.zero(0))
            return cache[j, e]

        out = SuperElement.zero(s_dim)
        for (a, s), c in self.terms.items():
            t = SuperElement.one(s_dim) * c
            for j, e in enumerate(a):
                if e:
                    t = t * lin_pow(j, e)
            for j in _bits(s):
                t = t * dlin[j]
            out = out + t
        return out

    # -- output ------------------------------------------------------------

    def format(self, var: str = "x") -> str:
        if not self.terms:
            return "0"

        def key(item):
            (a, s), _ = item
            return (sum(a), bin(s).count("1"), tuple(-x for x in a), _bits(s))

        parts = []
        for (a, s), c in sorted(self.terms.items(), key=key):
            factors = []
            for i, e in enumerate(a):
                if e == 1:
                    factors.append(f"{var}{i + 1}")
                elif e > 1:
                    factors.append(f"{var}{i + 1}^{e}")
            factors += [f"d{var}{i + 1}" for i in _bits(s)]
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"SuperElement({self.num_vars}, {self.format()!r})"


def _mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


# -- pairing and the ⊙ action ---------------------------------------------


def odot(f: SuperElement, g: SuperElement) -> SuperElement:
    """Let f act on g: e_i -> ∂/∂x_i, de_i -> iota_{e_i}, rightmost factor first."""
    f._check(g)
    out = SuperElement.zero(g.num_vars)
    for (a, s), c in f.terms.items():
        h = g
        for i in reversed(_bits(s)):
            h = h.iota_basis(i)
            if h.is_zero():
                break
        for j, e in enumerate(a):
            for _ in range(e):
                if h.is_zero():
                    break
                h = h.partial(j)
        out = out + h * c
    return out


def monomial_weight(alpha: Sequence[int], s: int) -> int:
    """pairing(e^alpha de_S, x^alpha dx_S) = alpha! (-1)^(|S|(|S|-1)/2)."""
    w = 1
    for e in alpha:
        w *= factorial(e)
    k = bin(s).count("1")
    return -w if (k * (k - 1) // 2) & 1 else w


def pairing(f: SuperElement, g: SuperElement) -> Fraction:
    """Constant term of f ⊙ g, evaluated monomial by monomial."""
    f._check(g)
    total = Fraction(0)
    for key, c in f.terms.items():
        e = g.terms.get(key)
        if e:
            total += c * e * monomial_weight(*key)
    return total


# -- bidegree slices --------------------------------------------------------


@lru_cache(maxsize=None)
def commutative_monomials(r: int, a: int) -> tuple:
    out = []
    for combo in combinations_with_replacement(range(r), a):
        alpha = [0] * r
        for i in combo:
            alpha[i] += 1
        out.append(tuple(alpha))
    return tuple(out)


@lru_cache(maxsize=None)
def anticommutative_masks(r: int, b: int) -> tuple:
    return tuple(_mask(c) for c in combinations(range(r), b))


class SliceBasis:
    """Monomial basis of the (a, b) slice, with coordinates for vectors."""

    def __init__(self, r: int, a: int, b: int):
        self.r, self.a, self.b = r, a, b
        self.keys = [(alpha, s) for alpha in commutative_monomials(r, a) for s in anticommutative_masks(r, b)]
        self.index = {k: i for i, k in enumerate(self.keys)}

    def __len__(self):
        return len(self.keys)

    def weights(self) -> list[Fraction]:
        return [Fraction(monomial_weight(*k)) for k in self.keys]

    def vector(self, elt: SuperElement) -> dict[int, Fraction]:
        out = {}
        for k, c in elt.terms.items():
            i = self.index.get(k)
            if i is None:
                raise ValueError(f"term {k} outside bidegree ({self.a},{self.b})")
            out[i] = c
        return out

    def element(self, vec: Sequence | Mapping) -> SuperElement:
        items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
        return SuperElement(self.r, {self.keys[i]: c for i, c in items if c})


@lru_cache(maxsize=None)
def slice_basis(r: int, a: int, b: int) -> SliceBasis:
    return SliceBasis(r, a, b)


# -- parsing ----------------------------------------------------------------

_FACTOR = re.compile(r"^(d?)([a-z])(\d+)(?:\^(\d+))?$")


def parse_element(text: str, num_vars: int | None = None) -> SuperElement:
    """Parse sums of products like ``3/2*x1^2*x3*dx2*dx4 - e1*de2``."""
    src = text.replace(" ", "")
    if not src:
        raise ParseError("empty element")
    chunks = re.findall(r"[+-]?[^+-]+", src)
    if "".join(chunks) != src:
        raise ParseError(f"cannot split {text!r} into terms")
    parsed = []
    top = 0
    for chunk in chunks:
        sign = -1 if chunk.startswith("-") else 1
        body = chunk.lstrip("+-")
        coeff = Fraction(sign)
        factors = []
        for tok in body.split("*"):
            if not tok:
                raise ParseError(f"empty factor in {chunk!r}")
            m = _FACTOR.match(tok)
            if m:
                idx = int(m.group(3))
                if idx < 1:
                    raise ParseError(f"variable index must be >= 1 in {tok!r}")
                top = max(top, idx)
                factors.append((bool(m.group(1)), idx - 1, int(m.group(4) or 1)))
                continue
            try:
                coeff *= Fraction(tok)
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad factor {tok!r}") from None
        parsed.append((coeff, factors))
    r = top if num_vars is None else num_vars
    if top > r:
        raise VarCountMismatch(f"index {top} exceeds {r} variables")
    out = SuperElement.zero(r)
    for coeff, factors in parsed:
        t = SuperElement.one(r) * coeff
        for odd, i, e in factors:
            g = SuperElement.dvar(i, r) if odd else SuperElement.var(i, r)
            t = t * g ** e
        out = out + t
    return out
