"""Bundled example arrangements."""

from __future__ import annotations

from typing import Callable

from .arrangement import Arrangement
from .errors import InputError


def boolean(n: int) -> Arrangement:
    return Arrangement.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)


def _u23() -> Arrangement:
    return Arrangement.from_columns([(1, 0), (0, 1), (1, 1)])


def _u24() -> Arrangement:
    return Arrangement.from_columns([(1, 0), (0, 1), (1, 1), (1, 2)])


def _u34() -> Arrangement:
    return Arrangement.from_columns([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])


def _mk4() -> Arrangement:
    return Arrangement.from_rows([[1, 1, 0, 0, 1], [0, 0, 1, 1, 1]])


def _k4_graphic() -> Arrangement:
    # edges ij of K4 on vertices 1..4 with vertex 4 grounded: y_i - y_j
    return Arrangement.from_columns(
        [(1, -1, 0), (1, 0, -1), (1, 0, 0), (0, 1, -1), (0, 1, 0), (0, 0, 1)]
    )


CORPUS: dict[str, Callable[[], Arrangement]] = {
    "boolean_1": lambda: boolean(1),
    "boolean_2": lambda: boolean(2),
    "boolean_3": lambda: boolean(3),
    "boolean_4": lambda: boolean(4),
    "u23": _u23,
    "u24": _u24,
    "u34": _u34,
    "mk4": _mk4,
    "k4_graphic": _k4_graphic,
}


def names() -> list[str]:
    return list(CORPUS)


def load(name: str) -> Arrangement:
    try:
        return CORPUS[name]()
    except KeyError:
        raise InputError(f"unknown corpus arrangement {name!r}; choose from {', '.join(CORPUS)}") from None


def all_arrangements() -> list[tuple[str, Arrangement]]:
    return [(name, build()) for name, build in CORPUS.items()]
