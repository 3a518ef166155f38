"""Finite orbits x_{n+1} = f_{w_{n+1}}(x_n) and their escape classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .measure import flip_word
from .pairs import FunctionPair, apply, exact_point


class Kind(enum.Enum):
    DIVERGED_PLUS = "diverged_plus"
    DIVERGED_MINUS = "diverged_minus"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class Outcome:
    kind: Kind
    steps: int
    last_x: float


def classify(x) -> Kind:
    # open conditions: an orbit sitting exactly on 0 or 1 has not escaped
    if x > 1:
        return Kind.DIVERGED_PLUS
    if x < 0:
        return Kind.DIVERGED_MINUS
    return Kind.UNDECIDED


def run(pair: FunctionPair, x0, word: Sequence[int]) -> Outcome:
    """Iterate along ``word``, stopping at the first iterate outside [0, 1].

    Once an iterate leaves the unit interval the escape slope bounds pin down
    the limit, so the remaining symbols are not needed.
    """
    x = x0
    kind = classify(x)
    if kind is not Kind.UNDECIDED:
        return Outcome(kind, 0, x)
    for step, symbol in enumerate(word, start=1):
        x = apply(pair, symbol, x)
        kind = classify(x)
        if kind is not Kind.UNDECIDED:
            return Outcome(kind, step, x)
    return Outcome(Kind.UNDECIDED, len(word), x)


def orbit(pair: FunctionPair, x0, word: Sequence[int]) -> list:
    """Full path [x0, x1, ..., xn] with no early stopping."""
    path = [x0]
    for symbol in word:
        path.append(apply(pair, symbol, path[-1]))
    return path


def run_coupled_symmetry_check(pair: FunctionPair, x0, word: Sequence[int], tol: float = 1e-10) -> bool:
    """Check that the orbit of 1 - x0 under the flipped word mirrors the orbit of x0.

    Exact pairs are followed in rationals; escaped orbits grow geometrically
    and would swamp any absolute tolerance in floating point.
    """
    if not pair.symmetric:
        raise ValueError("coupled symmetry check needs a symmetric pair (a = 1 - b and f0(1-x) + f1(x) = 1)")
    x0 = exact_point(pair, x0)
    xs = orbit(pair, x0, word)
    ys = orbit(pair, 1 - x0, flip_word(word))
    return all(float(abs(y - (1 - x))) <= tol for x, y in zip(xs, ys))
