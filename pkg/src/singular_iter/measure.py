"""Cylinder sets over binary sequences and their Bernoulli probabilities.

Words are plain tuples of 0/1 symbols; an empty tuple stands for the whole
sequence space. All probabilities are exact ``Fraction`` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

Word = tuple  # tuple[int, ...] with entries in {0, 1}
Rational = Union[Fraction, int, str, float]


def to_rational(value: Rational) -> Fraction:
    """Parse ``value`` as an exact rational.

    Floats go through their shortest decimal repr, so ``0.3`` becomes 3/10
    rather than the nearest binary fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        return Fraction(repr(float(value)))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def make_word(symbols: Iterable[int]) -> Word:
    word = tuple(int(s) for s in symbols)
    for s in word:
        if s not in (0, 1):
            raise ValueError(f"word symbols must be 0 or 1, got {s}")
    return word


@dataclass(frozen=True)
class BernoulliParam:
    """Probability ``p`` of symbol 0; ``q = 1 - p`` is always derived."""

    p: Fraction
    q: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p = to_rational(self.p)
        if not 0 < p < 1:
            raise ValueError(f"Bernoulli parameter must satisfy 0 < p < 1, got {p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", 1 - p)

    @property
    def mu(self) -> Fraction:
        return max(self.p, self.q)

    def swapped(self) -> BernoulliParam:
        return BernoulliParam(self.q)


def cylinder_probability(w: Sequence[int], m: BernoulliParam) -> Fraction:
    # one normalisation on integers instead of two Fraction powers and a product
    ones = sum(w)
    num, den = m.p.numerator, m.p.denominator
    return Fraction(num ** (len(w) - ones) * (den - num) ** ones, den ** len(w))


def flip_word(w: Sequence[int]) -> Word:
    return tuple(1 - s for s in w)


def concat_probability_check(w1: Sequence[int], w2: Sequence[int], m: BernoulliParam) -> bool:
    """Prefix-splitting identity: P[w1 w2] == P[w1] * P[w2], exactly."""
    joined = tuple(w1) + tuple(w2)
    return cylinder_probability(joined, m) == cylinder_probability(w1, m) * cylinder_probability(w2, m)


def all_words(n: int):
    """Every word of length ``n`` in lexicographic order."""
    from itertools import product

    return product((0, 1), repeat=n)


def sample_symbol(rng: np.random.Generator, m: BernoulliParam) -> int:
    return 0 if rng.random() < float(m.p) else 1


def sample_symbols(rng: np.random.Generator, m: BernoulliParam, size) -> np.ndarray:
    """Vectorised ``sample_symbol``; consumes one uniform draw per symbol."""
    return (rng.random(size) >= float(m.p)).astype(np.int8)
