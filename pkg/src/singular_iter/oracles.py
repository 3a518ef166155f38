"""Closed-form evaluators for the Cantor function, Lebesgue's singular function
and Minkowski's question mark function.

These work from digit or continued-fraction expansions of the exact input and
never touch the iteration machinery, so they serve as ground truth for it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .measure import BernoulliParam

MAX_DIGITS = 200


def _unit_rational(x) -> Fraction:
    r = x if isinstance(x, Fraction) else Fraction(x)
    if not 0 <= r <= 1:
        raise ValueError(f"argument must lie in [0, 1], got {x}")
    return r


def _check_count(n: int, what: str) -> None:
    if not 1 <= n <= MAX_DIGITS:
        raise ValueError(f"{what} must lie in [1, {MAX_DIGITS}], got {n}")


def expand_digits(x, base: int, count: int) -> list:
    """Greedy base-``base`` digits of x in [0, 1); terminating expansions end in zeros."""
    r = _unit_rational(x)
    digits = []
    for _ in range(count):
        r *= base
        d = r.numerator // r.denominator
        digits.append(d)
        r -= d
    return digits


def cantor_from_digits(digits: Sequence[int]) -> Fraction:
    """Cantor function value for an explicit ternary digit sequence (tail truncated)."""
    total = Fraction(0)
    for k, d in enumerate(digits, start=1):
        if d == 1:
            return total / 2 + Fraction(1, 2**k)
        total += Fraction(d, 2**k)
    return total / 2


def cantor_exact(x, digits: int = 60) -> Fraction:
    _check_count(digits, "digits")
    r = _unit_rational(x)
    if r == 1:
        return Fraction(1)
    return cantor_from_digits(expand_digits(r, 3, digits))


def cantor_classic(x, digits: int = 60) -> float:
    return float(cantor_exact(x, digits))


def lebesgue_from_bits(bits: Sequence[int], m: BernoulliParam) -> Fraction:
    total = Fraction(0)
    weight = Fraction(1)
    for b in bits:
        if b == 1:
            total += m.p * weight
            weight *= m.q
        else:
            weight *= m.p
    return total


def lebesgue_exact(m: BernoulliParam, x, bits: int = 60) -> Fraction:
    """Solution of F(x) = p F(2x) + q F(2x - 1) from the binary digits of x.

    Each 1 in position n adds p times the product of p (per earlier 0) and
    q (per earlier 1). For p = 1/2 this is x itself.
    """
    _check_count(bits, "bits")
    r = _unit_rational(x)
    if r == 1:
        return Fraction(1)
    return lebesgue_from_bits(expand_digits(r, 2, bits), m)


def lebesgue_singular(m: BernoulliParam, x, bits: int = 60) -> float:
    return float(lebesgue_exact(m, x, bits))


def continued_fraction(x: Fraction) -> list:
    """Partial quotients [a1, a2, ...] of x = [0; a1, a2, ...] in [0, 1]."""
    quotients = []
    r = x
    while r:
        r = 1 / r
        a = r.numerator // r.denominator
        quotients.append(a)
        r -= a
    return quotients


def minkowski_exact(x) -> Fraction:
    if isinstance(x, float) or not isinstance(x, (Fraction, int)):
        raise TypeError("the question mark oracle needs an exact rational (int or Fraction) argument")
    r = _unit_rational(x)
    total = Fraction(0)
    partial = 0
    for k, a in enumerate(continued_fraction(r), start=1):
        partial += a
        total += (-1) ** (k + 1) * Fraction(2) ** (1 - partial)
    return total


def minkowski_question(x) -> float:
    return float(minkowski_exact(x))
