"""Function pairs (f0, f1) for random iteration, plus the built-in families.

Every map accepts a float, an exact ``Fraction`` or a numpy array. Fractions
stay exact when the family's parameters are rational (``FunctionPair.exact``),
which lets downstream code follow orbits without rounding drift.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .measure import Rational, to_rational

TOL = 1e-12
BISECT_TOL = 1e-14
BISECT_MAX_ITER = 200


def _is_exact(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


class AffineMap:
    """Increasing line with fixed point ``anchor`` and slope ``1/width``.

    Writing the map around its fixed point keeps that point exact in floating
    point; otherwise rounding pushes orbits off the repelling fixed points 0
    and 1.
    """

    def __init__(self, anchor: Fraction, width: Fraction):
        self.anchor = anchor
        self.width = width
        self._anchor_f = float(anchor)
        self._width_f = float(width)

    def __call__(self, x):
        if _is_exact(x):
            return self.anchor + (x - self.anchor) / self.width
        return self._anchor_f + (x - self._anchor_f) / self._width_f

    def inverse(self, y):
        if _is_exact(y):
            return self.anchor + self.width * (y - self.anchor)
        return self._anchor_f + self._width_f * (y - self._anchor_f)


class MinkowskiMap:
    """f0(x) = x/(1-x) on [0, 1/2], 2x elsewhere; ``mirrored`` gives f1(x) = 1 - f0(1-x)."""

    HALF = Fraction(1, 2)

    def __init__(self, mirrored: bool = False):
        self.mirrored = mirrored

    @classmethod
    def _base(cls, x):
        if isinstance(x, np.ndarray):
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.where((x >= 0) & (x <= 0.5), x / (1 - x), 2 * x)
        if 0 <= x <= cls.HALF:
            return x / (1 - x)
        return 2 * x

    @staticmethod
    def _base_inverse(y):
        return y / (1 + y)

    def __call__(self, x):
        if isinstance(x, int):
            x = Fraction(x)
        if self.mirrored:
            return 1 - self._base(1 - x)
        return self._base(x)

    def inverse(self, y):
        if isinstance(y, int):
            y = Fraction(y)
        if self.mirrored:
            return 1 / (2 - y)
        return self._base_inverse(y)


class PiecewiseLinearMap:
    """Continuous piecewise-linear map through ``points``, extended linearly past both ends."""

    def __init__(self, points: Sequence[tuple]):
        pts = sorted((to_rational(x), to_rational(y)) for x, y in points)
        if len(pts) < 2:
            raise ValueError("a piecewise-linear map needs at least two breakpoints")
        xs = [x for x, _ in pts]
        if len(set(xs)) != len(xs):
            raise ValueError("breakpoint abscissae must be distinct")
        self.xs = xs
        self.ys = [y for _, y in pts]
        self.slopes = [
            (self.ys[i + 1] - self.ys[i]) / (xs[i + 1] - xs[i]) for i in range(len(xs) - 1)
        ]
        self._xs_f = np.array([float(v) for v in self.xs])
        self._ys_f = np.array([float(v) for v in self.ys])
        self._slopes_f = np.array([float(v) for v in self.slopes])

    def _segment(self, x) -> int:
        i = bisect.bisect_right(self.xs, x) - 1
        return min(max(i, 0), len(self.slopes) - 1)

    def __call__(self, x):
        if isinstance(x, np.ndarray):
            idx = np.clip(np.searchsorted(self._xs_f, x, side="right") - 1, 0, len(self._slopes_f) - 1)
            return self._ys_f[idx] + (x - self._xs_f[idx]) * self._slopes_f[idx]
        i = self._segment(x)
        if _is_exact(x):
            return self.ys[i] + (x - self.xs[i]) * self.slopes[i]
        return float(self._ys_f[i] + (x - self._xs_f[i]) * self._slopes_f[i])


def bisect_inverse(f: Callable, y: float, lo: float, hi: float) -> float:
    """Solve f(x) = y on [lo, hi] for increasing f."""
    y = float(y)
    lo, hi = float(lo), float(hi)
    for _ in range(BISECT_MAX_ITER):
        if hi - lo <= BISECT_TOL:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class FunctionPair:
    f0: Callable
    f1: Callable
    f0_inv_on_unit: Callable
    f1_inv_on_unit: Callable
    a: Fraction
    b: Fraction
    s: Fraction
    symmetric: bool = False
    name: str = "custom"
    exact: bool = False
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not 0 < self.a <= self.b < 1:
            raise ValueError(f"pair requires 0 < a <= b < 1, got a={self.a}, b={self.b}")
        if not self.s > 1:
            raise ValueError(f"pair requires slope bound s > 1, got s={self.s}")
        if self.symmetric and abs(float(self.a) - (1 - float(self.b))) > TOL:
            raise ValueError(f"symmetric pair requires a = 1 - b, got a={self.a}, b={self.b}")


@dataclass(frozen=True)
class Violation:
    tag: str
    x: float
    detail: str


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def tags(self) -> set:
        return {v.tag for v in self.violations}


def make_affine_pair(a: Rational, b: Rational) -> FunctionPair:
    a, b = to_rational(a), to_rational(b)
    if not 0 < a <= b < 1:
        raise ValueError(f"affine family requires 0 < a <= b < 1, got a={a}, b={b}")
    f0 = AffineMap(Fraction(0), a)
    f1 = AffineMap(Fraction(1), 1 - b)
    return FunctionPair(
        f0=f0,
        f1=f1,
        f0_inv_on_unit=f0.inverse,
        f1_inv_on_unit=f1.inverse,
        a=a,
        b=b,
        s=min(1 / a, 1 / (1 - b)),
        symmetric=abs(b - (1 - a)) <= TOL,
        name="affine",
        exact=True,
        params={"a": a, "b": b},
    )


def make_minkowski_pair() -> FunctionPair:
    f0 = MinkowskiMap()
    f1 = MinkowskiMap(mirrored=True)
    half = Fraction(1, 2)
    return FunctionPair(
        f0=f0,
        f1=f1,
        f0_inv_on_unit=f0.inverse,
        f1_inv_on_unit=f1.inverse,
        a=half,
        b=half,
        s=Fraction(2),
        symmetric=True,
        name="minkowski",
        exact=True,
    )


def make_piecewise_pair(f0_points, f1_points, a, b, s, symmetric: bool = False) -> FunctionPair:
    """Custom pair from breakpoint lists; check it with ``validate_assumptions`` before use."""
    f0 = PiecewiseLinearMap(f0_points)
    f1 = PiecewiseLinearMap(f1_points)
    a, b, s = to_rational(a), to_rational(b), to_rational(s)
    return FunctionPair(
        f0=f0,
        f1=f1,
        f0_inv_on_unit=lambda y: bisect_inverse(f0, y, 0.0, float(a)),
        f1_inv_on_unit=lambda y: bisect_inverse(f1, y, float(b), 1.0),
        a=a,
        b=b,
        s=s,
        symmetric=symmetric,
        name="custom",
        exact=True,
        params={"f0": f0_points, "f1": f1_points},
    )


def exact_point(pair: FunctionPair, x):
    """``x`` as an exact rational when the pair's maps are rational, else as a float.

    Floats convert to the rational they actually encode, so results refer to
    the very same point the caller passed in.
    """
    if pair.exact:
        return x if isinstance(x, Fraction) else Fraction(x)
    return float(x)


def apply(pair: FunctionPair, symbol: int, x):
    return pair.f0(x) if symbol == 0 else pair.f1(x)


def apply_inverse(pair: FunctionPair, symbol: int, y):
    if not 0 <= y <= 1:
        raise ValueError(f"inverse branches are defined on [0, 1] only, got y={y}")
    return pair.f0_inv_on_unit(y) if symbol == 0 else pair.f1_inv_on_unit(y)


def validate_assumptions(pair: FunctionPair, grid_points: int = 1001) -> ValidationReport:
    """Grid check of the monotonicity (A1), normalisation (A2), escape-slope (A3)
    and, for symmetric pairs, reflection (A4) assumptions on [-2, 3]."""
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    report = ValidationReport()
    bad = report.violations.append
    xs = np.linspace(-2.0, 3.0, grid_points)
    a, b, s = float(pair.a), float(pair.b), float(pair.s)
    y0 = [float(pair.f0(float(x))) for x in xs]
    y1 = [float(pair.f1(float(x))) for x in xs]

    for name, ys in (("f0", y0), ("f1", y1)):
        for i in range(grid_points - 1):
            if not ys[i + 1] > ys[i]:
                bad(Violation("A1", float(xs[i]), f"{name} not strictly increasing on [{xs[i]}, {xs[i + 1]}]"))

    for name, f, x, target in (("f0", pair.f0, 0.0, 0.0), ("f0", pair.f0, a, 1.0),
                               ("f1", pair.f1, b, 0.0), ("f1", pair.f1, 1.0, 1.0)):
        got = float(f(x))
        if abs(got - target) > TOL:
            bad(Violation("A2", x, f"{name}({x}) = {got!r}, expected {target}"))

    for x, u, v in zip(xs, y0, y1):
        x = float(x)
        if x <= 0 and u > s * x + TOL:
            bad(Violation("A3", x, f"f0(x) = {u!r} > s*x"))
        if x >= a and u < 1 + s * (x - a) - TOL:
            bad(Violation("A3", x, f"f0(x) = {u!r} < 1 + s*(x - a)"))
        if x <= b and v > s * (x - b) + TOL:
            bad(Violation("A3", x, f"f1(x) = {v!r} > s*(x - b)"))
        if x >= 1 and v < 1 + s * (x - 1) - TOL:
            bad(Violation("A3", x, f"f1(x) = {v!r} < 1 + s*(x - 1)"))

    if pair.symmetric:
        if abs(a - (1 - b)) > TOL:
            bad(Violation("A4", b, "symmetric pair needs a = 1 - b"))
        for x, v in zip(xs, y1):
            r = float(pair.f0(1 - float(x))) + v - 1
            if abs(r) > TOL:
                bad(Violation("A4", float(x), f"f0(1-x) + f1(x) - 1 = {r!r}"))
    return report
