"""Pointwise evaluation of F_{p,k} = T^k F_{p,0} for the operator

    (TF)(x) = p F(f0(x)) + q F(f1(x)),

which contracts the sup-distance by max(p, q). F_{p,0} is the identity on
(0, 1), clamped to 0 below and 1 above.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._parallel import pmap
from .estimate import NODE_BUDGET, NodeBudgetExceeded
from .measure import BernoulliParam
from .pairs import FunctionPair, exact_point


@dataclass(frozen=True)
class ApproxValue:
    value: float
    error_bound: float
    depth: int


def eval_approx(pair: FunctionPair, m: BernoulliParam, x, k: int = 40, node_budget: int = NODE_BUDGET) -> ApproxValue:
    if k < 0:
        raise ValueError(f"iteration depth k must be non-negative, got {k}")
    x = exact_point(pair, x)
    if pair.exact:
        p, q, total = m.p, m.q, Fraction(0)
    else:
        p, q, total = float(m.p), float(m.q), 0.0
    # T maps the clamped class to itself, so values outside (0, 1) are final at every depth
    stack = [(x, k, 1)]
    visited = 0
    while stack:
        y, depth, w = stack.pop()
        visited += 1
        if visited > node_budget:
            raise NodeBudgetExceeded(f"evaluation tree exceeded {node_budget} nodes at k={k}")
        if y <= 0:
            continue
        if y >= 1:
            total += w
        elif depth == 0:
            total += w * y
        else:
            stack.append((pair.f0(y), depth - 1, w * p))
            stack.append((pair.f1(y), depth - 1, w * q))
    return ApproxValue(float(total), float(m.mu**k), k)


def grid_table(pair: FunctionPair, m: BernoulliParam, grid: Sequence, k: int = 40, threads: int | None = None) -> list:
    grid = list(grid)
    if any(float(b) < float(a) for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be sorted ascending")
    values = pmap(lambda x: eval_approx(pair, m, x, k), grid, threads)
    return list(zip(grid, values))


def _lookup(table, points: np.ndarray) -> np.ndarray:
    xs, ys = table
    return np.interp(points, xs, ys, left=0.0, right=1.0)


def apply_operator(pair: FunctionPair, m: BernoulliParam, table) -> np.ndarray:
    """(TF) on the table's own grid, reading F off the table by linear interpolation.

    Outside [0, 1] F takes its clamped values 0 and 1.
    """
    xs = np.asarray(table[0], dtype=float)
    return float(m.p) * _lookup(table, pair.f0(xs)) + float(m.q) * _lookup(table, pair.f1(xs))


def contraction_factor_check(pair: FunctionPair, m: BernoulliParam, f_table, g_table, slack: float = 1e-9) -> bool:
    """sup|TF - TG| <= max(p, q) * sup|F - G| on the shared grid of two tabulated functions."""
    if not np.array_equal(np.asarray(f_table[0], dtype=float), np.asarray(g_table[0], dtype=float)):
        raise ValueError("tables must share one grid")
    before = np.max(np.abs(np.asarray(f_table[1], dtype=float) - np.asarray(g_table[1], dtype=float)))
    after = np.max(np.abs(apply_operator(pair, m, f_table) - apply_operator(pair, m, g_table)))
    return bool(after <= float(m.mu) * before + slack)
