"""Estimators of F_p(x), the probability that the orbit of x diverges to +infinity.

Two routes are provided: a rigorous bracket from enumerating the pruned tree
of symbol prefixes (exact rational masses), and Monte Carlo sampling with a
reported bias bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._parallel import pmap
from .measure import BernoulliParam
from .pairs import FunctionPair, exact_point

MAX_DEPTH = 40
NODE_BUDGET = 10**7
MC_BLOCK = 4096


class NodeBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Bracket:
    lower: Fraction
    negative_mass: Fraction
    undecided_mass: Fraction
    depth: int

    @property
    def upper(self) -> Fraction:
        return self.lower + self.undecided_mass

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return float(self.lower) - slack <= value <= float(self.upper) + slack


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    n_samples: int
    undecided_fraction: float
    std_error: float
    bias_bound: float
    n_plus: int = 0
    n_minus: int = 0
    n_undecided: int = 0

    @property
    def minus_fraction(self) -> float:
        return self.n_minus / self.n_samples


def _check_depth(depth: int) -> None:
    if not 1 <= depth <= MAX_DEPTH:
        raise ValueError(f"enumeration depth must lie in [1, {MAX_DEPTH}], got {depth}")


def enumerate_tree(pair: FunctionPair, x, depth: int, weight0, step_weights, node_budget: int = NODE_BUDGET) -> Bracket:
    """Walk the prefix tree from ``x``, pruning branches as soon as they escape [0, 1].

    ``step_weights(prev_symbol)`` gives the exact probabilities of the next
    symbol being 0 and 1 (``prev_symbol`` is None at the root). Branches with
    zero probability are skipped.
    """
    _check_depth(depth)
    x = exact_point(pair, x)
    lower = negative = undecided = Fraction(0)
    stack = [(x, 0, weight0, None)]
    visited = 0
    while stack:
        y, level, w, prev = stack.pop()
        visited += 1
        if visited > node_budget:
            raise NodeBudgetExceeded(f"prefix enumeration exceeded {node_budget} nodes at depth {depth}")
        if y > 1:
            lower += w
        elif y < 0:
            negative += w
        elif level == depth:
            undecided += w
        else:
            w0, w1 = step_weights(prev)
            if w1:
                stack.append((pair.f1(y), level + 1, w * w1, 1))
            if w0:
                stack.append((pair.f0(y), level + 1, w * w0, 0))
    return Bracket(lower, negative, undecided, depth)


def enumerate_bracket(pair: FunctionPair, m: BernoulliParam, x, depth: int, node_budget: int = NODE_BUDGET) -> Bracket:
    weights = (m.p, m.q)
    return enumerate_tree(pair, x, depth, Fraction(1), lambda prev: weights, node_budget)


def _tally_block(pair, x0, rows, max_steps, rng, zero_threshold):
    u = rng.random((rows, max_steps))
    x = np.full(rows, x0, dtype=float)
    idx = np.arange(rows)
    prev = None
    plus = minus = 0
    for t in range(max_steps):
        zero = u[idx, t] < zero_threshold(t, prev)
        xn = np.where(zero, pair.f0(x), pair.f1(x))
        up = xn > 1
        down = xn < 0
        plus += int(up.sum())
        minus += int(down.sum())
        keep = ~(up | down)
        x, idx = xn[keep], idx[keep]
        prev = np.where(zero[keep], 0, 1)
        if not idx.size:
            break
    return plus, minus, rows - plus - minus


def simulate(pair: FunctionPair, x, n_samples: int, max_steps: int, seed: int, zero_threshold, mu: Fraction,
             threads: int | None = None) -> McEstimate:
    """Monte Carlo core shared by the Bernoulli and Markov samplers.

    Sample i draws its uniforms from block i // MC_BLOCK, seeded by
    (seed, block index), so results do not depend on thread scheduling.
    ``zero_threshold(t, prev)`` returns the probability of symbol 0 at step t
    given the previous symbols of the surviving samples.
    """
    if n_samples < 1 or max_steps < 1:
        raise ValueError("n_samples and max_steps must be at least 1")
    x0 = float(x)
    if x0 > 1 or x0 < 0:
        n_plus = n_samples if x0 > 1 else 0
        counts = [(n_plus, n_samples - n_plus, 0)]
    else:
        n_blocks = -(-n_samples // MC_BLOCK)

        def block(j):
            rows = min(MC_BLOCK, n_samples - j * MC_BLOCK)
            rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(j,)))
            return _tally_block(pair, x0, rows, max_steps, rng, zero_threshold)

        counts = pmap(block, range(n_blocks), threads)
    n_plus = sum(c[0] for c in counts)
    n_minus = sum(c[1] for c in counts)
    n_undecided = sum(c[2] for c in counts)
    est = n_plus / n_samples
    return McEstimate(
        estimate=est,
        n_samples=n_samples,
        undecided_fraction=n_undecided / n_samples,
        std_error=math.sqrt(est * (1 - est) / n_samples),
        bias_bound=float(mu ** (max_steps - 1)),
        n_plus=n_plus,
        n_minus=n_minus,
        n_undecided=n_undecided,
    )


def monte_carlo(pair: FunctionPair, m: BernoulliParam, x, n_samples: int = 100_000, max_steps: int = 60,
                seed: int = 42, threads: int | None = None) -> McEstimate:
    """Fraction of sampled orbits that leave [0, 1] upwards within ``max_steps``.

    Orbits still undecided at the horizon count as not diverging upwards, so
    the estimate is biased low by at most ``bias_bound``.
    """
    p = float(m.p)
    return simulate(pair, x, n_samples, max_steps, seed, lambda t, prev: p, m.mu, threads)
