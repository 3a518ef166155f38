"""Plateaus of F_p: the intervals generated from [a, b] by the inverse branches.

Level 0 is [a, b] where F_p = p. Pulling a level-n plateau back through f0
multiplies its value by p; pulling it back through f1 sends v to p + q v.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fixedpoint import eval_approx
from .measure import BernoulliParam, Word
from .pairs import FunctionPair

MAX_LEVEL = 25
NODE_BUDGET = 2**24


@dataclass(frozen=True)
class PlateauNode:
    left: object
    right: object
    value: Fraction
    word: Word
    level: int

    @property
    def length(self):
        return self.right - self.left

    @property
    def midpoint(self):
        return (self.left + self.right) / 2


def _check(pair: FunctionPair, max_level: int, node_budget: int) -> None:
    if pair.a == pair.b:
        raise ValueError("degenerate plateau: a=b (the level-0 interval [a, b] is a single point)")
    if not 0 <= max_level <= MAX_LEVEL:
        raise ValueError(f"max_level must lie in [0, {MAX_LEVEL}], got {max_level}")
    if 2 ** (max_level + 1) - 1 > node_budget:
        raise ValueError(f"max_level={max_level} needs {2 ** (max_level + 1) - 1} nodes, over the budget of {node_budget}")


def plateau_levels(pair: FunctionPair, m: BernoulliParam, max_level: int, node_budget: int = NODE_BUDGET):
    """Yield the sorted list of nodes at each level 0..max_level."""
    _check(pair, max_level, node_budget)
    a, b = (pair.a, pair.b) if pair.exact else (float(pair.a), float(pair.b))
    level = [PlateauNode(a, b, m.p, (), 0)]
    yield level
    for n in range(1, max_level + 1):
        left = [PlateauNode(pair.f0_inv_on_unit(nd.left), pair.f0_inv_on_unit(nd.right), m.p * nd.value, (0,) + nd.word, n)
                for nd in level]
        right = [PlateauNode(pair.f1_inv_on_unit(nd.left), pair.f1_inv_on_unit(nd.right), m.p + m.q * nd.value, (1,) + nd.word, n)
                 for nd in level]
        # both branches are increasing and f0^{-1}[0,1] = [0,a] sits left of f1^{-1}[0,1] = [b,1]
        level = left + right
        yield level


def plateau_tree(pair: FunctionPair, m: BernoulliParam, max_level: int, node_budget: int = NODE_BUDGET) -> list:
    nodes = []
    for level in plateau_levels(pair, m, max_level, node_budget):
        nodes.extend(level)
    return nodes


def value_from_word(word, m: BernoulliParam) -> Fraction:
    v = m.p
    for symbol in reversed(word):
        v = m.p * v if symbol == 0 else m.p + m.q * v
    return v


def total_plateau_length(pair: FunctionPair, max_level: int, node_budget: int = NODE_BUDGET) -> float:
    # lengths do not depend on p
    m = BernoulliParam(Fraction(1, 2))
    total = 0
    for level in plateau_levels(pair, m, max_level, node_budget):
        total += sum(nd.length for nd in level)
    return float(total)


def plateau_consistency_check(pair: FunctionPair, m: BernoulliParam, nodes, k: int = 40) -> bool:
    """Each plateau's exact value agrees with F_{p,k} at its midpoint to within max(p,q)^k."""
    bound = float(m.mu**k)
    return all(abs(eval_approx(pair, m, nd.midpoint, k).value - float(nd.value)) <= bound for nd in nodes)
