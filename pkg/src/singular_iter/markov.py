"""Two-symbol Markov measures on a subshift of finite type, and the
divergence-probability estimators driven by them.

A Markov measure is given by a 0/1 adjacency matrix A, a transition matrix P
supported exactly on A, and a stationary row vector pi with pi P = pi. The
cylinder [w1, ..., wn] has mass pi[w1] P[w1, w2] ... P[w(n-1), wn].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .estimate import Bracket, McEstimate, enumerate_tree, simulate
from .measure import to_rational
from .pairs import FunctionPair


def _matrix(rows) -> tuple:
    mat = tuple(tuple(to_rational(v) for v in row) for row in rows)
    if len(mat) != 2 or any(len(row) != 2 for row in mat):
        raise ValueError("only 2x2 matrices are supported")
    return mat


def stationary_vector(transition) -> tuple:
    """Exact stationary distribution of an irreducible 2-state chain.

    pi is proportional to (P[1][0], P[0][1]); a zero off-diagonal entry makes
    the chain reducible and the stationary vector non-unique.
    """
    P = _matrix(transition)
    for i, row in enumerate(P):
        if any(v < 0 for v in row) or sum(row) != 1:
            raise ValueError(f"row {i} of the transition matrix is not a probability vector: {row}")
    if P[0][1] == 0 or P[1][0] == 0:
        raise ValueError("reducible chain (zero off-diagonal entry): stationary vector is not unique")
    total = P[1][0] + P[0][1]
    return (P[1][0] / total, P[0][1] / total)


@dataclass(frozen=True)
class MarkovMeasure:
    adjacency: tuple
    transition: tuple
    stationary: tuple

    def __post_init__(self):
        A = tuple(tuple(int(v) for v in row) for row in self.adjacency)
        P = _matrix(self.transition)
        pi = tuple(to_rational(v) for v in self.stationary)
        for i in range(2):
            if sum(P[i]) != 1:
                raise ValueError(f"transition row {i} does not sum to 1")
            for j in range(2):
                if A[i][j] not in (0, 1):
                    raise ValueError("adjacency entries must be 0 or 1")
                if (P[i][j] > 0) != (A[i][j] == 1) or P[i][j] < 0:
                    raise ValueError(f"P[{i}][{j}] = {P[i][j]} must be positive exactly where A[{i}][{j}] = 1")
        if sum(pi) != 1 or any(v < 0 for v in pi):
            raise ValueError("stationary vector must be a probability vector")
        if tuple(pi[0] * P[0][j] + pi[1] * P[1][j] for j in range(2)) != pi:
            raise ValueError("stationary vector is not invariant under the transition matrix")
        object.__setattr__(self, "adjacency", A)
        object.__setattr__(self, "transition", P)
        object.__setattr__(self, "stationary", pi)

    @property
    def mu(self) -> Fraction:
        return max(max(row) for row in self.transition)


def make_markov_measure(transition, adjacency=None) -> MarkovMeasure:
    P = _matrix(transition)
    if adjacency is None:
        adjacency = tuple(tuple(int(v > 0) for v in row) for row in P)
    return MarkovMeasure(adjacency, P, stationary_vector(P))


def markov_cylinder_probability(mm: MarkovMeasure, w: Sequence[int]) -> Fraction:
    if not len(w):
        raise ValueError("Markov cylinder probability needs a non-empty word")
    prob = mm.stationary[w[0]]
    for i, j in zip(w, w[1:]):
        prob *= mm.transition[i][j]
    return prob


def markov_enumerate_bracket(pair: FunctionPair, mm: MarkovMeasure, x, depth: int) -> Bracket:
    P, pi = mm.transition, mm.stationary

    def weights(prev):
        return pi if prev is None else P[prev]

    return enumerate_tree(pair, x, depth, Fraction(1), weights)


def _zero_threshold(mm: MarkovMeasure):
    pi0 = float(mm.stationary[0])
    row0 = np.array([float(mm.transition[0][0]), float(mm.transition[1][0])])

    def threshold(t, prev):
        return pi0 if prev is None else row0[prev]

    return threshold


def markov_monte_carlo(pair: FunctionPair, mm: MarkovMeasure, x, n_samples: int = 100_000, max_steps: int = 60,
                       seed: int = 42, threads: int | None = None) -> McEstimate:
    """Like ``estimate.monte_carlo`` with symbols drawn from the Markov chain.

    The bias bound uses the largest transition probability; no decay rate for
    undecided orbits is claimed beyond that per-step bound.
    """
    return simulate(pair, x, n_samples, max_steps, seed, _zero_threshold(mm), mm.mu, threads)


def markov_sample_paths(mm: MarkovMeasure, n_paths: int, length: int, seed: int) -> np.ndarray:
    """Raw symbol paths from the chain, started from the stationary vector."""
    rng = np.random.default_rng(seed)
    u = rng.random((n_paths, length))
    threshold = _zero_threshold(mm)
    paths = np.empty((n_paths, length), dtype=np.int8)
    prev = None
    for t in range(length):
        paths[:, t] = np.where(u[:, t] < threshold(t, prev), 0, 1)
        prev = paths[:, t]
    return paths
