from fractions import Fraction

import pytest

from singular_iter import estimate
from singular_iter.estimate import Bracket, NodeBudgetExceeded, enumerate_bracket, monte_carlo
from singular_iter.measure import BernoulliParam, all_words, cylinder_probability
from singular_iter.trajectory import Kind, run

from conftest import builtin_pairs

HALF = BernoulliParam(Fraction(1, 2))
P_VALUES = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
GRID21 = [Fraction(i, 20) for i in range(21)]


def brute_force_bracket(pair, m, x, depth):
    """Sum cylinder masses over every word of length ``depth``, classifying each by a plain run."""
    masses = {Kind.DIVERGED_PLUS: Fraction(0), Kind.DIVERGED_MINUS: Fraction(0), Kind.UNDECIDED: Fraction(0)}
    for w in all_words(depth):
        masses[run(pair, Fraction(x), w).kind] += cylinder_probability(w, m)
    return masses[Kind.DIVERGED_PLUS], masses[Kind.DIVERGED_MINUS], masses[Kind.UNDECIDED]


def test_hand_enumerated_example(cantor):
    b = enumerate_bracket(cantor, HALF, 0.25, 3)
    assert (b.lower, b.negative_mass, b.undecided_mass) == (Fraction(1, 4), Fraction(5, 8), Fraction(1, 8))
    assert b.upper == Fraction(3, 8)


def test_escaped_start(any_pair):
    b = enumerate_bracket(any_pair, HALF, -0.5, 1)
    assert (b.lower, b.negative_mass, b.undecided_mass) == (0, 1, 0)
    assert enumerate_bracket(any_pair, HALF, 2, 1).lower == 1


@pytest.mark.parametrize("depth", [0, 41])
def test_depth_range(cantor, depth):
    with pytest.raises(ValueError):
        enumerate_bracket(cantor, HALF, 0.3, depth)


def test_node_budget(cantor):
    with pytest.raises(NodeBudgetExceeded):
        enumerate_bracket(cantor, HALF, Fraction(1, 4), 40, node_budget=10)


@pytest.mark.parametrize("name", sorted(builtin_pairs()))
@pytest.mark.parametrize("p", [Fraction(1, 4), Fraction(2, 3)])
def test_matches_brute_force(name, p):
    pair = builtin_pairs()[name]
    m = BernoulliParam(p)
    for x in [Fraction(i, 10) for i in range(-1, 12)] + [Fraction(1, 4), Fraction(2, 7)]:
        for depth in (1, 4, 9):
            b = enumerate_bracket(pair, m, x, depth)
            assert (b.lower, b.negative_mass, b.undecided_mass) == brute_force_bracket(pair, m, x, depth)


@pytest.mark.parametrize("p", P_VALUES)
def test_bracket_invariants(any_pair, p):
    m = BernoulliParam(p)
    prev = None
    for x in GRID21:
        d1 = enumerate_bracket(any_pair, m, x, 8)
        d2 = enumerate_bracket(any_pair, m, x, 16)
        assert d2.lower + d2.negative_mass + d2.undecided_mass == 1
        assert d1.lower <= d2.lower and d1.upper >= d2.upper
        for d in range(1, 21):
            assert enumerate_bracket(any_pair, m, x, d).undecided_mass <= m.mu ** (d - 1)
        if prev is not None:
            assert prev.lower <= d2.lower and prev.upper <= d2.upper
        prev = d2


def test_bracket_value_at_plateau(any_pair):
    # F_p = p on [a, b]; a point of [a, b] escapes after one step
    m = BernoulliParam(Fraction(1, 4))
    b = enumerate_bracket(any_pair, m, any_pair.a, 5)
    assert b.lower <= m.p <= b.upper


def test_monte_carlo_trivial_starts(any_pair):
    for seed in (0, 1, 42):
        below = monte_carlo(any_pair, HALF, -1, 1000, 20, seed)
        assert (below.estimate, below.undecided_fraction) == (0.0, 0.0)
        assert monte_carlo(any_pair, HALF, 2, 1000, 20, seed).estimate == 1.0


def test_monte_carlo_plateau_value(cantor):
    est = monte_carlo(cantor, HALF, 0.5, 100_000, 60, 42)
    assert abs(est.estimate - 0.5) <= 0.0047
    assert est.std_error == pytest.approx((est.estimate * (1 - est.estimate) / 1e5) ** 0.5)
    assert est.bias_bound == 0.5**59


def test_monte_carlo_is_deterministic_across_threads(minkowski, monkeypatch):
    m = BernoulliParam(Fraction(1, 4))
    serial = monte_carlo(minkowski, m, 0.3, 20_000, 40, seed=7, threads=1)
    parallel = monte_carlo(minkowski, m, 0.3, 20_000, 40, seed=7, threads=4)
    assert serial == parallel
    monkeypatch.setenv("SINGULAR_ITER_THREADS", "3")
    assert monte_carlo(minkowski, m, 0.3, 20_000, 40, seed=7) == serial
    assert monte_carlo(minkowski, m, 0.3, 20_000, 40, seed=8) != serial


def test_monte_carlo_sample_streams_are_prefix_stable(cantor):
    # sample i depends only on (seed, i): one extra sample moves exactly one tally by one
    for n in (100, estimate.MC_BLOCK, estimate.MC_BLOCK + 7):
        a = monte_carlo(cantor, HALF, 0.3, n, 30, 3)
        b = monte_carlo(cantor, HALF, 0.3, n + 1, 30, 3)
        deltas = (b.n_plus - a.n_plus, b.n_minus - a.n_minus, b.n_undecided - a.n_undecided)
        assert sorted(deltas) == [0, 0, 1]


def test_monte_carlo_tallies_partition(any_pair):
    m = BernoulliParam(Fraction(3, 4))
    est = monte_carlo(any_pair, m, 0.37, 5000, 5, 1)
    assert est.n_plus + est.n_minus + est.n_undecided == 5000
    assert est.estimate + est.minus_fraction + est.undecided_fraction == pytest.approx(1.0, abs=1e-15)
    assert est.bias_bound == pytest.approx(0.75**4)


def test_undecided_fraction_soft_bound(cantor):
    m = BernoulliParam(Fraction(1, 2))
    est = monte_carlo(cantor, m, Fraction(1, 4), 50_000, 8, 11)
    assert est.undecided_fraction <= est.bias_bound + 5 * (est.bias_bound / est.n_samples) ** 0.5


@pytest.mark.parametrize("name", ["cantor", "affine_2/5_4/5", "lebesgue"])
def test_monte_carlo_within_bracket(name):
    pair = builtin_pairs()[name]
    m = BernoulliParam(Fraction(1, 2) if name == "cantor" else Fraction(1, 4))
    for x in GRID21:
        b = enumerate_bracket(pair, m, x, 40)
        est = monte_carlo(pair, m, x, 100_000, 60, 42)
        assert isinstance(b, Bracket)
        assert b.contains(est.estimate, 4 * est.std_error)
