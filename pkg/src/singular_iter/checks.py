"""Invariant suites run by ``singular-iter verify``.

Each suite returns a list of ``Check`` results. Scales are chosen so that the
full run finishes in well under a minute.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import markov, oracles
from .estimate import enumerate_bracket, monte_carlo
from .fixedpoint import contraction_factor_check, eval_approx
from .intervals import plateau_levels, plateau_consistency_check, plateau_tree, total_plateau_length
from .measure import (BernoulliParam, all_words, concat_probability_check, cylinder_probability,
                      flip_word)
from .pairs import FunctionPair, apply, apply_inverse, make_affine_pair, make_minkowski_pair, validate_assumptions
from .trajectory import orbit, run_coupled_symmetry_check

P_VALUES = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def builtin_pairs() -> dict:
    return {
        "cantor": make_affine_pair(Fraction(1, 3), Fraction(2, 3)),
        "affine_2/5_4/5": make_affine_pair(Fraction(2, 5), Fraction(4, 5)),
        "lebesgue": make_affine_pair(Fraction(1, 2), Fraction(1, 2)),
        "minkowski": make_minkowski_pair(),
    }


def unit_grid(count: int) -> list:
    return [Fraction(i, count - 1) for i in range(count)]


def suite_measure(max_len: int = 10) -> list:
    out = []
    params = [BernoulliParam(p) for p in (Fraction(1, 3), Fraction(2, 7), Fraction(1, 2))]
    words = [w for n in range(max_len + 1) for w in all_words(n)]
    flip_ok = all(cylinder_probability(flip_word(w), m) == cylinder_probability(w, m.swapped())
                  for m in params for w in words)
    out.append(Check("measure", "flip duality P_p(flip w) = P_q(w)", flip_ok))
    sums_ok = all(sum(cylinder_probability(w, m) for w in all_words(n)) == 1
                  for m in params for n in range(max_len + 1))
    out.append(Check("measure", "level sums equal 1", sums_ok))
    short = [w for n in range(max_len // 2 + 1) for w in all_words(n)]
    split_ok = all(concat_probability_check(u, v, m) for m in params for u in short for v in short)
    out.append(Check("measure", "prefix splitting", split_ok))
    shift_ok = all(cylinder_probability((0,) + w, m) == m.p * cylinder_probability(w, m)
                   and cylinder_probability((1,) + w, m) == m.q * cylinder_probability(w, m)
                   for m in params for w in words)
    out.append(Check("measure", "first-symbol factorisation", shift_ok))
    return out


def suite_pairs(extra: dict | None = None) -> list:
    out = []
    pairs = dict(builtin_pairs())
    pairs.update(extra or {})
    ys = np.linspace(0.0, 1.0, 1001)
    for name, pair in pairs.items():
        report = validate_assumptions(pair, 1001)
        detail = "; ".join(f"({v.tag}) x={v.x:.6g}: {v.detail}" for v in report.violations[:5])
        out.append(Check("pairs", f"{name}: assumptions A1-A4", report.passed, detail))
        if pair.exact and name in builtin_pairs():
            err = max(abs(float(apply(pair, s, apply_inverse(pair, s, float(y)))) - y) for s in (0, 1) for y in ys)
            out.append(Check("pairs", f"{name}: inverse round trip", err <= 1e-12, f"max err {err:.3g}"))
    return out


def suite_trajectory(word_len: int = 20, n_words: int = 200, seed: int = 7) -> list:
    out = []
    rnd = random.Random(seed)
    words = [tuple(rnd.randint(0, 1) for _ in range(rnd.randint(1, word_len))) for _ in range(n_words)]
    starts = [Fraction(i, 10) for i in range(-5, 16)]
    coupling = escape = rate = True
    for pair in builtin_pairs().values():
        s = pair.s
        for w in words[:40]:
            paths = [orbit(pair, x0, w) for x0 in starts]
            for lo_path, hi_path in zip(paths, paths[1:]):
                coupling &= all(u <= v for u, v in zip(lo_path, hi_path))
            for path in paths:
                k = next((i for i, v in enumerate(path) if v < 0 or v > 1), None)
                if k is None:
                    continue
                xk = path[k]
                tail = path[k:]
                if xk < 0:
                    escape &= all(v < 0 for v in tail)
                    rate &= all(v <= s ** n * xk for n, v in enumerate(tail))
                else:
                    escape &= all(v > 1 for v in tail)
                    rate &= all(v >= 1 + s ** n * (xk - 1) for n, v in enumerate(tail))
    out.append(Check("trajectory", "monotone coupling", coupling))
    out.append(Check("trajectory", "escape permanence", escape))
    out.append(Check("trajectory", "geometric escape rate", rate))
    sym_ok = all(run_coupled_symmetry_check(pair, x0, w)
                 for pair in builtin_pairs().values() if pair.symmetric
                 for x0 in (0.1, 0.3, 0.5, 0.77) for w in words[:50])
    out.append(Check("trajectory", "flipped-word reflection", sym_ok))
    return out


def suite_estimate(depth: int = 20, n_samples: int = 20_000) -> list:
    out = []
    grid = unit_grid(21)
    nested = mass = escape = monotone = True
    for pair in builtin_pairs().values():
        for p in P_VALUES:
            m = BernoulliParam(p)
            prev = None
            for x in grid:
                shallow = enumerate_bracket(pair, m, x, depth // 2)
                deep = enumerate_bracket(pair, m, x, depth)
                nested &= shallow.lower <= deep.lower and shallow.upper >= deep.upper
                mass &= deep.lower + deep.negative_mass + deep.undecided_mass == 1
                escape &= deep.undecided_mass <= m.mu ** (depth - 1)
                if prev is not None:
                    monotone &= prev.lower <= deep.lower and prev.upper <= deep.upper
                prev = deep
    out.append(Check("estimate", "nested brackets", nested))
    out.append(Check("estimate", "mass conservation", mass))
    out.append(Check("estimate", "undecided mass <= mu^(depth-1)", escape))
    out.append(Check("estimate", "brackets monotone in x", monotone))
    pair = builtin_pairs()["cantor"]
    m = BernoulliParam(Fraction(1, 2))
    worst = 0.0
    ok = True
    for x in grid:
        br = enumerate_bracket(pair, m, x, 40)
        mc = monte_carlo(pair, m, x, n_samples, 60, 42)
        ok &= mc.n_plus + mc.n_minus + mc.n_undecided == n_samples
        ok &= br.contains(mc.estimate, 4 * mc.std_error)
        worst = max(worst, abs(mc.estimate - float(br.lower)))
    out.append(Check("estimate", "Monte Carlo inside bracket +- 4 sigma (cantor)", ok, f"max |mc - lower| {worst:.3g}"))
    return out


def suite_fixedpoint(k: int = 40) -> list:
    out = []
    grid = unit_grid(101)
    residual = plateau = cross = True
    for pair in builtin_pairs().values():
        for p in P_VALUES:
            m = BernoulliParam(p)
            tol = 2 * float(m.mu ** k)
            for x in grid:
                v = eval_approx(pair, m, x, k).value
                fe = float(m.p) * eval_approx(pair, m, pair.f0(x), k).value + float(m.q) * eval_approx(pair, m, pair.f1(x), k).value
                residual &= abs(v - fe) <= tol
                plateau &= abs(eval_approx(pair, m, pair.f0_inv_on_unit(x), k).value - float(m.p) * v) <= tol
                plateau &= abs(eval_approx(pair, m, pair.f1_inv_on_unit(x), k).value - float(m.p) - float(m.q) * v) <= tol
            for x in unit_grid(11):
                br = enumerate_bracket(pair, m, x, k)
                cross &= br.contains(eval_approx(pair, m, x, k).value, float(m.mu ** k))
    out.append(Check("fixedpoint", "functional-equation residual <= 2 mu^k", residual))
    out.append(Check("fixedpoint", "plateau identities via inverse branches", plateau))
    out.append(Check("fixedpoint", "agreement with enumeration bracket", cross))
    pair = builtin_pairs()["cantor"]
    m = BernoulliParam(Fraction(1, 2))
    xs = np.linspace(0.0, 1.0, 10_001)
    ident = (xs, np.clip(xs, 0.0, 1.0))
    step = (xs, (xs >= 1.0).astype(float))
    out.append(Check("fixedpoint", "contraction by max(p, q)", contraction_factor_check(pair, m, ident, step)))
    return out


def suite_intervals(max_level: int = 10) -> list:
    out = []
    pair = builtin_pairs()["cantor"]
    m = BernoulliParam(Fraction(1, 2))
    levels = list(plateau_levels(pair, m, max_level))
    counts = all(len(level) == 2 ** n for n, level in enumerate(levels))
    dyadic = all(sorted(nd.value for nd in level) == [Fraction(2 * j + 1, 2 ** (n + 1)) for j in range(2 ** n)]
                 for n, level in enumerate(levels))
    out.append(Check("intervals", "2^n plateaus per level", counts))
    out.append(Check("intervals", "dyadic plateau values", dyadic))
    everything = sorted((nd for level in levels for nd in level), key=lambda nd: nd.left)
    disjoint = all(u.right < v.left for u, v in zip(everything, everything[1:]))
    out.append(Check("intervals", "plateaus pairwise disjoint", disjoint))
    aligned = all([nd.value for nd in level] == sorted(nd.value for nd in level) for level in levels)
    out.append(Check("intervals", "left-to-right order matches value order", aligned))
    total = total_plateau_length(pair, max_level)
    target = 1 - (2 / 3) ** (max_level + 1)
    out.append(Check("intervals", "total plateau length", abs(total - target) <= 1e-10, f"{total!r} vs {target!r}"))
    nodes = plateau_tree(pair, m, 6)
    other = make_affine_pair(Fraction(2, 5), Fraction(4, 5))
    ok = plateau_consistency_check(pair, m, nodes, 40) and plateau_consistency_check(
        other, BernoulliParam(Fraction(1, 4)), plateau_tree(other, BernoulliParam(Fraction(1, 4)), 6), 60)
    out.append(Check("intervals", "plateau values agree with fixed-point evaluation", ok))
    return out


def suite_oracles(digits: int = 60) -> list:
    out = []
    tol = 2.0 ** -digits
    grid = [Fraction(i, 243) for i in range(244)]
    vals = [oracles.cantor_classic(x, digits) for x in grid]
    chalice = all(u <= v for u, v in zip(vals, vals[1:]))
    chalice &= all(abs(oracles.cantor_classic(x / 3, digits) - v / 2) <= tol for x, v in zip(grid, vals))
    chalice &= all(abs(oracles.cantor_classic(1 - x, digits) - (1 - v)) <= tol for x, v in zip(grid, vals))
    out.append(Check("oracles", "Cantor oracle: monotone, scaling, reflection", chalice))
    dual = True
    for j in range(1, 6):
        for n in range(1, 3 ** j):
            if n % 3 == 0:
                continue
            head = oracles.expand_digits(Fraction(n, 3 ** j), 3, j)
            alt = head[:-1] + [head[-1] - 1] + [2] * (digits - j)
            dual &= abs(float(oracles.cantor_from_digits(head) - oracles.cantor_from_digits(alt))) <= tol
    out.append(Check("oracles", "Cantor oracle independent of ternary expansion", dual))
    fe = True
    for p in P_VALUES:
        m = BernoulliParam(p)
        bound = 2 * m.mu ** digits

        def L(y):
            return Fraction(0) if y <= 0 else Fraction(1) if y >= 1 else oracles.lebesgue_exact(m, y, digits)

        fe &= all(abs(L(x) - m.p * L(2 * x) - m.q * L(2 * x - 1)) <= bound for x in unit_grid(101))
    out.append(Check("oracles", "Lebesgue oracle functional equation", fe))
    rationals = {Fraction(n, d) for d in range(1, 101) for n in range(d + 1)}
    mink = all(oracles.minkowski_exact(x / (x + 1)) == oracles.minkowski_exact(x) / 2
               and oracles.minkowski_exact(1 - x) == 1 - oracles.minkowski_exact(x) for x in rationals)
    out.append(Check("oracles", "question mark functional equations (exact)", mink))
    return out


def suite_markov(depth: int = 12) -> list:
    out = []
    grid = unit_grid(21)
    reduction = True
    for pair in builtin_pairs().values():
        for p in P_VALUES:
            q = 1 - p
            mm = markov.make_markov_measure([[p, q], [p, q]])
            m = BernoulliParam(p)
            reduction &= all(markov.markov_enumerate_bracket(pair, mm, x, depth) == enumerate_bracket(pair, m, x, depth)
                             for x in grid)
    out.append(Check("markov", "equal-row chain reproduces Bernoulli brackets", reduction))
    chains = [markov.make_markov_measure([[0, 1], [Fraction(1, 2), Fraction(1, 2)]]),
              markov.make_markov_measure([[Fraction(1, 3), Fraction(2, 3)], [Fraction(3, 4), Fraction(1, 4)]])]
    pair = builtin_pairs()["cantor"]
    mass = True
    for mm in chains:
        for x in grid:
            b = markov.markov_enumerate_bracket(pair, mm, x, depth)
            mass &= b.lower + b.negative_mass + b.undecided_mass == 1
    out.append(Check("markov", "mass conservation", mass))
    shift = True
    for mm in chains:
        for n in range(1, 7):
            for w in all_words(n):
                lhs = sum(mm.stationary[a0] * mm.transition[a0][w[0]] for a0 in (0, 1)) * \
                    (markov.markov_cylinder_probability(mm, w) / mm.stationary[w[0]])
                shift &= lhs == markov.markov_cylinder_probability(mm, w)
    out.append(Check("markov", "shift invariance of cylinder masses", shift))
    closed = markov.stationary_vector([[0, 1], [Fraction(1, 2), Fraction(1, 2)]]) == (Fraction(1, 3), Fraction(2, 3))
    out.append(Check("markov", "stationary vector closed form", closed))
    return out


SUITES = {
    "measure": suite_measure,
    "pairs": suite_pairs,
    "trajectory": suite_trajectory,
    "estimate": suite_estimate,
    "fixedpoint": suite_fixedpoint,
    "intervals": suite_intervals,
    "oracles": suite_oracles,
    "markov": suite_markov,
}


def run_suites(names=None, extra_pairs: dict | None = None) -> list:
    names = list(SUITES) if not names else list(names)
    results = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        if name == "pairs":
            results.extend(suite_pairs(extra_pairs))
        else:
            results.extend(SUITES[name]())
    return results
