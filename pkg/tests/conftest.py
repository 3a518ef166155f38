from fractions import Fraction

import pytest

from singular_iter.pairs import make_affine_pair, make_minkowski_pair

ACCEPTANCE_LINES = []


def builtin_pairs():
    return {
        "cantor": make_affine_pair(Fraction(1, 3), Fraction(2, 3)),
        "affine_2/5_4/5": make_affine_pair(Fraction(2, 5), Fraction(4, 5)),
        "lebesgue": make_affine_pair(Fraction(1, 2), Fraction(1, 2)),
        "minkowski": make_minkowski_pair(),
    }


@pytest.fixture
def cantor():
    return make_affine_pair(Fraction(1, 3), Fraction(2, 3))


@pytest.fixture
def minkowski():
    return make_minkowski_pair()


@pytest.fixture(params=sorted(builtin_pairs()))
def any_pair(request):
    return builtin_pairs()[request.param]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
