"""Divergence probabilities of random iteration of two monotone maps.

F_p(x) is the probability that x_{n+1} = f_{w_{n+1}}(x_n) runs off to +infinity
when the symbols w_n are drawn i.i.d. with P(0) = p. Depending on the pair
(f0, f1) it is a Cantor-type function, Lebesgue's singular function or
Minkowski's question mark function.
"""

from .estimate import Bracket, McEstimate, enumerate_bracket, monte_carlo
from .fixedpoint import ApproxValue, eval_approx, grid_table
from .intervals import PlateauNode, plateau_tree, total_plateau_length
from .measure import BernoulliParam, cylinder_probability, flip_word
from .pairs import FunctionPair, make_affine_pair, make_minkowski_pair, make_piecewise_pair, validate_assumptions

__all__ = [
    "ApproxValue", "BernoulliParam", "Bracket", "FunctionPair", "McEstimate", "PlateauNode",
    "cylinder_probability", "enumerate_bracket", "eval_approx", "flip_word", "grid_table",
    "make_affine_pair", "make_minkowski_pair", "make_piecewise_pair", "monte_carlo",
    "plateau_tree", "total_plateau_length", "validate_assumptions",
]
