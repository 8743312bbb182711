"""Wall-crossing, moment polytopes and integrable systems for weighted
polygon spaces and SU(2) holonomy spaces on the punctured sphere."""

from .weights import WeightVector, parse_rational_list
from .trees import Diagonal, TrivalentTree, caterpillar, enumerate_trees, parse_tree

__all__ = [
    "WeightVector",
    "parse_rational_list",
    "Diagonal",
    "TrivalentTree",
    "caterpillar",
    "enumerate_trees",
    "parse_tree",
]

__version__ = "0.1.0"
