"""cycform: graph weights on the disk and the Hochschild/cyclic operator
calculus, with numerically certified identities."""

from .chains import CyclicChain, HochschildChain, boundary_b, connes_B
from .cochains import PolyDiffOperator, cochain_action, coboundary_dH, gerstenhaber
from .forms import DiffForm, contract, de_rham, evaluate, lie_derivative
from .graphs import ShoikhetGraph, enumerate_graphs
from .polynomials import Polynomial
from .polyvectors import PolyVector, schouten_bracket

__version__ = "0.1.0"

__all__ = [
    "CyclicChain",
    "HochschildChain",
    "boundary_b",
    "connes_B",
    "PolyDiffOperator",
    "cochain_action",
    "coboundary_dH",
    "gerstenhaber",
    "DiffForm",
    "contract",
    "de_rham",
    "evaluate",
    "lie_derivative",
    "ShoikhetGraph",
    "enumerate_graphs",
    "Polynomial",
    "PolyVector",
    "schouten_bracket",
]
