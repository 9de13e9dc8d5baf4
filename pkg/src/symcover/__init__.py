"""Finite covers of k-subset actions of Sym(n) at desk scale.

Exact GF(2) linear algebra, subset-inclusion maps and their submodule
lattices, the explicit order-cocycle extension groups, and a linear
cohomology solver that decides which kernels admit full subgroups.
"""

from symcover.errors import MathExpectationError, OddCocycleValue, SizeBoundExceeded

__version__ = "0.1.0"

__all__ = [
    "MathExpectationError",
    "OddCocycleValue",
    "SizeBoundExceeded",
    "__version__",
]
