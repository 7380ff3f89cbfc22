"""Drinfeld modules over A = F_q[T] on bases l[Y]/(Y^k).

Exact arithmetic for torsion, division polynomials, level structures in two
formulations (per-prime and single divisor identity), deformations over
l[eps] and quotient isogenies.
"""

from ._kernels import BACKEND
from .algebra import AlgebraElement, ArtinLocalAlgebra, algebra_new
from .apoly import APoly, factor, irreducibles
from .drinfeld import DrinfeldModule, drinfeld_new, e_of, standardize
from .level import LevelStructureCandidate, check_def_A, check_def_B, enumerate_level_structures, equivalence_report
from .torsion import division_poly, module_structure, torsion_points
from .twisted import TwistedPoly

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "APoly", "AlgebraElement", "ArtinLocalAlgebra", "DrinfeldModule", "LevelStructureCandidate",
    "TwistedPoly", "algebra_new", "check_def_A", "check_def_B", "division_poly", "drinfeld_new", "e_of",
    "enumerate_level_structures", "equivalence_report", "factor", "irreducibles", "module_structure",
    "standardize", "torsion_points",
]
