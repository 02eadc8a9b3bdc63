"""Sharp interpolation inequalities on the integer lattice."""

from .constants import ADMISSIBILITY_RULE, InadmissibleError, check_admissible, sharp_constant
from .green1d import SharpConstantResult
from .lattice import DiffOperatorSpec, LatticeSeq

__all__ = [
    "ADMISSIBILITY_RULE",
    "InadmissibleError",
    "check_admissible",
    "sharp_constant",
    "SharpConstantResult",
    "DiffOperatorSpec",
    "LatticeSeq",
]
