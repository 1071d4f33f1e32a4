from ._algebra import CommutatorDefectCheck, DefectNormCheck, MalcevIdentityCheck
from ._base import BaseCheck
from ._bch import BchCheck
from ._dynamics import ConjugationIdentityCheck, PeriodicityCheck
from ._harmonics import CasimirCheck, CoboundaryCheck, LaplacianCheck, StructuralDefectCheck
from ._spectral import AdjointSpectrumCheck, AlmostPeriodicityCheck, ResolventCheck

__all__ = [
    "BaseCheck",
    "MalcevIdentityCheck",
    "CommutatorDefectCheck",
    "DefectNormCheck",
    "AdjointSpectrumCheck",
    "AlmostPeriodicityCheck",
    "PeriodicityCheck",
    "ConjugationIdentityCheck",
    "CasimirCheck",
    "CoboundaryCheck",
    "BchCheck",
    "LaplacianCheck",
    "StructuralDefectCheck",
    "ResolventCheck",
]
