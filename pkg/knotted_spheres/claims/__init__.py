from .base import Claim
from .case1 import Case1MeanCurvature, Case1Minimality, Case1NotConjugate, FlatCase1
from .case2 import Case2Curvature, FlatCase2, LaplaceInRotationPlane, PseudoSpherical, Spherical
from .consistency import FiniteDifferenceAgreement, GaussRoutesAgree
from .harness import Verifier, run_claim
from .nets import ConjugateImpliesFlat, LaplaceParallelism

__all__ = [
    "Claim",
    "Case1MeanCurvature",
    "Case1Minimality",
    "Case1NotConjugate",
    "Case2Curvature",
    "ConjugateImpliesFlat",
    "FiniteDifferenceAgreement",
    "FlatCase1",
    "FlatCase2",
    "GaussRoutesAgree",
    "LaplaceInRotationPlane",
    "LaplaceParallelism",
    "PseudoSpherical",
    "Spherical",
    "Verifier",
    "run_claim",
]
