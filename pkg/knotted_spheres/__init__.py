from .claims import Verifier, run_claim
from .knots import make_case1, make_case2, make_general, surface_from_document
from .models import ClaimId, ClaimStatus, GridConfig, Ledger, SurfaceDocument, SurfaceKind
from .patch import SurfaceSpec, fd_jet, surface_jet, surface_point

__version__ = "0.1.0"

__all__ = [
    "ClaimId",
    "ClaimStatus",
    "GridConfig",
    "Ledger",
    "SurfaceDocument",
    "SurfaceKind",
    "SurfaceSpec",
    "Verifier",
    "fd_jet",
    "make_case1",
    "make_case2",
    "make_general",
    "run_claim",
    "surface_from_document",
    "surface_jet",
    "surface_point",
]
