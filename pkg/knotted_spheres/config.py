import os
import logging

from dotenv import load_dotenv
from pydantic import BaseModel, Field

_logger = logging.getLogger(__name__)

load_dotenv()


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        _logger.warning(f"Ignoring non-numeric {name}={raw!r}, using {default}")
        return default


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw, 0)
    except ValueError:
        _logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


ABS_TOL = _env_float("KNOTTED_SPHERES_ABS_TOL", 1e-8)  # residuals from analytic jets
FD_TOL = _env_float("KNOTTED_SPHERES_FD_TOL", 1e-5)  # fd oracle, orders <= 2
FD_TOL_ORDER3 = _env_float("KNOTTED_SPHERES_FD_TOL_ORDER3", 1e-3)
FD_STEP = _env_float("KNOTTED_SPHERES_FD_STEP", 1e-4)
FD_STEP_ORDER3 = _env_float("KNOTTED_SPHERES_FD_STEP_ORDER3", 1e-3)  # stencil step for third differences
DIV_EPS = _env_float("KNOTTED_SPHERES_DIV_EPS", 1e-10)  # Laplace-transform denominators
UNIT_SPEED_TOL = _env_float("KNOTTED_SPHERES_UNIT_SPEED_TOL", 1e-8)
VALIDATION_SAMPLES = _env_int("KNOTTED_SPHERES_VALIDATION_SAMPLES", 257)
QUADRATURE_NODES = _env_int("KNOTTED_SPHERES_QUADRATURE_NODES", 128)
WORKERS = _env_int("KNOTTED_SPHERES_WORKERS", 1)
SEED = _env_int("KNOTTED_SPHERES_SEED", 0x4B4E4F54)
LOG_LEVEL = os.getenv("KNOTTED_SPHERES_LOG_LEVEL", "WARNING")

DEGENERATE_METRIC_RATIO = 1e-14
QUADRATURE_TOL = 1e-13


class Settings(BaseModel):
    """Run-wide numeric settings, overridable per CLI invocation."""
    abs_tol: float = Field(ABS_TOL, gt=0)
    fd_tol: float = Field(FD_TOL, gt=0)
    fd_tol_order3: float = Field(FD_TOL_ORDER3, gt=0)
    fd_step: float = Field(FD_STEP, gt=0)
    fd_step_order3: float = Field(FD_STEP_ORDER3, gt=0)
    div_eps: float = Field(DIV_EPS, gt=0)
    unit_speed_tol: float = Field(UNIT_SPEED_TOL, gt=0)
    workers: int = Field(WORKERS, ge=1)
    seed: int = SEED
    log_level: str = LOG_LEVEL

    @classmethod
    def from_env(cls, **overrides) -> "Settings":
        """Build settings from the environment defaults, dropping unset overrides."""
        return cls(**{k: v for k, v in overrides.items() if v is not None})
