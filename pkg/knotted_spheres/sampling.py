from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, TypeVar

from .exceptions import KnottedSpheresError
from .geom import (
    Christoffel,
    CurvatureSample,
    FirstFormJet,
    SecondForm,
    christoffel,
    curvature,
    first_form,
    second_form,
)
from .models import GridConfig
from .nets import LaplaceDirection, NetSample, laplace_point, net_sample
from .patch import AmbientVec, PatchJet, SurfaceSpec, surface_jet

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True, eq=False)
class PointSample:
    """Everything computed at one parameter point, or why it was skipped."""
    u: float
    v: float
    jet: Optional[PatchJet] = None
    ff: Optional[FirstFormJet] = None
    ch: Optional[Christoffel] = None
    sff: Optional[SecondForm] = None
    curvature: Optional[CurvatureSample] = None
    net: Optional[NetSample] = None
    skip_reason: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.skip_reason is None


def evaluate_point(spec: SurfaceSpec, u: float, v: float) -> PointSample:
    """Run the whole pipeline at (u, v); library errors turn the point into a skip."""
    try:
        jet = surface_jet(spec, u, v)
        ff = first_form(jet)
        ch = christoffel(ff)
        sff = second_form(jet, ch)
        return PointSample(
            u=u, v=v, jet=jet, ff=ff, ch=ch, sff=sff,
            curvature=curvature(ff, sff),
            net=net_sample(jet, ff, ch),
        )
    except KnottedSpheresError as exc:
        reason = f"{type(exc).__name__}: {exc.message}"
        logger.debug(f"Skipped ({u}, {v}) on {spec.name!r}: {reason}")
        return PointSample(u=u, v=v, skip_reason=reason)


def grid_points(grid: GridConfig) -> List[Tuple[float, float]]:
    """Row-major parameter points: u outer, v inner."""
    vs = grid.v_values()
    return [(u, v) for u in grid.u_values() for v in vs]


def ordered_map(func: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """map() on a thread pool when workers > 1; results keep the input order."""
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def sample_grid(spec: SurfaceSpec, grid: GridConfig, workers: int = 1) -> List[PointSample]:
    """
    Evaluate every grid point of a surface.

    Args:
        spec: Surface specification
        grid: Parameter grid
        workers: Thread count; the output order never depends on it

    Returns:
        Samples in row-major order
    """
    points = grid_points(grid)
    samples = ordered_map(lambda p: evaluate_point(spec, p[0], p[1]), points, workers)
    skipped = sum(1 for s in samples if not s.ok)
    if skipped:
        logger.warning(f"{skipped} of {len(samples)} points skipped on {spec.name!r}")
    return samples


@dataclass(frozen=True, eq=False)
class LaplaceSample:
    u: float
    v: float
    point: Optional[AmbientVec] = None
    skip_reason: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.skip_reason is None


def laplace_grid(
    spec: SurfaceSpec,
    grid: GridConfig,
    direction: LaplaceDirection | str = LaplaceDirection.MINUS,
    workers: int = 1,
) -> List[LaplaceSample]:
    """Laplace transform at every grid point, row-major; degenerate points carry their reason."""
    direction = LaplaceDirection(direction)

    def transform(point: Tuple[float, float]) -> LaplaceSample:
        u, v = point
        try:
            return LaplaceSample(u=u, v=v, point=laplace_point(spec, u, v, direction))
        except KnottedSpheresError as exc:
            return LaplaceSample(u=u, v=v, skip_reason=f"{type(exc).__name__}: {exc.message}")

    samples = ordered_map(transform, grid_points(grid), workers)
    skipped = sum(1 for s in samples if not s.ok)
    if skipped:
        logger.warning(f"Laplace transform {direction.value} undefined at {skipped} points on {spec.name!r}")
    return samples


def skip_reasons(samples: Iterable[PointSample]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for sample in samples:
        if sample.skip_reason is not None:
            key = sample.skip_reason.split(":", 1)[0]
            counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items()))


DEFAULT_RESOLUTION = 50


def fit_grid(
    spec: SurfaceSpec,
    grid: Optional[GridConfig] = None,
    *,
    margin: float = 0.0,
    resolution: int = DEFAULT_RESOLUTION,
) -> Optional[GridConfig]:
    """
    Grid for one surface.

    Without ``grid`` the whole domain is covered at ``resolution`` points per
    axis. An explicit grid keeps its counts and is clipped to the domain.
    ``margin`` pulls the u-range (and a bounded v-range) inwards. Returns None
    when nothing of the grid is left.
    """
    u_lo, u_hi = spec.u_domain
    v_lo, v_hi = spec.v_domain
    nu = nv = resolution
    if grid is not None:
        u_lo, u_hi = max(u_lo, grid.u_min), min(u_hi, grid.u_max)
        nu, nv = grid.nu, grid.nv
        if spec.periodic_v:
            v_lo, v_hi = grid.v_min, grid.v_max
        else:
            v_lo, v_hi = max(v_lo, grid.v_min), min(v_hi, grid.v_max)
    u_lo, u_hi = u_lo + margin, u_hi - margin
    if not spec.periodic_v:
        v_lo, v_hi = v_lo + margin, v_hi - margin
    if not (u_lo < u_hi and v_lo < v_hi):
        return None
    return GridConfig(u_min=u_lo, u_max=u_hi, nu=nu, v_min=v_lo, v_max=v_hi, nv=nv)
