"""
Conjugate nets and Laplace transforms.

The parameter net is conjugate when Xuv lies in span{Xu, Xv}; its defect is
the norm of the normal part of Xuv. Normal frames are never built.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum
from typing import Tuple

import numpy as np

from . import config
from .exceptions import DegenerateMetric, DegenerateNet, DomainError
from .geom import Christoffel, FirstFormJet, christoffel, first_form
from .models import ConjugacyReport, GridConfig
from .patch import AmbientVec, PatchJet, SurfaceSpec, ambient, surface_jet

logger = logging.getLogger(__name__)


class LaplaceDirection(StrEnum):
    MINUS = "minus1"
    PLUS = "plus1"


@dataclass(frozen=True, slots=True)
class NetSample:
    gamma112: float
    gamma212: float
    defect: float
    h_inv: float
    k_inv: float
    u: float
    v: float


def gamma_derivatives(ff: FirstFormJet) -> Tuple[float, float]:
    """Returns (d/du Gamma^1_12, d/dv Gamma^2_12) from second metric derivatives."""
    W2 = ff.W2
    n1 = ff.G * ff.E_v - ff.F * ff.G_u
    n1_u = ff.G_u * ff.E_v + ff.G * ff.E_uv - ff.F_u * ff.G_u - ff.F * ff.G_uu
    n2 = ff.E * ff.G_u - ff.F * ff.E_v
    n2_v = ff.E_v * ff.G_u + ff.E * ff.G_uv - ff.F_v * ff.E_v - ff.F * ff.E_vv
    d1 = (n1_u * W2 - n1 * ff.W2_u) / (2.0 * W2 * W2)
    d2 = (n2_v * W2 - n2 * ff.W2_v) / (2.0 * W2 * W2)
    return d1, d2


def net_sample(jet: PatchJet, ff: FirstFormJet, ch: Christoffel) -> NetSample:
    """
    Conjugacy defect and Laplace invariants at one point.

    h = d/du Gamma^1_12 - Gamma^1_12 Gamma^2_12
    k = d/dv Gamma^2_12 - Gamma^1_12 Gamma^2_12
    """
    normal_part = jet.Xuv - ch.g112 * jet.Xu - ch.g212 * jet.Xv
    d1, d2 = gamma_derivatives(ff)
    product = ch.g112 * ch.g212
    return NetSample(
        gamma112=ch.g112,
        gamma212=ch.g212,
        defect=float(np.linalg.norm(normal_part)),
        h_inv=d1 - product,
        k_inv=d2 - product,
        u=jet.u,
        v=jet.v,
    )


def is_conjugate(spec: SurfaceSpec, grid: GridConfig, tol: float) -> ConjugacyReport:
    """
    Test the parameter net for conjugacy on every grid point.

    Singular points are skipped and counted. The report always carries the
    largest defect seen and where it occurred.
    """
    worst, location, samples, skipped = 0.0, None, 0, 0
    for u in grid.u_values():
        for v in grid.v_values():
            try:
                jet = surface_jet(spec, u, v)
                ff = first_form(jet)
                sample = net_sample(jet, ff, christoffel(ff))
            except (DegenerateMetric, DomainError) as exc:
                logger.warning(f"Skipping ({u}, {v}) on {spec.name!r}: {exc.message}")
                skipped += 1
                continue
            samples += 1
            if location is None or sample.defect > worst:
                worst, location = sample.defect, (u, v)
    return ConjugacyReport(
        conjugate=samples > 0 and worst < tol,
        max_defect=worst,
        location=location,
        samples=samples,
        skipped=skipped,
        tolerance=tol,
    )


def _checked(symbol: str, value: float, eps: float, jet: PatchJet) -> float:
    if not abs(value) > eps:
        raise DegenerateNet(
            f"Laplace transform undefined at ({jet.u}, {jet.v}): {symbol} vanishes", symbol=symbol, value=value
        )
    return value


def laplace_minus(jet: PatchJet, ch: Christoffel, eps: float = config.DIV_EPS) -> AmbientVec:
    """X_{-1} = X - Xu / Gamma^2_12."""
    g212 = _checked("gamma212", ch.g212, eps, jet)
    return ambient(*(jet.X - jet.Xu / g212))


def laplace_plus(jet: PatchJet, ch: Christoffel, eps: float = config.DIV_EPS) -> AmbientVec:
    """X_1 = X - Xv / Gamma^1_12."""
    g112 = _checked("gamma112", ch.g112, eps, jet)
    return ambient(*(jet.X - jet.Xv / g112))


def laplace_point(
    spec: SurfaceSpec,
    u: float,
    v: float,
    direction: LaplaceDirection | str = LaplaceDirection.MINUS,
    eps: float = config.DIV_EPS,
) -> AmbientVec:
    jet = surface_jet(spec, u, v)
    ch = christoffel(first_form(jet))
    if LaplaceDirection(direction) is LaplaceDirection.PLUS:
        return laplace_plus(jet, ch, eps)
    return laplace_minus(jet, ch, eps)


def prop6_defect(spec: SurfaceSpec, u: float, v: float, du: float = 1e-3) -> float:
    """
    Sine of the angle between d/du X_1 and Xv at (u, v).

    d/du X_1 is a central difference over du. X_1 - X is parallel to Xv by
    construction and is not measured. When d/du X_1 vanishes the two are
    trivially parallel and 0 is returned.

    Raises:
        DegenerateNet: if Gamma^1_12 vanishes at u or u +/- du
    """
    ahead = laplace_point(spec, u + du, v, LaplaceDirection.PLUS)
    behind = laplace_point(spec, u - du, v, LaplaceDirection.PLUS)
    laplace_point(spec, u, v, LaplaceDirection.PLUS)  # centre must be regular too
    slope = (ahead - behind) / (2.0 * du)
    Xv = surface_jet(spec, u, v).Xv
    size = float(np.linalg.norm(slope))
    if size <= 1e-12 * (1.0 + float(np.linalg.norm(ahead))):
        return 0.0
    axis = Xv / np.linalg.norm(Xv)
    across = slope - float(np.dot(slope, axis)) * axis
    return min(1.0, float(np.linalg.norm(across)) / size)


def hidden_precondition(ff: FirstFormJet) -> float:
    """|F * G_u|; Gamma^1_12 = -F G_u / 2W^2 on unit-speed rotational metrics."""
    return abs(ff.F * ff.G_u)
