"""
Knotted-sphere constructors and profile-curve utilities.

Three families are supported: the general rotational patch of an arbitrary
profile curve, Case I with (x3, x4) = (cos phi, sin phi), and Case II with
x4 = lambda * x3. Constructors validate unit speed; they never reparametrize.
"""
from __future__ import annotations

import logging
from dataclasses import replace
from typing import Dict, Mapping, Optional, Tuple, Union

import numpy as np

from . import config
from .exceptions import KnottedSpheresError, PositivityError, RegularityError, UnitSpeedViolation
from .expr import ExprAst, Jet1D, eval_jet1d, parse, render
from .models import KnotArcReport, SurfaceDocument, SurfaceKind
from .patch import (
    TWO_PI,
    AngleComponent,
    Component,
    CurveSpec,
    Domain,
    ExprComponent,
    ScaledComponent,
    SurfaceSpec,
    complete_x1,
)

logger = logging.getLogger(__name__)

ComponentLike = Union[ExprAst, Component]
ARC_TOL = 1e-8


def _component(value: ComponentLike) -> Component:
    if hasattr(value, "jet"):
        return value
    return ExprComponent(value, render(value))


def _source(value: ComponentLike) -> Optional[str]:
    if hasattr(value, "jet"):
        return value.describe() if isinstance(value, ExprComponent) else None
    return render(value)


def _unit_speed_residual(curve: CurveSpec) -> Tuple[float, float]:
    worst, where = 0.0, curve.u_domain[0]
    for u in curve.sample_points():
        residual = abs(curve.speed_squared(float(u)) - 1.0)
        if residual > worst:
            worst, where = residual, float(u)
    return worst, where


def _require_unit_speed(curve: CurveSpec, name: str) -> None:
    worst, where = _unit_speed_residual(curve)
    if worst > config.UNIT_SPEED_TOL:
        raise UnitSpeedViolation(
            f"profile curve of {name!r} is not parametrized by arclength", max_residual=worst, u=where
        )


def _build(
    kind: SurfaceKind,
    components: Tuple[ComponentLike, ComponentLike, ComponentLike, ComponentLike],
    sources: Dict[str, Optional[str]],
    *,
    u_domain: Domain,
    params: Mapping[str, float] | None,
    name: str,
    v_domain: Domain,
    meta: Mapping[str, float | str] | None,
    phi: Optional[ExprAst] = None,
    lam: float = 0.0,
    x1_offset: float = 0.0,
) -> SurfaceSpec:
    curve = CurveSpec(tuple(_component(c) for c in components), dict(params or {}), u_domain)
    return SurfaceSpec(
        kind=kind,
        curve=curve,
        name=name,
        phi=phi,
        lam=float(lam),
        v_domain=v_domain,
        unit_speed_complete=sources.get("x1") is None,
        x1_offset=x1_offset,
        meta=dict(meta or {}),
        sources={k: v for k, v in sources.items() if v is not None},
    )


def make_general(
    curve: CurveSpec,
    *,
    name: str = "general",
    v_domain: Domain = (0.0, TWO_PI),
    meta: Mapping[str, float | str] | None = None,
    x1_offset: float = 0.0,
) -> SurfaceSpec:
    """Wrap a profile curve as a general rotational patch."""
    sources = {
        f"x{i + 1}": (c.describe() if isinstance(c, ExprComponent) else None)
        for i, c in enumerate(curve.components)
    }
    return SurfaceSpec(
        kind=SurfaceKind.GENERAL,
        curve=curve,
        name=name,
        v_domain=v_domain,
        unit_speed_complete=sources["x1"] is None,
        x1_offset=x1_offset,
        meta=dict(meta or {}),
        sources={k: v for k, v in sources.items() if v is not None},
    )


def make_case1(
    x1: ComponentLike,
    x2: ExprAst,
    phi: ExprAst,
    *,
    u_domain: Domain,
    params: Mapping[str, float] | None = None,
    name: str = "case1",
    v_domain: Domain = (0.0, TWO_PI),
    meta: Mapping[str, float | str] | None = None,
    x1_offset: float = 0.0,
) -> SurfaceSpec:
    """
    Case I surface: the profile (x1, x2, cos phi, sin phi).

    Args:
        x1: Expression or completed component for x1
        x2: Expression for x2
        phi: Angle function, |phi'| < 1 on the domain

    Raises:
        RegularityError: if |phi'| >= 1 at a sampled point (W^2 = 1 - phi'^2)
        UnitSpeedViolation: if x1'^2 + x2'^2 + phi'^2 differs from 1
    """
    spec = _build(
        SurfaceKind.CASE1,
        (x1, x2, AngleComponent(phi, "cos"), AngleComponent(phi, "sin")),
        {"x1": _source(x1), "x2": render(x2), "phi": render(phi)},
        u_domain=u_domain, params=params, name=name, v_domain=v_domain, meta=meta,
        phi=phi, x1_offset=x1_offset,
    )
    for u in spec.curve.sample_points():
        slope = eval_jet1d(phi, float(u), spec.params).d1
        if abs(slope) >= 1.0:
            raise RegularityError(f"|phi'| >= 1 makes {name!r} singular", u=float(u), phi_prime=slope)
    _require_unit_speed(spec.curve, name)
    logger.debug(f"Built Case I surface {name!r} with phi={render(phi)}")
    return spec


def make_case2(
    x1: ComponentLike,
    x2: ExprAst,
    x3: ExprAst,
    lam: float,
    *,
    u_domain: Domain,
    params: Mapping[str, float] | None = None,
    name: str = "case2",
    v_domain: Domain = (0.0, TWO_PI),
    meta: Mapping[str, float | str] | None = None,
    x1_offset: float = 0.0,
) -> SurfaceSpec:
    """
    Case II surface: the profile (x1, x2, x3, lambda * x3) with x3 > 0.

    Raises:
        PositivityError: if x3 <= 0 at a sampled point
        UnitSpeedViolation: if x1'^2 + x2'^2 + (1 + lambda^2) x3'^2 differs from 1
    """
    c3 = ExprComponent(x3, render(x3))
    spec = _build(
        SurfaceKind.CASE2,
        (x1, x2, c3, ScaledComponent(c3, float(lam))),
        {"x1": _source(x1), "x2": render(x2), "x3": render(x3)},
        u_domain=u_domain, params=params, name=name, v_domain=v_domain, meta=meta,
        lam=lam, x1_offset=x1_offset,
    )
    for u in spec.curve.sample_points():
        value = eval_jet1d(x3, float(u), spec.params).d0
        if not value > 0.0:
            raise PositivityError(f"x3 must stay positive on {name!r}", u=float(u), value=value)
    _require_unit_speed(spec.curve, name)
    logger.debug(f"Built Case II surface {name!r} with x3={render(x3)}, lambda={lam}")
    return spec


def surface_from_document(doc: SurfaceDocument) -> SurfaceSpec:
    """
    Build a surface from its JSON document, completing x1 when requested.

    Expression sources are kept verbatim so ``to_document`` writes them back.
    """
    names = tuple(doc.params)
    ast = lambda text: parse(text, names) if text is not None else None
    x1, x2, x3, x4, phi = (ast(doc.x1), ast(doc.x2), ast(doc.x3), ast(doc.x4), ast(doc.phi))
    common = dict(
        u_domain=doc.u_domain, params=doc.params, name=doc.name,
        v_domain=doc.v_domain, meta=doc.meta, x1_offset=doc.x1_offset,
    )

    def completed(terms) -> Component:
        return complete_x1(terms, u_domain=doc.u_domain, params=doc.params, x1_offset=doc.x1_offset)

    match doc.kind:
        case SurfaceKind.CASE1:
            first = x1 if x1 is not None else completed([(1.0, x2), (1.0, phi)])
            spec = make_case1(first, x2, phi, **common)
        case SurfaceKind.CASE2:
            first = x1 if x1 is not None else completed([(1.0, x2), (1.0 + doc.lam ** 2, x3)])
            spec = make_case2(first, x2, x3, doc.lam, **common)
        case _:
            first = x1 if x1 is not None else completed([(1.0, x2), (1.0, x3), (1.0, x4)])
            curve = CurveSpec(
                (_component(first), _component(x2), _component(x3), _component(x4)),
                doc.params, doc.u_domain,
            )
            spec = make_general(
                curve, name=doc.name, v_domain=doc.v_domain, meta=doc.meta, x1_offset=doc.x1_offset,
            )
    # keep the user's spelling of each expression
    sources = {
        key: text
        for key, text in (("x1", doc.x1), ("x2", doc.x2), ("x3", doc.x3), ("x4", doc.x4), ("phi", doc.phi))
        if text is not None
    }
    return replace(spec, sources=sources)


def profile_curvature(curve: CurveSpec, u: float, tol: Optional[float] = None) -> float:
    """
    Curvature |gamma''(u)| of a unit-speed profile curve.

    Raises:
        UnitSpeedViolation: if |gamma'(u)|^2 differs from 1 by more than ``tol``
            (the configured unit-speed tolerance by default)
    """
    tol = config.UNIT_SPEED_TOL if tol is None else tol
    residual = abs(curve.speed_squared(u) - 1.0)
    if residual > tol:
        raise UnitSpeedViolation("curvature formula needs an arclength parameter", max_residual=residual, u=u)
    return float(np.linalg.norm(curve.derivative(u, 2)))


def _case1_terms(phi_jet: Jet1D) -> Tuple[float, float, float]:
    slope, bend = phi_jet.d1, phi_jet.d2
    if abs(slope) >= 1.0:
        raise RegularityError("Case I formulas need |phi'| < 1", u=None, phi_prime=slope)
    return slope, bend, 1.0 - slope * slope


def case1_h2_formula(phi_jet: Jet1D, kappa: float) -> float:
    """
    (kappa^2 + 1 - 2 phi'^2 - phi''^2 / (1 - phi'^2)) / (4 (1 - phi'^2)^2), evaluated literally.

    On unit-speed Case I surfaces this equals <H, H>.
    """
    slope, bend, q = _case1_terms(phi_jet)
    return (kappa * kappa + 1.0 - 2.0 * slope * slope - bend * bend / q) / (4.0 * q * q)


def case1_minimal_residual(phi_jet: Jet1D, kappa: float) -> float:
    """kappa^2 - (phi''^2 / (1 - phi'^2) + 2 phi'^2 - 1); zero is the minimality condition."""
    slope, bend, q = _case1_terms(phi_jet)
    return kappa * kappa - (bend * bend / q + 2.0 * slope * slope - 1.0)


def validate_knot_arc(curve: CurveSpec, tol: float = ARC_TOL) -> KnotArcReport:
    """
    Check that a profile arc closes up smoothly under rotation.

    Endpoints must lie in the fixed plane x3 = x4 = 0 and the tangent there
    must be orthogonal to it (x1' = x2' = 0). Report only; never raises:
    an endpoint that cannot be evaluated fails both checks and its error is
    kept in ``endpoint_errors``.
    """
    in_plane, orthogonal, errors = [], [], []
    for u in curve.u_domain:
        try:
            j1, j2, j3, j4 = curve.jets(u)
        except KnottedSpheresError as exc:
            in_plane.append(False)
            orthogonal.append(False)
            errors.append(f"{type(exc).__name__}: {exc.message}")
            continue
        in_plane.append(abs(j3.d0) <= tol and abs(j4.d0) <= tol)
        orthogonal.append(abs(j1.d1) <= tol and abs(j2.d1) <= tol)
        errors.append(None)
    worst, skipped = 0.0, 0
    for u in curve.sample_points():
        try:
            worst = max(worst, abs(curve.speed_squared(float(u)) - 1.0))
        except KnottedSpheresError:
            skipped += 1
    report = KnotArcReport(
        endpoint_in_plane=tuple(in_plane),
        tangent_orthogonal=tuple(orthogonal),
        unit_speed_max_residual=worst,
        tolerance=tol,
        endpoint_errors=tuple(errors),
        skipped_samples=skipped,
    )
    if not report.closes_smoothly:
        logger.info(f"Arc does not close smoothly: in_plane={in_plane}, orthogonal={orthogonal}")
    return report
