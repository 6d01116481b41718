"""
Rotational patches in E^4.

A profile curve gamma(u) = (x1, x2, x3, x4) is swept by the rotation that fixes
the (x1, x2) plane and turns the (x3, x4) plane by v:

    X(u, v) = (x1, x2, x3 cos v - x4 sin v, x3 sin v + x4 cos v)

u-derivatives come from the curve jets; v-derivatives are the analytic
derivatives of the rotation, so every partial up to order 3 is exact.
"""
from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Mapping, Optional, Protocol, Sequence, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import BPoly

from . import config
from .exceptions import DomainError, SpeedDeficit
from .expr import Call, Const, ExprAst, Jet1D, eval_jet1d, eval_value, render
from .expr import ast as ops
from .expr.jet import FUNCTIONS as jet_functions
from .models import SurfaceDocument, SurfaceKind

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
AmbientVec = np.ndarray
Domain = Tuple[float, float]


def ambient(*coords: float) -> AmbientVec:
    """Read-only float64 4-vector."""
    vec = np.array(coords, dtype=np.float64)
    if vec.shape != (4,):
        raise ValueError(f"ambient vectors have 4 components, got {vec.shape}")
    vec.setflags(write=False)
    return vec


class Component(Protocol):
    """One coordinate function of a profile curve."""

    def jet(self, u: float, params: Mapping[str, float]) -> Jet1D: ...

    def describe(self) -> Optional[str]: ...


@dataclass(frozen=True)
class ExprComponent:
    ast: ExprAst
    source: str = ""

    def jet(self, u: float, params: Mapping[str, float]) -> Jet1D:
        return eval_jet1d(self.ast, u, params)

    def describe(self) -> Optional[str]:
        return self.source or render(self.ast)


@dataclass(frozen=True)
class AngleComponent:
    """cos(phi) or sin(phi) of a Case I angle function."""
    phi: ExprAst
    func: str

    def jet(self, u: float, params: Mapping[str, float]) -> Jet1D:
        return jet_functions[self.func](eval_jet1d(self.phi, u, params))

    def describe(self) -> Optional[str]:
        return f"{self.func}({render(self.phi)})"


@dataclass(frozen=True)
class ScaledComponent:
    """factor * base, used for the Case II line x4 = lambda * x3."""
    base: Component
    factor: float

    def jet(self, u: float, params: Mapping[str, float]) -> Jet1D:
        return self.base.jet(u, params) * self.factor

    def describe(self) -> Optional[str]:
        return f"({self.factor!r}) * ({self.base.describe()})"


class QuadratureComponent:
    """
    Component known through its derivative.

    ``rate`` is a closed-form expression for the derivative, so the first three
    derivatives of the component are analytic. The value is integrated from
    ``u_domain[0]`` (plus ``offset``) with adaptive quadrature on a fixed set of
    checkpoints and joined by quintic Hermite pieces that match value, rate and
    rate' at every checkpoint.

    The checkpoint table is built once on first use and only read afterwards.
    """

    def __init__(
        self,
        rate: ExprAst,
        u_domain: Domain,
        params: Mapping[str, float],
        offset: float = 0.0,
        nodes: int = config.QUADRATURE_NODES,
    ):
        self.rate = rate
        self.u_domain = (float(u_domain[0]), float(u_domain[1]))
        self.params = dict(params)
        self.offset = float(offset)
        self.nodes = max(int(nodes), 2)
        self._lock = threading.Lock()
        self._interpolant: Optional[BPoly] = None

    def __repr__(self) -> str:
        return f"QuadratureComponent(rate={render(self.rate)!r}, offset={self.offset!r})"

    def _build(self) -> BPoly:
        lo, hi = self.u_domain
        knots = np.linspace(lo, hi, self.nodes + 1)
        rate = lambda t: eval_value(self.rate, t, self.params)
        values = [self.offset]
        for a, b in zip(knots[:-1], knots[1:]):
            piece, _ = quad(
                rate, a, b,
                epsabs=config.QUADRATURE_TOL, epsrel=config.QUADRATURE_TOL, limit=200,
            )
            values.append(values[-1] + piece)
        derivatives = []
        for t, value in zip(knots, values):
            d = eval_jet1d(self.rate, float(t), self.params)
            derivatives.append([value, d.d0, d.d1])
        logger.debug(f"Integrated {render(self.rate)} on {self.nodes} checkpoints over [{lo}, {hi}]")
        return BPoly.from_derivatives(knots, derivatives)

    @property
    def interpolant(self) -> BPoly:
        if self._interpolant is None:
            with self._lock:
                if self._interpolant is None:
                    self._interpolant = self._build()
        return self._interpolant

    def value(self, u: float) -> float:
        return float(self.interpolant(u))

    def jet(self, u: float, params: Mapping[str, float]) -> Jet1D:
        d = eval_jet1d(self.rate, u, params)
        return Jet1D(self.value(u), d.d0, d.d1, d.d2)

    def describe(self) -> Optional[str]:
        return None


@dataclass(frozen=True, eq=False)
class CurveSpec:
    """Profile curve gamma(u) with its parameter values and domain."""
    components: Tuple[Component, Component, Component, Component]
    params: Mapping[str, float] = field(default_factory=dict)
    u_domain: Domain = (0.0, 1.0)

    def __post_init__(self):
        if len(self.components) != 4:
            raise ValueError("a profile curve has exactly 4 components")
        lo, hi = self.u_domain
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise DomainError(f"degenerate domain [{lo}, {hi}]")
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))

    def jets(self, u: float) -> Tuple[Jet1D, Jet1D, Jet1D, Jet1D]:
        return tuple(c.jet(u, self.params) for c in self.components)

    def derivative(self, u: float, order: int) -> AmbientVec:
        """gamma^(order)(u) as an ambient vector, 0 <= order <= 3."""
        return ambient(*(j.as_tuple()[order] for j in self.jets(u)))

    def speed_squared(self, u: float) -> float:
        return float(sum(j.d1 * j.d1 for j in self.jets(u)))

    def sample_points(self, count: int = config.VALIDATION_SAMPLES) -> np.ndarray:
        lo, hi = self.u_domain
        return np.linspace(lo, hi, max(count, 2))


@dataclass(frozen=True, eq=False)
class SurfaceSpec:
    """
    Immutable description of a rotational surface.

    ``curve`` is always the full profile curve; ``phi`` and ``lam`` are kept
    for the Case I and Case II formulas. ``sources`` holds the expression text
    of each document field so the spec can be written back out.
    """
    kind: SurfaceKind
    curve: CurveSpec
    name: str = "surface"
    phi: Optional[ExprAst] = None
    lam: float = 0.0
    v_domain: Domain = (0.0, TWO_PI)
    unit_speed_complete: bool = False
    x1_offset: float = 0.0
    meta: Mapping[str, float | str] = field(default_factory=dict)
    sources: Mapping[str, str] = field(default_factory=dict)

    @property
    def u_domain(self) -> Domain:
        return self.curve.u_domain

    @property
    def params(self) -> Mapping[str, float]:
        return self.curve.params

    @property
    def periodic_v(self) -> bool:
        lo, hi = self.v_domain
        return hi - lo >= TWO_PI - 1e-12

    def contains(self, u: float, v: float, margin: float = 0.0) -> bool:
        lo, hi = self.u_domain
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        if not (lo - slack <= u - margin and u + margin <= hi + slack):
            return False
        if self.periodic_v:
            return True
        vlo, vhi = self.v_domain
        return vlo - slack <= v - margin and v + margin <= vhi + slack

    def to_document(self) -> SurfaceDocument:
        """Serializable form; completed x1 components are written as ``unit_speed_complete``."""
        payload: Dict[str, object] = {
            "kind": self.kind,
            "name": self.name,
            "lambda": self.lam,
            "params": dict(self.params),
            "u_domain": self.u_domain,
            "v_domain": self.v_domain,
            "unit_speed_complete": self.unit_speed_complete,
            "x1_offset": self.x1_offset,
            "meta": dict(self.meta),
        }
        payload.update(self.sources)
        return SurfaceDocument.load(payload)


@dataclass(frozen=True, eq=False)
class PatchJet:
    """Position and all partials of X up to total order 3 at (u, v)."""
    X: AmbientVec
    Xu: AmbientVec
    Xv: AmbientVec
    Xuu: AmbientVec
    Xuv: AmbientVec
    Xvv: AmbientVec
    Xuuu: AmbientVec
    Xuuv: AmbientVec
    Xuvv: AmbientVec
    Xvvv: AmbientVec
    u: float
    v: float

    @property
    def Xvu(self) -> AmbientVec:
        return self.Xuv

    def entries(self) -> Dict[str, AmbientVec]:
        return {name: getattr(self, name) for name in JET_FIELDS}


JET_FIELDS = ("X", "Xu", "Xv", "Xuu", "Xuv", "Xvv", "Xuuu", "Xuuv", "Xuvv", "Xvvv")
JET_ORDER = {name: len(name) - 1 for name in JET_FIELDS}


def _rotated(a3: float, a4: float, c: float, s: float, k: int) -> Tuple[float, float]:
    # k-th v-derivative of R(v)(a3, a4); R'' = -R
    if k % 2 == 0:
        x3, x4 = a3 * c - a4 * s, a3 * s + a4 * c
    else:
        x3, x4 = -a3 * s - a4 * c, a3 * c - a4 * s
    if k % 4 >= 2:
        return -x3, -x4
    return x3, x4


def _check_domain(spec: SurfaceSpec, u: float, v: float, margin: float = 0.0) -> None:
    if not spec.contains(u, v, margin):
        raise DomainError(
            f"({u}, {v}) outside the domain of {spec.name!r}",
            u=u, v=v, u_domain=spec.u_domain, v_domain=spec.v_domain, margin=margin or None,
        )


def surface_jet(spec: SurfaceSpec, u: float, v: float) -> PatchJet:
    """
    Exact partials of X up to order 3.

    Args:
        spec: Surface specification
        u: Profile parameter
        v: Rotation angle in radians

    Returns:
        PatchJet at (u, v)

    Raises:
        DomainError: outside the spec domain or from expression evaluation
    """
    u, v = float(u), float(v)
    _check_domain(spec, u, v)
    j1, j2, j3, j4 = (j.as_tuple() for j in spec.curve.jets(u))
    c, s = math.cos(v), math.sin(v)

    def partial(i: int, k: int) -> AmbientVec:
        x3, x4 = _rotated(j3[i], j4[i], c, s, k)
        if k:
            return ambient(0.0, 0.0, x3, x4)
        return ambient(j1[i], j2[i], x3, x4)

    return PatchJet(
        X=partial(0, 0), Xu=partial(1, 0), Xv=partial(0, 1),
        Xuu=partial(2, 0), Xuv=partial(1, 1), Xvv=partial(0, 2),
        Xuuu=partial(3, 0), Xuuv=partial(2, 1), Xuvv=partial(1, 2), Xvvv=partial(0, 3),
        u=u, v=v,
    )


def surface_point(spec: SurfaceSpec, u: float, v: float) -> AmbientVec:
    """X(u, v) only."""
    return surface_jet(spec, u, v).X


def fd_jet(spec: SurfaceSpec, u: float, v: float, step: float = config.FD_STEP) -> PatchJet:
    """
    Central-difference approximation of every partial up to order 3.

    Uses X evaluations only, on the 3x3 block around (u, v) plus the points two
    steps away along each axis.

    Raises:
        DomainError: if the stencil leaves the domain
    """
    u, v, h = float(u), float(v), float(step)
    if not h > 0.0:
        raise DomainError(f"finite-difference step must be positive, got {h}")
    _check_domain(spec, u, v, margin=2.0 * h)
    cache: Dict[Tuple[int, int], AmbientVec] = {}

    def P(i: int, k: int) -> np.ndarray:
        if (i, k) not in cache:
            cache[(i, k)] = surface_point(spec, u + i * h, v + k * h)
        return cache[(i, k)]

    def second_u(k: int) -> np.ndarray:
        return (P(1, k) - 2.0 * P(0, k) + P(-1, k)) / (h * h)

    def second_v(i: int) -> np.ndarray:
        return (P(i, 1) - 2.0 * P(i, 0) + P(i, -1)) / (h * h)

    def first_u(k: int) -> np.ndarray:
        return (P(1, k) - P(-1, k)) / (2.0 * h)

    def first_v(i: int) -> np.ndarray:
        return (P(i, 1) - P(i, -1)) / (2.0 * h)

    def frozen(vec: np.ndarray) -> AmbientVec:
        return ambient(*vec)

    return PatchJet(
        X=frozen(P(0, 0)),
        Xu=frozen(first_u(0)),
        Xv=frozen(first_v(0)),
        Xuu=frozen(second_u(0)),
        Xuv=frozen((first_u(1) - first_u(-1)) / (2.0 * h)),
        Xvv=frozen(second_v(0)),
        Xuuu=frozen((P(2, 0) - 2.0 * P(1, 0) + 2.0 * P(-1, 0) - P(-2, 0)) / (2.0 * h ** 3)),
        Xuuv=frozen((second_u(1) - second_u(-1)) / (2.0 * h)),
        Xuvv=frozen((second_v(1) - second_v(-1)) / (2.0 * h)),
        Xvvv=frozen((P(0, 2) - 2.0 * P(0, 1) + 2.0 * P(0, -1) - P(0, -2)) / (2.0 * h ** 3)),
        u=u, v=v,
    )


def _radicand(terms: Sequence[Tuple[float, ExprAst]]) -> ExprAst:
    radicand: ExprAst = ops.ONE
    for weight, component in terms:
        slope = ops.differentiate(component)
        if slope == ops.ZERO or weight == 0.0:
            continue
        radicand = ops.sub(radicand, ops.mul(Const(float(weight)), ops.power(slope, ops.TWO)))
    return radicand


def _first_deficit(radicand: ExprAst, u_domain: Domain, params: Mapping[str, float]) -> None:
    lo, hi = u_domain
    # dense enough to resolve the quadrature checkpoints
    count = max(config.VALIDATION_SAMPLES, 4 * config.QUADRATURE_NODES + 1)
    for t in np.linspace(lo, hi, count):
        try:
            value = eval_value(radicand, float(t), params)
        except DomainError as exc:
            raise SpeedDeficit(f"speed radicand undefined: {exc.message}", u=float(t), radicand=math.nan) from exc
        if not value > 0.0:
            raise SpeedDeficit("profile components already exceed unit speed", u=float(t), radicand=value)


def complete_x1(
    terms: Sequence[Tuple[float, ExprAst]],
    *,
    u_domain: Domain,
    params: Mapping[str, float] | None = None,
    x1_offset: float = 0.0,
) -> QuadratureComponent:
    """
    Build x1 with x1' = sqrt(1 - sum(w * a'^2)) over the weighted known components.

    Args:
        terms: (weight, expression) pairs whose derivatives consume speed
        u_domain: Integration interval; x1(u_min) = x1_offset
        params: Parameter values
        x1_offset: Starting value

    Raises:
        SpeedDeficit: at the first sampled u where the radicand is not positive
    """
    params = dict(params or {})
    radicand = _radicand(terms)
    _first_deficit(radicand, u_domain, params)
    rate = Call("sqrt", radicand)
    return QuadratureComponent(rate, u_domain, params, offset=x1_offset)


def complete_unit_speed(
    x3: ExprAst,
    lam: float,
    x1_offset: float = 0.0,
    *,
    u_domain: Domain,
    params: Mapping[str, float] | None = None,
    x2: ExprAst | None = None,
) -> CurveSpec:
    """
    Unit-speed Case II profile (x1, x2, x3, lam * x3).

    x2 defaults to 0; x1' = sqrt(1 - x2'^2 - (1 + lam^2) x3'^2) in closed form.
    """
    params = dict(params or {})
    x2 = x2 if x2 is not None else ops.ZERO
    x1 = complete_x1(
        [(1.0, x2), (1.0 + lam * lam, x3)], u_domain=u_domain, params=params, x1_offset=x1_offset,
    )
    c3 = ExprComponent(x3)
    curve = CurveSpec((x1, ExprComponent(x2), c3, ScaledComponent(c3, float(lam))), params, u_domain)
    logger.info(f"Completed unit-speed Case II profile for x3={render(x3)}, lambda={lam}")
    return curve


def complete_unit_speed_case1(
    phi: ExprAst,
    x2: ExprAst | None = None,
    x1_offset: float = 0.0,
    *,
    u_domain: Domain,
    params: Mapping[str, float] | None = None,
) -> CurveSpec:
    """Unit-speed Case I profile with x1' = sqrt(1 - x2'^2 - phi'^2)."""
    params = dict(params or {})
    x2 = x2 if x2 is not None else ops.ZERO
    x1 = complete_x1([(1.0, x2), (1.0, phi)], u_domain=u_domain, params=params, x1_offset=x1_offset)
    return CurveSpec(
        (x1, ExprComponent(x2), AngleComponent(phi, "cos"), AngleComponent(phi, "sin")),
        params,
        u_domain,
    )
