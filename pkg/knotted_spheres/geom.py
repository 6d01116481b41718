"""
First and second fundamental forms, Christoffel symbols and curvature.

Gaussian curvature has three routes: the Gauss equation from the second
fundamental form (K_ext), the metric-only formula (K_int), and the shortcut for
unit-speed rotational metrics (K_rot). They are compared, never silently
preferred.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import StrEnum
from typing import Iterable, Optional

import numpy as np

from .config import DEGENERATE_METRIC_RATIO
from .exceptions import DegenerateMetric, PreconditionError
from .patch import AmbientVec, PatchJet, ambient

logger = logging.getLogger(__name__)

ROTATIONAL_TOL = 1e-9


class Normalization(StrEnum):
    PRINTED = "printed"
    BRIOSCHI = "brioschi"


@dataclass(frozen=True, slots=True)
class FirstFormJet:
    E: float
    F: float
    G: float
    W2: float
    E_u: float
    E_v: float
    F_u: float
    F_v: float
    G_u: float
    G_v: float
    E_uu: float
    E_uv: float
    E_vv: float
    F_uu: float
    F_uv: float
    F_vv: float
    G_uu: float
    G_uv: float
    G_vv: float
    u: float = math.nan
    v: float = math.nan

    @property
    def W(self) -> float:
        return math.sqrt(self.W2)

    @property
    def W2_u(self) -> float:
        return self.E_u * self.G + self.E * self.G_u - 2.0 * self.F * self.F_u

    @property
    def W2_v(self) -> float:
        return self.E_v * self.G + self.E * self.G_v - 2.0 * self.F * self.F_v

    @property
    def W_u(self) -> float:
        return self.W2_u / (2.0 * self.W)

    @property
    def W_v(self) -> float:
        return self.W2_v / (2.0 * self.W)

    @property
    def v_independent(self) -> bool:
        return abs(self.E_v) + abs(self.F_v) + abs(self.G_v) <= ROTATIONAL_TOL


@dataclass(frozen=True, slots=True)
class Christoffel:
    """Gamma^k_ij with one field per unordered lower pair: g{k}{i}{j}."""
    g111: float
    g112: float
    g122: float
    g211: float
    g212: float
    g222: float


@dataclass(frozen=True, eq=False)
class SecondForm:
    huu: AmbientVec
    huv: AmbientVec
    hvv: AmbientVec


@dataclass(frozen=True, eq=False)
class CurvatureSample:
    K_ext: float
    K_int: float
    K_rot: Optional[float]
    H_vec: AmbientVec
    H2: float


def first_form(jet: PatchJet) -> FirstFormJet:
    """
    Metric coefficients and their derivatives up to order 2.

    Raises:
        DegenerateMetric: when W^2 <= 1e-14 * (E*G + 1)
    """
    dot = np.dot
    Xu, Xv = jet.Xu, jet.Xv
    Xuu, Xuv, Xvv = jet.Xuu, jet.Xuv, jet.Xvv
    Xuuu, Xuuv, Xuvv, Xvvv = jet.Xuuu, jet.Xuuv, jet.Xuvv, jet.Xvvv

    E = float(dot(Xu, Xu))
    F = float(dot(Xu, Xv))
    G = float(dot(Xv, Xv))
    W2 = E * G - F * F
    if not W2 > DEGENERATE_METRIC_RATIO * (E * G + 1.0):
        raise DegenerateMetric("tangent vectors are linearly dependent", W2=W2, u=jet.u, v=jet.v)

    uv2 = float(dot(Xuv, Xuv))
    return FirstFormJet(
        E=E, F=F, G=G, W2=W2,
        E_u=2.0 * float(dot(Xuu, Xu)),
        E_v=2.0 * float(dot(Xuv, Xu)),
        F_u=float(dot(Xuu, Xv) + dot(Xu, Xuv)),
        F_v=float(dot(Xuv, Xv) + dot(Xu, Xvv)),
        G_u=2.0 * float(dot(Xuv, Xv)),
        G_v=2.0 * float(dot(Xvv, Xv)),
        E_uu=2.0 * float(dot(Xuuu, Xu) + dot(Xuu, Xuu)),
        E_uv=2.0 * float(dot(Xuuv, Xu) + dot(Xuu, Xuv)),
        E_vv=2.0 * float(dot(Xuvv, Xu) + uv2),
        F_uu=float(dot(Xuuu, Xv) + 2.0 * dot(Xuu, Xuv) + dot(Xu, Xuuv)),
        F_uv=float(dot(Xuuv, Xv) + dot(Xuu, Xvv) + uv2 + dot(Xu, Xuvv)),
        F_vv=float(dot(Xuvv, Xv) + 2.0 * dot(Xuv, Xvv) + dot(Xu, Xvvv)),
        G_uu=2.0 * float(dot(Xuuv, Xv) + uv2),
        G_uv=2.0 * float(dot(Xuvv, Xv) + dot(Xuv, Xvv)),
        G_vv=2.0 * float(dot(Xvvv, Xv) + dot(Xvv, Xvv)),
        u=jet.u, v=jet.v,
    )


def christoffel(ff: FirstFormJet) -> Christoffel:
    """The six symbols of the Levi-Civita connection in general form."""
    E, F, G = ff.E, ff.F, ff.G
    d = 2.0 * ff.W2
    return Christoffel(
        g111=(G * ff.E_u - 2.0 * F * ff.F_u + F * ff.E_v) / d,
        g211=(2.0 * E * ff.F_u - E * ff.E_v - F * ff.E_u) / d,
        g112=(G * ff.E_v - F * ff.G_u) / d,
        g212=(E * ff.G_u - F * ff.E_v) / d,
        g122=(2.0 * G * ff.F_v - G * ff.G_u - F * ff.G_v) / d,
        g222=(E * ff.G_v - 2.0 * F * ff.F_v + F * ff.G_u) / d,
    )


def _require_rotational(ff: FirstFormJet) -> None:
    if abs(ff.E - 1.0) > ROTATIONAL_TOL or not ff.v_independent:
        raise PreconditionError(
            "formula needs a unit-speed profile and a v-independent metric",
            E=ff.E, E_v=ff.E_v, F_v=ff.F_v, G_v=ff.G_v, u=ff.u, v=ff.v,
        )


def rotational_christoffel(ff: FirstFormJet) -> Christoffel:
    """
    Christoffel table specialised to E = 1 and a metric independent of v.

    Raises:
        PreconditionError: outside that family
    """
    _require_rotational(ff)
    F, G, W2 = ff.F, ff.G, ff.W2
    return Christoffel(
        g111=-F * ff.F_u / W2,
        g211=ff.F_u / W2,
        g112=-F * ff.G_u / (2.0 * W2),
        g212=ff.G_u / (2.0 * W2),
        g122=-G * ff.G_u / (2.0 * W2),
        g222=F * ff.G_u / (2.0 * W2),
    )


def second_form(jet: PatchJet, ch: Christoffel) -> SecondForm:
    """Normal parts of the second partials, h_ij = X_ij - Gamma^1_ij Xu - Gamma^2_ij Xv."""
    Xu, Xv = jet.Xu, jet.Xv
    return SecondForm(
        huu=ambient(*(jet.Xuu - ch.g111 * Xu - ch.g211 * Xv)),
        huv=ambient(*(jet.Xuv - ch.g112 * Xu - ch.g212 * Xv)),
        hvv=ambient(*(jet.Xvv - ch.g122 * Xu - ch.g222 * Xv)),
    )


def normality_defect(jet: PatchJet, sff: SecondForm) -> float:
    """Largest |<h_ij, X_k>| / (1 + |h_ij|); zero for an exact second fundamental form."""
    worst = 0.0
    for h in (sff.huu, sff.huv, sff.hvv):
        scale = 1.0 + float(np.linalg.norm(h))
        for tangent in (jet.Xu, jet.Xv):
            worst = max(worst, abs(float(np.dot(h, tangent))) / scale)
    return worst


def mean_curvature(ff: FirstFormJet, sff: SecondForm) -> AmbientVec:
    return ambient(*((ff.E * sff.hvv - 2.0 * ff.F * sff.huv + ff.G * sff.huu) / (2.0 * ff.W2)))


def gauss_extrinsic(ff: FirstFormJet, sff: SecondForm) -> float:
    return float(np.dot(sff.huu, sff.hvv) - np.dot(sff.huv, sff.huv)) / ff.W2


def gauss_intrinsic(ff: FirstFormJet, normalization: Normalization | str = Normalization.PRINTED) -> float:
    """
    Gaussian curvature from the metric alone.

    K = -det / (4 W^n) - (1 / 2W) * [((E_v - F_u)/W)_v - ((F_v - G_u)/W)_u]

    with det = |E E_u E_v; F F_u F_v; G G_u G_v|. The printed normalisation
    uses n = 2, the Brioschi form n = 4. The determinant vanishes for every
    v-independent metric, so both agree on rotational surfaces.
    """
    normalization = Normalization(normalization)
    E, F, G, W2, W = ff.E, ff.F, ff.G, ff.W2, ff.W
    det = (
        E * (ff.F_u * ff.G_v - ff.F_v * ff.G_u)
        - ff.E_u * (F * ff.G_v - ff.F_v * G)
        + ff.E_v * (F * ff.G_u - ff.F_u * G)
    )
    scale = W2 if normalization is Normalization.PRINTED else W2 * W2
    first = -det / (4.0 * scale)
    A_v = (ff.E_vv - ff.F_uv) / W - (ff.E_v - ff.F_u) * ff.W_v / W2
    B_u = (ff.F_uv - ff.G_uu) / W - (ff.F_v - ff.G_u) * ff.W_u / W2
    return first - (A_v - B_u) / (2.0 * W)


def gauss_rotational(ff: FirstFormJet) -> float:
    """
    K = -(1/2W) (G_u / W)_u for unit-speed rotational metrics.

    Raises:
        PreconditionError: if |E - 1| or the v-derivatives of the metric exceed 1e-9
    """
    _require_rotational(ff)
    W, W2 = ff.W, ff.W2
    return -(ff.G_uu / W - ff.G_u * ff.W_u / W2) / (2.0 * W)


def curvature(ff: FirstFormJet, sff: SecondForm) -> CurvatureSample:
    H_vec = mean_curvature(ff, sff)
    try:
        K_rot: Optional[float] = gauss_rotational(ff)
    except PreconditionError:
        K_rot = None
    return CurvatureSample(
        K_ext=gauss_extrinsic(ff, sff),
        K_int=gauss_intrinsic(ff),
        K_rot=K_rot,
        H_vec=H_vec,
        H2=float(np.dot(H_vec, H_vec)),
    )


def is_flat(samples: Iterable[CurvatureSample], tol: float) -> bool:
    """True iff max |K_ext| over the samples is below tol."""
    values = [abs(s.K_ext) for s in samples]
    return bool(values) and max(values) < tol


def is_minimal(samples: Iterable[CurvatureSample], tol: float) -> bool:
    """True iff max <H, H> over the samples is below tol."""
    values = [s.H2 for s in samples]
    return bool(values) and max(values) < tol
