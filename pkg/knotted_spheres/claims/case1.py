"""Claims about Case I surfaces, (x3, x4) = (cos phi, sin phi)."""
from __future__ import annotations

import logging
import math
from typing import Dict, List, Optional, Tuple

from ..exceptions import UnitSpeedViolation
from ..expr import Jet1D, eval_jet1d
from ..knots import case1_h2_formula, case1_minimal_residual, profile_curvature
from ..models import ClaimId, GridConfig, InstanceReport, SurfaceKind
from ..patch import SurfaceSpec
from ..sampling import PointSample
from .base import Claim, ok_samples

logger = logging.getLogger(__name__)

CASE1 = frozenset({SurfaceKind.CASE1})


class Case1Claim(Claim):
    kinds = CASE1

    def profile_terms(self, spec: SurfaceSpec, u: float, cache: Dict[float, Tuple[Jet1D, float]]) -> Tuple[Jet1D, float]:
        """phi jet and profile curvature at u, shared by every v on the row."""
        if u not in cache:
            kappa = profile_curvature(spec.curve, u, self.settings.unit_speed_tol)
            cache[u] = (eval_jet1d(spec.phi, u, spec.params), kappa)
        return cache[u]

    def not_arclength(self, spec: SurfaceSpec, samples: List[PointSample], exc: UnitSpeedViolation) -> InstanceReport:
        """Failed instance for a profile that is not parametrized by arclength."""
        logger.error(f"{self.claim_id.value}: {spec.name!r} has no arclength profile at u={exc.u}")
        return self.instance(
            spec, samples, [],
            failed=True,
            error=f"UnitSpeedViolation: {exc.message}",
            speed_residual=exc.max_residual,
        )


class FlatCase1(Case1Claim):
    """Every Case I surface is flat."""
    claim_id = ClaimId.PROP1
    note = "max |K_ext| over every Case I sample"

    def evaluate_instance(self, spec: SurfaceSpec, grid: Optional[GridConfig], tol: float) -> InstanceReport:
        samples = self.samples(spec, grid)
        residuals = [abs(s.curvature.K_ext) for s in ok_samples(samples)]
        return self.instance(spec, samples, residuals)


class Case1MeanCurvature(Case1Claim):
    """
    The profile-curvature formula for the mean curvature of a Case I surface.

    The printed left side is the norm of H; the right side is compared with
    <H, H> and the gap against |H| is recorded alongside.
    """
    claim_id = ClaimId.PROP2_B12
    default_tolerance = 1e-9

    def evaluate_instance(self, spec: SurfaceSpec, grid: Optional[GridConfig], tol: float) -> InstanceReport:
        samples = self.samples(spec, grid)
        cache: Dict[float, Tuple[Jet1D, float]] = {}
        residuals: List[float] = []
        norm_gap = 0.0
        steepest = 0.0
        try:
            for s in ok_samples(samples):
                phi_jet, kappa = self.profile_terms(spec, s.u, cache)
                rhs = case1_h2_formula(phi_jet, kappa)
                residuals.append(abs(s.curvature.H2 - rhs))
                norm_gap = max(norm_gap, abs(math.sqrt(s.curvature.H2) - rhs))
                steepest = max(steepest, abs(phi_jet.d1))
        except UnitSpeedViolation as exc:
            return self.not_arclength(spec, samples, exc)
        return self.instance(
            spec, samples, residuals,
            gap_vs_norm=norm_gap,
            max_abs_phi_prime=steepest,
            phi_constant=steepest == 0.0,
        )

    def describe(self, instances: List[InstanceReport], tol: float) -> str:
        gaps = [i.measured.get("gap_vs_norm") or 0.0 for i in instances]
        worst = max(gaps) if gaps else 0.0
        return (
            "right side compared with <H,H>; read as the norm |H| it misses by up to "
            f"{worst:.3g}, so the left side is the squared norm"
        )


class Case1Minimality(Case1Claim):
    """
    Minimality condition for Case I surfaces.

    Per sample the residual is 1 when "condition holds" and "<H,H> = 0"
    disagree, otherwise the gap to the identity r = 4 (1 - phi'^2)^2 <H,H>.
    """
    claim_id = ClaimId.COR3_B15

    def evaluate_instance(self, spec: SurfaceSpec, grid: Optional[GridConfig], tol: float) -> InstanceReport:
        samples = self.samples(spec, grid)
        cache: Dict[float, Tuple[Jet1D, float]] = {}
        residuals: List[float] = []
        least_h2 = math.inf
        minimal_points = 0
        try:
            for s in ok_samples(samples):
                phi_jet, kappa = self.profile_terms(spec, s.u, cache)
                r = case1_minimal_residual(phi_jet, kappa)
                H2 = s.curvature.H2
                least_h2 = min(least_h2, H2)
                holds, minimal = abs(r) < tol, H2 < tol
                minimal_points += minimal
                if holds != minimal:
                    residuals.append(1.0)
                else:
                    q = 1.0 - phi_jet.d1 ** 2
                    residuals.append(abs(r - 4.0 * q * q * H2))
        except UnitSpeedViolation as exc:
            return self.not_arclength(spec, samples, exc)
        return self.instance(
            spec, samples, residuals,
            min_H2=least_h2 if math.isfinite(least_h2) else None,
            minimal_points=minimal_points,
        )

    def describe(self, instances: List[InstanceReport], tol: float) -> str:
        lows = [i.measured["min_H2"] for i in instances if i.measured.get("min_H2") is not None]
        floor = f"{min(lows):.6g}" if lows else "n/a"
        return (
            "condition and <H,H> = 0 agree at every sample; no sample is minimal "
            f"(min <H,H> = {floor}, bounded below by 1/4), so the minimal side is vacuous"
        )


class Case1NotConjugate(Case1Claim):
    """
    A Case I net with non-constant phi is never conjugate.

    The defect equals |phi'|; constant phi is excluded (Xuv = 0 there).
    """
    claim_id = ClaimId.COR8

    def evaluate_instance(self, spec: SurfaceSpec, grid: Optional[GridConfig], tol: float) -> InstanceReport:
        samples = self.samples(spec, grid)
        good = ok_samples(samples)
        slopes = {s.u: abs(eval_jet1d(spec.phi, s.u, spec.params).d1) for s in good}
        steepest = max(slopes.values(), default=0.0)
        max_defect = max((s.net.defect for s in good), default=0.0)
        if steepest <= tol:
            return self.instance(
                spec, samples, [], degenerate=True, max_defect=max_defect, max_abs_phi_prime=steepest,
            )
        residuals = [abs(s.net.defect - slopes[s.u]) for s in good]
        return self.instance(
            spec, samples, residuals,
            degenerate=False,
            max_defect=max_defect,
            max_abs_phi_prime=steepest,
            failed=not max_defect > tol,
        )

    def describe(self, instances: List[InstanceReport], tol: float) -> str:
        skipped = [i.name for i in instances if i.measured.get("degenerate")]
        text = "defect equals |phi'|; every non-constant phi leaves the net non-conjugate"
        if skipped:
            text += f"; constant phi excluded ({', '.join(skipped)}): Xuv = 0 there"
        return text
