"""Claims about conjugate nets and their Laplace transforms."""
from __future__ import annotations

import math
from typing import List, Optional

from ..exceptions import DegenerateNet, DomainError
from ..models import ClaimId, GridConfig, InstanceReport, SurfaceKind
from ..nets import hidden_precondition, prop6_defect
from ..patch import SurfaceSpec
from .base import CONJUGATE_TOL, Claim, ok_samples

PROP6_STEP = 1e-3
# |F G_u| below this leaves Gamma^1_12 = 0 and the flatness argument void
PRECONDITION_TOL = 1e-6


class LaplaceParallelism(Claim):
    """
    On a conjugate net with Gamma^1_12 != 0, d/du X_1 is parallel to Xv.

    Conjugate samples give the residual. Non-conjugate samples with
    Gamma^1_12 != 0 are measured too: there the two directions separate.
    """
    claim_id = ClaimId.PROP6
    default_tolerance = 1e-4

    def evaluate_instance(self, spec: SurfaceSpec, grid: Optional[GridConfig], tol: float) -> InstanceReport:
        samples = self.samples(spec, grid)
        residuals: List[float] = []
        converse = math.inf
        converse_points = 0
        degenerate = 0
        for s in ok_samples(samples):
            if not abs(s.ch.g112) > self.settings.div_eps:
                continue
            if not spec.contains(s.u, s.v, margin=PROP6_STEP):
                continue
            try:
                sine = prop6_defect(spec, s.u, s.v, PROP6_STEP)
            except (DegenerateNet, DomainError):
                degenerate += 1
                continue
            if s.net.defect < CONJUGATE_TOL:
                residuals.append(sine)
            else:
                converse_points += 1
                converse = min(converse, sine)
        return self.instance(
            spec, samples, residuals,
            extra_skips={"DegenerateNet": degenerate} if degenerate else None,
            conjugate_points=len(residuals),
            converse_points=converse_points,
            converse_min_sine=converse if converse_points else None,
        )

    def describe(self, instances: List[InstanceReport], tol: float) -> str:
        used = [i.name for i in instances if i.max_residual is not None]
        if not used:
            return "no conjugate sample with Gamma^1_12 != 0"
        return f"conjugate samples with Gamma^1_12 != 0 on {', '.join(used)}"


class ConjugateImpliesFlat(Claim):
    """
    A conjugate net on a unit-speed rotational surface forces K = 0.

    Only samples with |F G_u| > 1e-6 qualify. Conjugate but curved samples
    without that condition are counted as counter-observations of the
    unconditional reading.
    """
    claim_id = ClaimId.THM7
    default_tolerance = 1e-7

    def evaluate_instance(self, spec: SurfaceSpec, grid: Optional[GridConfig], tol: float) -> InstanceReport:
        samples = self.samples(spec, grid)
        residuals: List[float] = []
        counter = 0
        for s in ok_samples(samples):
            if not s.net.defect < CONJUGATE_TOL:
                continue
            if hidden_precondition(s.ff) > PRECONDITION_TOL:
                residuals.append(abs(s.curvature.K_ext))
            elif abs(s.curvature.K_ext) >= tol:
                counter += 1
        return self.instance(spec, samples, residuals, counter_observations=counter)

    def describe(self, instances: List[InstanceReport], tol: float) -> str:
        counter = [i.name for i in instances if i.measured.get("counter_observations")]
        text = "checked where the net is conjugate and |F G_u| > 1e-6"
        if counter:
            text += (
                "; conjugate but curved without that condition: "
                f"{', '.join(counter)} (Gamma^1_12 = 0, e.g. every curved Case II surface)"
            )
        return text
