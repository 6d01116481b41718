"""Internal consistency checks of the curvature pipeline."""
from __future__ import annotations

from typing import List, Optional

import numpy as np

from ..exceptions import KnottedSpheresError
from ..geom import Normalization, gauss_intrinsic, normality_defect
from ..models import ClaimId, GridConfig, InstanceReport
from ..patch import JET_FIELDS, JET_ORDER, SurfaceSpec, fd_jet, surface_jet
from ..sampling import fit_grid
from .base import Claim, ok_samples

FD_RESOLUTION = 8


class GaussRoutesAgree(Claim):
    """
    Extrinsic, intrinsic and rotational Gaussian curvature agree.

    Residual per sample: |K_ext - K_int| / (1 + |K_ext|), and the same for
    K_rot where the rotational shortcut applies.
    """
    claim_id = ClaimId.EGREGIUM
    default_tolerance = 1e-7

    def evaluate_instance(self, spec: SurfaceSpec, grid: Optional[GridConfig], tol: float) -> InstanceReport:
        samples = self.samples(spec, grid)
        residuals: List[float] = []
        normalization_gap = 0.0
        normality = 0.0
        rotational = 0
        for s in ok_samples(samples):
            K = s.curvature
            scale = 1.0 + abs(K.K_ext)
            gap = abs(K.K_ext - K.K_int) / scale
            if K.K_rot is not None:
                rotational += 1
                gap = max(gap, abs(K.K_rot - K.K_ext) / scale)
            residuals.append(gap)
            corrected = gauss_intrinsic(s.ff, Normalization.BRIOSCHI)
            normalization_gap = max(normalization_gap, abs(corrected - K.K_int))
            normality = max(normality, normality_defect(s.jet, s.sff))
        return self.instance(
            spec, samples, residuals,
            rotational_samples=rotational,
            normalization_gap=normalization_gap,
            normality_defect=normality,
            failed=normality > 1e-8,
        )


class FiniteDifferenceAgreement(Claim):
    """
    Analytic jets agree with central differences of X.

    Orders <= 2 use the fd step and tolerance, order 3 its own pair. The
    residual scales the order-3 error onto the order-2 tolerance.
    """
    claim_id = ClaimId.FD_CONSISTENCY

    @property
    def default_tolerance(self) -> float:
        return self.settings.fd_tol

    def evaluate_instance(self, spec: SurfaceSpec, grid: Optional[GridConfig], tol: float) -> InstanceReport:
        settings = self.settings
        step, step3 = settings.fd_step, settings.fd_step_order3
        margin = 2.0 * max(step, step3) + 1e-9
        interior = fit_grid(spec, grid, margin=margin, resolution=FD_RESOLUTION)
        if interior is not None and grid is not None:
            interior = interior.model_copy(update={"nu": FD_RESOLUTION, "nv": FD_RESOLUTION})
        residuals: List[float] = []
        worst2 = worst3 = 0.0
        skipped: dict[str, int] = {}
        points = [] if interior is None else [(u, v) for u in interior.u_values() for v in interior.v_values()]
        for u, v in points:
            try:
                exact = surface_jet(spec, u, v)
                near = fd_jet(spec, u, v, step)
                wide = fd_jet(spec, u, v, step3)
            except KnottedSpheresError as exc:
                key = type(exc).__name__
                skipped[key] = skipped.get(key, 0) + 1
                continue
            e2 = e3 = 0.0
            for name in JET_FIELDS:
                if JET_ORDER[name] <= 2:
                    e2 = max(e2, float(np.max(np.abs(getattr(exact, name) - getattr(near, name)))))
                else:
                    e3 = max(e3, float(np.max(np.abs(getattr(exact, name) - getattr(wide, name)))))
            worst2, worst3 = max(worst2, e2), max(worst3, e3)
            residuals.append(max(e2, e3 * tol / settings.fd_tol_order3))
        report = self.instance(
            spec, [], residuals,
            extra_skips=skipped,
            order2_max_error=worst2,
            order3_max_error=worst3,
        )
        report.samples = len(residuals)
        report.skipped = sum(skipped.values())
        return report
