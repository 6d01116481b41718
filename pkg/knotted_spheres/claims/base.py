from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any, FrozenSet, Iterable, List, Optional, Sequence

from .. import config
from ..corpus import family
from ..exceptions import CorpusError
from ..models import (
    ClaimId,
    ClaimReport,
    ClaimStatus,
    GridConfig,
    InstanceReport,
    SurfaceKind,
)
from ..patch import SurfaceSpec
from ..sampling import PointSample, skip_reasons

if TYPE_CHECKING:
    from .harness import Verifier

logger = logging.getLogger(__name__)

# a net counts as conjugate at a sample when its defect is below this
CONJUGATE_TOL = 1e-9


class Claim:
    """
    Base class for numeric experiments on a corpus of surfaces.

    Subclasses set ``claim_id`` and the families they accept, and implement
    ``evaluate_instance``. Aggregation into a ClaimReport is shared:

      - fail when any residual reaches the tolerance or an instance failed
      - vacuous when no instance produced a residual
      - discrepancy-documented when an instance disagrees with a printed constant
      - pass otherwise
    """

    claim_id: ClaimId
    kinds: Optional[FrozenSet[SurfaceKind]] = None
    families: Optional[FrozenSet[str]] = None
    note: str = ""

    def __init__(self, *, verifier: "Verifier"):
        self._verifier = verifier

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} {self.claim_id.value}>"

    def accepts(self, spec: SurfaceSpec) -> bool:
        if self.kinds is not None and spec.kind not in self.kinds:
            return False
        if self.families is not None and family(spec) not in self.families:
            return False
        return True

    def select(self, corpus: Iterable[SurfaceSpec]) -> List[SurfaceSpec]:
        return [spec for spec in corpus if self.accepts(spec)]

    def samples(self, spec: SurfaceSpec, grid: Optional[GridConfig]) -> List[PointSample]:
        return self._verifier.samples(spec, grid)

    @property
    def settings(self) -> config.Settings:
        return self._verifier.settings

    @property
    def default_tolerance(self) -> float:
        return self.settings.abs_tol

    def instance(
        self,
        spec: SurfaceSpec,
        samples: Sequence[PointSample],
        residuals: Sequence[float],
        *,
        extra_skips: Optional[dict[str, int]] = None,
        **measured: Any,
    ) -> InstanceReport:
        """Assemble an InstanceReport; ``failed`` and ``discrepancy`` may be passed in ``measured``."""
        failed = bool(measured.pop("failed", False))
        discrepancy = bool(measured.pop("discrepancy", False))
        reasons = skip_reasons(samples)
        for key, count in (extra_skips or {}).items():
            reasons[key] = reasons.get(key, 0) + count
        ok = sum(1 for s in samples if s.ok)
        return InstanceReport(
            name=spec.name,
            kind=spec.kind.value,
            description=str(spec.meta.get("family", "")),
            samples=ok,
            skipped=len(samples) - ok,
            max_residual=max(residuals) if residuals else None,
            skip_reasons=dict(sorted(reasons.items())),
            measured=measured,
            failed=failed,
            discrepancy=discrepancy,
        )

    def evaluate_instance(self, spec: SurfaceSpec, grid: Optional[GridConfig], tol: float) -> InstanceReport:
        raise NotImplementedError

    def summarize(self, instances: List[InstanceReport], tol: float) -> ClaimReport:
        measured = [i.max_residual for i in instances if i.max_residual is not None]
        worst: Optional[float] = max(measured) if measured else None
        if any(i.failed for i in instances) or (worst is not None and not worst < tol):
            status = ClaimStatus.FAIL
        elif worst is None:
            status = ClaimStatus.VACUOUS
        elif any(i.discrepancy for i in instances):
            status = ClaimStatus.DISCREPANCY
        else:
            status = ClaimStatus.PASS
        return ClaimReport(
            claim=self.claim_id,
            status=status,
            max_residual=worst,
            tolerance=tol,
            instances=instances,
            note=self.describe(instances, tol),
        )

    def describe(self, instances: List[InstanceReport], tol: float) -> str:
        return self.note

    def run(
        self,
        corpus: Sequence[SurfaceSpec],
        grid: Optional[GridConfig] = None,
        tol: Optional[float] = None,
        *,
        strict: bool = True,
    ) -> ClaimReport:
        """
        Evaluate the claim on every accepted instance of ``corpus``.

        Args:
            corpus: Surfaces to test
            grid: Sampling grid, clipped to each domain; None covers each domain
            tol: Tolerance, defaults to the claim's own
            strict: Raise CorpusError when an instance is outside the claim's family

        Raises:
            CorpusError: for an empty corpus, or a family mismatch when strict
        """
        tol = self.default_tolerance if tol is None else float(tol)
        if not corpus:
            raise CorpusError(f"{self.claim_id.value} needs a non-empty corpus")
        rejected = [spec.name for spec in corpus if not self.accepts(spec)]
        if strict and rejected:
            raise CorpusError(
                f"{self.claim_id.value} does not apply to these instances", instances=", ".join(rejected)
            )
        logger.info(f"Running {self.claim_id.value} on {len(corpus) - len(rejected)} instances")
        instances = [self.evaluate_instance(spec, grid, tol) for spec in self.select(corpus)]
        report = self.summarize(instances, tol)
        if report.status is ClaimStatus.FAIL:
            logger.error(f"{self.claim_id.value} failed: max residual {report.max_residual} >= {tol}")
        elif report.status is ClaimStatus.DISCREPANCY:
            logger.warning(f"{self.claim_id.value}: {report.note}")
        else:
            logger.info(f"{self.claim_id.value}: {report.status.value}")
        return report


def ok_samples(samples: Iterable[PointSample]) -> List[PointSample]:
    return [s for s in samples if s.ok]
