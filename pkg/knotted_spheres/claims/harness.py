from __future__ import annotations

import logging
import threading
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..config import Settings
from ..models import ClaimId, ClaimReport, GridConfig, Ledger
from ..patch import SurfaceSpec
from ..sampling import DEFAULT_RESOLUTION, PointSample, fit_grid, ordered_map, sample_grid
from .base import Claim
from .case1 import Case1MeanCurvature, Case1Minimality, Case1NotConjugate, FlatCase1
from .case2 import Case2Curvature, FlatCase2, LaplaceInRotationPlane, PseudoSpherical, Spherical
from .consistency import FiniteDifferenceAgreement, GaussRoutesAgree
from .nets import ConjugateImpliesFlat, LaplaceParallelism

logger = logging.getLogger(__name__)


class Verifier:
    """
    Runs claims over a corpus and assembles the ledger.

    Grid samples are computed once per (surface, grid) and shared by every
    claim during one run; the cache is safe to fill from several threads and
    is emptied when the run ends. Without a grid
    each surface is covered by ``resolution`` points per axis.
    """

    def __init__(
        self,
        corpus: Sequence[SurfaceSpec],
        *,
        grid: Optional[GridConfig] = None,
        settings: Optional[Settings] = None,
        seed: Optional[int] = None,
        resolution: int = DEFAULT_RESOLUTION,
    ):
        self.corpus = list(corpus)
        self.grid = grid
        self.resolution = resolution
        self.settings = settings or Settings.from_env()
        self.seed = seed
        # entries hold the surface itself so its id cannot be reused while cached
        self._cache: Dict[Tuple[int, Optional[GridConfig]], Tuple[SurfaceSpec, List[PointSample]]] = {}
        self._lock = threading.Lock()
        self._initialize_claims()

    def _initialize_claims(self):
        """Register one handler per claim, in ledger order."""
        self.claims: Dict[ClaimId, Claim] = {}
        for claim_class in (
            FlatCase1,
            Case1MeanCurvature,
            Case1Minimality,
            Case2Curvature,
            PseudoSpherical,
            Spherical,
            FlatCase2,
            LaplaceParallelism,
            ConjugateImpliesFlat,
            Case1NotConjugate,
            LaplaceInRotationPlane,
            GaussRoutesAgree,
            FiniteDifferenceAgreement,
        ):
            claim = claim_class(verifier=self)
            self.claims[claim.claim_id] = claim

    def samples(self, spec: SurfaceSpec, grid: Optional[GridConfig] = None) -> List[PointSample]:
        fitted = fit_grid(spec, grid if grid is not None else self.grid, resolution=self.resolution)
        key = (id(spec), fitted)
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None and cached[0] is spec:
            return cached[1]
        samples = [] if fitted is None else sample_grid(spec, fitted)
        with self._lock:
            cached = self._cache.get(key)
            if cached is not None and cached[0] is spec:
                return cached[1]
            self._cache[key] = (spec, samples)
        return samples

    @property
    def cache_size(self) -> int:
        with self._lock:
            return len(self._cache)

    def clear_cache(self) -> None:
        with self._lock:
            self._cache.clear()

    def run_claim(
        self,
        claim_id: ClaimId | str,
        corpus: Optional[Sequence[SurfaceSpec]] = None,
        grid: Optional[GridConfig] = None,
        tol: Optional[float] = None,
        *,
        strict: bool = False,
    ) -> ClaimReport:
        """Run one claim; without ``strict`` instances outside its family are left out."""
        claim = self.claims[ClaimId(claim_id)]
        corpus = self.corpus if corpus is None else corpus
        grid = self.grid if grid is None else grid
        if not strict:
            corpus = claim.select(corpus)
            if not corpus:
                logger.info(f"{claim.claim_id.value}: no instance of its family in the corpus")
                return claim.summarize([], claim.default_tolerance if tol is None else tol)
        return claim.run(corpus, grid, tol, strict=strict)

    def run(
        self,
        claim_ids: Optional[Iterable[ClaimId | str]] = None,
        tol: Optional[float] = None,
    ) -> Ledger:
        """
        Run the selected claims (all by default) and return them in claim order.

        Args:
            claim_ids: Claims to run
            tol: Tolerance override for every selected claim

        Returns:
            Ledger with one report per claim
        """
        wanted = set(ClaimId(c) for c in claim_ids) if claim_ids is not None else set(self.claims)
        selected = [claim_id for claim_id in self.claims if claim_id in wanted]
        try:
            reports = ordered_map(lambda claim_id: self.run_claim(claim_id, tol=tol), selected, self.settings.workers)
        finally:
            self.clear_cache()
        return Ledger(
            seed=None if self.seed is None else f"{self.seed:#x}",
            claims=reports,
        )


def run_claim(
    claim_id: ClaimId | str,
    corpus: Sequence[SurfaceSpec],
    grid: Optional[GridConfig] = None,
    tol: Optional[float] = None,
) -> ClaimReport:
    """
    Run one claim on a corpus that must lie entirely in the claim's family.

    Raises:
        CorpusError: for an empty corpus or an instance outside the family
    """
    return Verifier(corpus, grid=grid).run_claim(claim_id, corpus, grid, tol, strict=True)
