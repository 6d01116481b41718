import json
from dataclasses import replace

import pytest

from knotted_spheres.claims import Verifier, run_claim
from knotted_spheres.config import Settings
from knotted_spheres.exceptions import CorpusError
from knotted_spheres.expr import parse
from knotted_spheres.knots import make_case2
from knotted_spheres.models import ClaimId, ClaimStatus, GridConfig
from knotted_spheres.patch import AngleComponent, CurveSpec, ExprComponent


def report(ledger, claim_id):
    return next(r for r in ledger.claims if r.claim is claim_id)


def test_ledger_covers_every_claim_in_order(ledger):
    assert [r.claim for r in ledger.claims] == list(ClaimId)
    assert ledger.ok


@pytest.mark.parametrize(
    "claim_id",
    [
        ClaimId.PROP1,
        ClaimId.PROP2_B12,
        ClaimId.COR3_B15,
        ClaimId.PROP4,
        ClaimId.COR5_FLAT,
        ClaimId.PROP6,
        ClaimId.THM7,
        ClaimId.COR8,
        ClaimId.PROP9,
        ClaimId.EGREGIUM,
        ClaimId.FD_CONSISTENCY,
    ],
)
def test_claims_hold_on_the_builtin_corpus(ledger, claim_id):
    result = report(ledger, claim_id)
    assert result.status is ClaimStatus.PASS, result.note
    assert result.max_residual < result.tolerance
    assert result.instances


@pytest.mark.parametrize("claim_id,sign", [(ClaimId.COR5_PSEUDO, -1.0), (ClaimId.COR5_SPHER, 1.0)])
def test_constant_curvature_is_sign_times_c_squared(ledger, claim_id, sign):
    """The measured constant is sign * c^2; the printed sign / c^2 only matches at c = 1"""
    result = report(ledger, claim_id)
    assert result.status is ClaimStatus.DISCREPANCY
    assert result.max_residual < result.tolerance
    by_c = {i.measured["c"]: i for i in result.instances}
    assert set(by_c) == {0.5, 1.0, 2.0}
    for c, instance in by_c.items():
        assert instance.measured["K_measured"] == pytest.approx(sign * c * c, abs=1e-6)
        assert instance.measured["K_printed"] == pytest.approx(sign / (c * c))
        assert instance.discrepancy == (c != 1.0)


def test_conjugate_nets_without_the_hidden_condition_are_recorded(ledger):
    """Curved Case II surfaces are conjugate with Gamma^1_12 = 0 and are only observed"""
    result = report(ledger, ClaimId.THM7)
    counter = {i.name for i in result.instances if i.measured.get("counter_observations")}
    assert "sphere" in counter
    planar = next(i for i in result.instances if i.name == "planar-line")
    assert planar.max_residual is not None


def test_ledger_is_deterministic(corpus):
    """Same corpus and settings give byte-identical ledgers, with or without threads"""
    wanted = [ClaimId.PROP1, ClaimId.PROP4, ClaimId.PROP9]
    first = Verifier(corpus, resolution=6).run(wanted).to_json()
    second = Verifier(corpus, resolution=6).run(wanted).to_json()
    threaded = Verifier(corpus, resolution=6, settings=Settings(workers=3)).run(wanted).to_json()
    assert first == second == threaded
    assert [c["claim"] for c in json.loads(first)["claims"]] == ["PROP1", "PROP4", "PROP9"]


def test_ledger_records_the_seed(corpus):
    ledger = Verifier(corpus, seed=0x4B4E4F54, resolution=4).run(["PROP4"])
    assert ledger.seed == "0x4b4e4f54"
    assert len(ledger.claims) == 1


def test_tolerance_override(verifier):
    """A tolerance below the measured residual turns a passing claim into a failure"""
    strict = verifier.run([ClaimId.COR5_SPHER], tol=1e-300)
    assert not strict.ok
    assert strict.claims[0].status is ClaimStatus.FAIL
    assert strict.claims[0].tolerance == 1e-300


def test_explicit_grid_is_clipped_per_surface(sphere, cone):
    grid = GridConfig(u_min=0.0, u_max=1.0, nu=5, v_min=0.0, v_max=3.0, nv=4)
    result = run_claim(ClaimId.PROP4, [sphere, cone], grid)
    assert result.status is ClaimStatus.PASS
    assert [i.samples for i in result.instances] == [20, 20]
    assert all(i.skipped == 0 for i in result.instances)


def test_run_claim_rejects_foreign_instances(sphere, half_angle):
    with pytest.raises(CorpusError) as exc_info:
        run_claim(ClaimId.PROP1, [half_angle, sphere])
    assert "sphere" in str(exc_info.value)

    with pytest.raises(CorpusError):
        run_claim(ClaimId.PROP4, [])


def test_claim_without_instances_is_vacuous(sphere):
    """Outside strict mode a claim with nothing to check reports vacuous"""
    result = Verifier([sphere], resolution=4).run_claim(ClaimId.PROP1)
    assert result.status is ClaimStatus.VACUOUS
    assert result.max_residual is None
    assert result.ok


def round_sphere(radius):
    """Case II sphere of the given radius, parametrized by arclength; K = 1 / radius^2."""
    return make_case2(
        parse(f"-{radius!r}*cos(u/{radius!r})"), parse("0"), parse(f"{radius!r}*sin(u/{radius!r})"), 0.0,
        u_domain=(0.2, 1.4 * radius), name=f"sphere-r{radius:g}",
    )


def test_sample_cache_never_serves_another_surface():
    """Surfaces built and dropped in turn each get their own samples"""
    verifier = Verifier([], resolution=3)
    for i in range(60):
        radius = 1.0 if i % 2 == 0 else 2.0
        sample = next(s for s in verifier.samples(round_sphere(radius)) if s.ok)
        assert sample.curvature.K_ext == pytest.approx(1.0 / radius ** 2, abs=1e-12)

    for i in range(20):
        result = verifier.run_claim(ClaimId.PROP4, [round_sphere(1.0 + i % 3)])
        assert result.status is ClaimStatus.PASS


def test_run_empties_the_sample_cache(corpus):
    verifier = Verifier(corpus, resolution=4)
    verifier.run([ClaimId.PROP4])
    assert verifier.cache_size == 0
    verifier.samples(corpus[0])
    assert verifier.cache_size == 1
    verifier.clear_cache()
    assert verifier.cache_size == 0


def test_case1_profile_without_arclength_fails_the_claim(half_angle):
    """A Case I surface whose profile is not unit speed is a failed instance, not an error"""
    phi = parse("u/2")
    stretched = CurveSpec(
        (ExprComponent(parse("u"), "u"), ExprComponent(parse("0"), "0"),
         AngleComponent(phi, "cos"), AngleComponent(phi, "sin")),
        {},
        half_angle.u_domain,
    )
    spec = replace(half_angle, curve=stretched, name="stretched")
    verifier = Verifier([spec], resolution=4)
    for claim_id in (ClaimId.PROP2_B12, ClaimId.COR3_B15):
        result = verifier.run_claim(claim_id)
        assert result.status is ClaimStatus.FAIL
        instance = result.instances[0]
        assert instance.failed
        assert instance.measured["error"].startswith("UnitSpeedViolation: ")
        assert instance.measured["speed_residual"] == pytest.approx(0.25)
    assert not verifier.run([ClaimId.PROP2_B12]).ok


def test_unit_speed_tolerance_comes_from_settings(half_angle):
    """A looser configured tolerance lets the same profile through"""
    phi = parse("u/2")
    stretched = CurveSpec(
        (ExprComponent(parse("0.87*u"), "0.87*u"), ExprComponent(parse("0"), "0"),
         AngleComponent(phi, "cos"), AngleComponent(phi, "sin")),
        {},
        half_angle.u_domain,
    )
    spec = replace(half_angle, curve=stretched, name="nearly-unit")
    strict = Verifier([spec], resolution=4).run_claim(ClaimId.PROP2_B12)
    loose = Verifier([spec], resolution=4, settings=Settings(unit_speed_tol=0.1)).run_claim(ClaimId.PROP2_B12)
    assert strict.instances[0].failed
    assert not loose.instances[0].failed
    assert loose.instances[0].max_residual is not None


def test_default_tolerance_comes_from_settings(corpus):
    result = Verifier(corpus, resolution=4, settings=Settings(abs_tol=1e-300)).run_claim(ClaimId.PROP1)
    assert result.tolerance == 1e-300
    assert Verifier(corpus, resolution=4, settings=Settings(abs_tol=0.5)).run_claim(ClaimId.PROP1).tolerance == 0.5


@pytest.mark.slow
def test_full_corpus_at_default_resolution(corpus):
    """Every claim over every built-in surface on 50 x 50 grids; a second run is byte-identical"""
    first = Verifier(corpus).run()
    assert first.ok
    assert [r.claim for r in first.claims] == list(ClaimId)
    for result in first.claims:
        assert result.status in (ClaimStatus.PASS, ClaimStatus.DISCREPANCY), result.claim
        assert result.max_residual < result.tolerance
    by_claim = {r.claim: r for r in first.claims}

    prop1 = by_claim[ClaimId.PROP1]
    assert sum(1 for i in prop1.instances if i.name.startswith("case1-random-")) == 5
    assert all(i.samples + i.skipped == 2500 for i in prop1.instances)
    assert prop1.max_residual < 1e-8
    assert sum(1 for i in by_claim[ClaimId.PROP4].instances if i.name.startswith("case2-random-")) == 5
    assert by_claim[ClaimId.PROP4].max_residual < 1e-7
    assert by_claim[ClaimId.COR5_FLAT].max_residual < 1e-10

    assert Verifier(corpus).run().to_json() == first.to_json()
