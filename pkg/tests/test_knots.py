import math

import pytest

from knotted_spheres.corpus import named_documents
from knotted_spheres.exceptions import PositivityError, RegularityError, SpecError, UnitSpeedViolation
from knotted_spheres.expr import Jet1D, eval_jet1d, parse
from knotted_spheres.geom import christoffel, curvature, first_form, second_form
from knotted_spheres.knots import (
    case1_h2_formula,
    case1_minimal_residual,
    make_case1,
    make_case2,
    profile_curvature,
    surface_from_document,
    validate_knot_arc,
)
from knotted_spheres.models import SurfaceDocument, SurfaceKind
from knotted_spheres.patch import surface_jet


def measured_h2(spec, u, v=0.0):
    jet = surface_jet(spec, u, v)
    ff = first_form(jet)
    return curvature(ff, second_form(jet, christoffel(ff))).H2


def test_case1_rejects_steep_angle():
    """|phi'| = 1 makes the Case I metric singular"""
    with pytest.raises(RegularityError) as exc_info:
        make_case1(parse("0"), parse("0"), parse("u"), u_domain=(0.0, 1.0))
    assert exc_info.value.phi_prime == 1.0


def test_case2_rejects_nonpositive_x3():
    """x3 must stay positive on the whole Case II domain"""
    with pytest.raises(PositivityError) as exc_info:
        make_case2(parse("0"), parse("0"), parse("-u"), 0.0, u_domain=(1.0, 2.0))
    assert exc_info.value.value == -1.0


def test_constructors_require_unit_speed():
    """Constructors validate arclength parametrisation and never fix it"""
    with pytest.raises(UnitSpeedViolation) as exc_info:
        make_case2(parse("u"), parse("0"), parse("u + 1"), 0.0, u_domain=(0.0, 1.0))
    assert exc_info.value.max_residual == pytest.approx(1.0)

    with pytest.raises(UnitSpeedViolation):
        make_case1(parse("u"), parse("0"), parse("u/2"), u_domain=(0.0, 1.0))


def test_general_patch_skips_unit_speed_check(named):
    """General patches accept any regular profile"""
    skew = named["skew"]
    assert skew.kind is SurfaceKind.GENERAL
    assert skew.curve.speed_squared(1.0) == pytest.approx(0.37)


def test_profile_curvature(sphere, plane, half_angle):
    """Round meridian, straight ray and the half-angle helix"""
    assert profile_curvature(sphere.curve, 0.8) == pytest.approx(1.0, abs=1e-14)
    assert profile_curvature(plane.curve, 1.2) == pytest.approx(0.0, abs=1e-15)
    assert profile_curvature(half_angle.curve, 2.0) == pytest.approx(0.25, abs=1e-15)


def test_profile_curvature_needs_arclength(named):
    with pytest.raises(UnitSpeedViolation):
        profile_curvature(named["skew"].curve, 1.0)
    # a looser tolerance accepts the same curve
    assert profile_curvature(named["skew"].curve, 1.0, tol=1.0) > 0.0


def test_profile_curvature_is_translation_invariant(make_curve):
    """Shifting the profile by a constant vector leaves its curvature alone"""
    arc = make_curve("sin(u)/2", "u*sqrt(3)/2", "cos(u)/2", "0", (0.0, 3.0))
    shifted = make_curve("sin(u)/2 + 3", "u*sqrt(3)/2 - 1.5", "cos(u)/2 + 7", "-2", (0.0, 3.0))
    for u in (0.1, 0.9, 1.7, 2.9):
        assert profile_curvature(arc, u) == pytest.approx(0.5, abs=1e-14)
        assert profile_curvature(shifted, u) == pytest.approx(profile_curvature(arc, u), abs=1e-14)


def test_case1_mean_curvature_formula(named, half_angle):
    """The closed form for <H, H> matches the measured value on Case I surfaces"""
    clifford = named["clifford-case1"]
    phi_jet = eval_jet1d(clifford.phi, 1.0)
    assert case1_h2_formula(phi_jet, 1.0) == pytest.approx(0.5, abs=1e-15)
    assert measured_h2(clifford, 1.0) == pytest.approx(0.5, abs=1e-12)

    phi_jet = eval_jet1d(half_angle.phi, 1.3)
    assert case1_h2_formula(phi_jet, 0.25) == pytest.approx(0.25, abs=1e-15)
    assert measured_h2(half_angle, 1.3, 0.4) == pytest.approx(0.25, abs=1e-12)


def test_case1_minimal_residual():
    """kappa^2 = phi''^2 / (1 - phi'^2) + 2 phi'^2 - 1 exactly on minimal Case I surfaces"""
    assert case1_minimal_residual(Jet1D(0.0), 1.0) == pytest.approx(2.0)
    assert case1_minimal_residual(Jet1D(0.0, 0.5), 0.25) == pytest.approx(0.5625)
    assert case1_minimal_residual(Jet1D(0.0, 0.8), math.sqrt(0.28)) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(RegularityError):
        case1_minimal_residual(Jet1D(0.0, -1.0), 0.0)


def test_validate_knot_arc(make_curve, sphere):
    """A half meridian from pole to pole closes up; a shorter arc does not"""
    arc = make_curve("-cos(u)", "0", "sin(u)", "0", (0.0, math.pi))
    report = validate_knot_arc(arc)
    assert report.closes_smoothly
    assert report.unit_speed_max_residual < 1e-14

    report = validate_knot_arc(sphere.curve)
    assert report.endpoint_in_plane == (False, False)
    assert report.tangent_orthogonal == (False, False)
    assert not report.closes_smoothly
    assert report.endpoint_errors == (None, None)


def test_validate_knot_arc_reports_unevaluable_endpoints(make_curve):
    """An endpoint outside the domain of an expression fails its checks instead of raising"""
    arc = make_curve("0", "0", "sqrt(u)*sqrt(1 - u)", "0", (0.0, 1.0))
    report = validate_knot_arc(arc)
    assert not report.closes_smoothly
    assert report.endpoint_in_plane == (False, False)
    assert report.tangent_orthogonal == (False, False)
    assert all(error.startswith("DomainError: ") for error in report.endpoint_errors)
    assert report.skipped_samples == 2


@pytest.mark.parametrize("doc", named_documents(), ids=lambda doc: doc.name)
def test_document_round_trip(doc):
    """Building a surface and writing it back reproduces the document"""
    spec = surface_from_document(doc)
    assert spec.name == doc.name
    assert spec.kind is doc.kind
    assert spec.to_document().model_dump(by_alias=True) == doc.model_dump(by_alias=True)


def test_completed_document_has_unit_speed():
    """x1 is integrated when the document asks for it"""
    doc = SurfaceDocument.load({
        "kind": "case2", "x2": "0", "x3": "a*cos(c*u)", "params": {"a": 0.5, "c": 1.0},
        "u_domain": [-1.2, 1.2], "unit_speed_complete": True,
    })
    spec = surface_from_document(doc)
    assert spec.unit_speed_complete
    for u in (-1.2, 0.0, 1.2):
        assert spec.curve.speed_squared(u) == pytest.approx(1.0, abs=1e-12)
    assert "x1" not in spec.sources


@pytest.mark.parametrize(
    "payload",
    [
        {"kind": "case2", "x1": "u", "x2": "0", "x3": "1", "phi": "u", "u_domain": [0, 1]},
        {"kind": "case1", "x2": "0", "phi": "u/2", "u_domain": [0, 1]},
        {"kind": "general", "x1": "u", "x2": "0", "x3": "1", "u_domain": [0, 1]},
        {"kind": "general", "x1": "u", "x2": "0", "x3": "1", "x4": "0", "u_domain": [1, 0]},
        {"kind": "torus", "x1": "u", "u_domain": [0, 1]},
        {"kind": "case1", "x1": "u", "x2": "0", "phi": "0", "u_domain": [0, 1], "colour": "red"},
    ],
)
def test_invalid_documents(payload):
    with pytest.raises(SpecError):
        SurfaceDocument.load(payload)


def test_document_lambda_alias():
    """lambda is spelled out in JSON and written back the same way"""
    doc = SurfaceDocument.load('{"kind": "case2", "x1": "0.6*u", "x2": "0", "x3": "1 + 0.64*u",'
                               ' "lambda": 0.75, "u_domain": [0, 1]}')
    assert doc.lam == 0.75
    assert '"lambda": 0.75' in doc.to_json()
