import math

import numpy as np
import pytest

from knotted_spheres.exceptions import DegenerateNet
from knotted_spheres.geom import christoffel, first_form
from knotted_spheres.models import GridConfig
from knotted_spheres.nets import (
    LaplaceDirection,
    hidden_precondition,
    is_conjugate,
    laplace_minus,
    laplace_plus,
    laplace_point,
    net_sample,
    prop6_defect,
)
from knotted_spheres.patch import surface_jet


def net_at(spec, u, v):
    jet = surface_jet(spec, u, v)
    ff = first_form(jet)
    return jet, ff, net_sample(jet, ff, christoffel(ff))


def test_sphere_net_is_conjugate(sphere):
    """Meridians and parallels form a conjugate net with vanishing invariants"""
    _, _, sample = net_at(sphere, 0.7, 2.0)
    assert sample.defect < 1e-12
    assert sample.gamma112 == pytest.approx(0.0, abs=1e-15)
    assert sample.gamma212 == pytest.approx(1.0 / math.tan(0.7), abs=1e-13)
    assert sample.h_inv == pytest.approx(0.0, abs=1e-12)
    assert sample.k_inv == pytest.approx(0.0, abs=1e-12)


def test_case1_net_is_not_conjugate(half_angle):
    """With phi = u/2 the mixed partial has a normal part of length 1/2"""
    _, _, sample = net_at(half_angle, 1.0, 0.0)
    assert sample.defect == pytest.approx(0.5, abs=1e-14)


def test_planar_line_invariants(named):
    """(0, 0, u, 1) has Gamma^1_12 = Gamma^2_12 = 1/u, h = -2/u^2 and k = -1/u^2"""
    spec = named["planar-line"]
    for u in (0.8, 1.0, 1.6):
        _, ff, sample = net_at(spec, u, 0.9)
        assert sample.defect < 1e-12
        assert sample.gamma112 == pytest.approx(1.0 / u, abs=1e-13)
        assert sample.gamma212 == pytest.approx(1.0 / u, abs=1e-13)
        assert sample.h_inv == pytest.approx(-2.0 / u ** 2, abs=1e-12)
        assert sample.k_inv == pytest.approx(-1.0 / u ** 2, abs=1e-12)
        assert hidden_precondition(ff) == pytest.approx(2.0 * u, abs=1e-13)


def test_is_conjugate_report(sphere, half_angle):
    grid = GridConfig(u_min=0.2, u_max=1.4, nu=4, v_min=0.0, v_max=6.0, nv=3)

    report = is_conjugate(sphere, grid, 1e-9)
    assert report.conjugate
    assert report.samples == 12
    assert report.skipped == 0
    assert report.max_defect < 1e-12

    report = is_conjugate(half_angle, grid, 1e-9)
    assert not report.conjugate
    assert report.max_defect == pytest.approx(0.5, abs=1e-14)
    assert report.location is not None


def test_is_conjugate_counts_skipped_points(sphere):
    """Points outside the domain are skipped, never fatal"""
    grid = GridConfig(u_min=1.0, u_max=2.0, nu=3, v_min=0.0, v_max=1.0, nv=2)
    report = is_conjugate(sphere, grid, 1e-9)
    assert report.samples == 4
    assert report.skipped == 2
    assert report.conjugate


def test_laplace_minus_of_sphere(sphere):
    """X - Xu / Gamma^2_12 collapses the sphere onto the point (-1/cos u, 0, 0, 0)"""
    for v in (0.0, 1.0, 4.0):
        point = laplace_point(sphere, math.pi / 3, v, LaplaceDirection.MINUS)
        np.testing.assert_allclose(point, [-2.0, 0.0, 0.0, 0.0], atol=1e-13)


def test_laplace_minus_of_cone(cone):
    """A cone's minus transform is its apex"""
    for u in (0.5, 1.1, 2.0):
        point = laplace_point(cone, u, 2.5, "minus1")
        np.testing.assert_allclose(point, [0.5, 0.0, 0.0, 0.0], atol=1e-14)


def test_laplace_plus_degenerates_on_case2(sphere):
    """Gamma^1_12 = 0 on Case II surfaces, so X_1 is undefined"""
    with pytest.raises(DegenerateNet) as exc_info:
        laplace_point(sphere, 0.7, 0.0, LaplaceDirection.PLUS)
    assert exc_info.value.symbol == "gamma112"


def test_laplace_divisions_use_eps(named):
    """A denominator below eps counts as zero"""
    jet = surface_jet(named["planar-line"], 1.0, 0.0)
    ch = christoffel(first_form(jet))
    np.testing.assert_allclose(laplace_plus(jet, ch), jet.X - jet.Xv, atol=1e-14)
    np.testing.assert_allclose(laplace_minus(jet, ch), jet.X - jet.Xu, atol=1e-14)
    with pytest.raises(DegenerateNet):
        laplace_plus(jet, ch, eps=2.0)


def test_prop6_defect_on_planar_line(named):
    """On the planar line d/du X_1 stays parallel to Xv"""
    spec = named["planar-line"]
    for u in (0.8, 1.2, 1.7):
        assert prop6_defect(spec, u, 0.4) < 1e-4


def test_prop6_defect_needs_gamma112(sphere):
    with pytest.raises(DegenerateNet):
        prop6_defect(sphere, 0.7, 0.0)


def test_hidden_precondition_vanishes_on_orthogonal_nets(sphere, clifford_torus):
    for spec in (sphere, clifford_torus):
        _, ff, _ = net_at(spec, 1.0, 0.3)
        assert hidden_precondition(ff) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("name", ["planar-line", "skew", "case1-random-0", "case1-half-angle", "cone"])
def test_laplace_invariants_match_differenced_christoffel_symbols(named, name):
    """h and k agree with central differences of the Gamma^1_12 and Gamma^2_12 fields"""
    spec = named[name]
    lo, hi = spec.u_domain
    u, v, step = lo + 0.4 * (hi - lo), 0.7, 1e-5

    def gammas(uu, vv):
        ff = first_form(surface_jet(spec, uu, vv))
        ch = christoffel(ff)
        return ch.g112, ch.g212

    _, _, sample = net_at(spec, u, v)
    g112, g212 = gammas(u, v)
    g112_u = (gammas(u + step, v)[0] - gammas(u - step, v)[0]) / (2 * step)
    g212_v = (gammas(u, v + step)[1] - gammas(u, v - step)[1]) / (2 * step)
    assert sample.h_inv == pytest.approx(g112_u - g112 * g212, abs=1e-6)
    assert sample.k_inv == pytest.approx(g212_v - g112 * g212, abs=1e-6)
