import math

import pytest

from knotted_spheres.exceptions import SpecError
from knotted_spheres.models import GridConfig
from knotted_spheres.sampling import (
    evaluate_point,
    fit_grid,
    grid_points,
    laplace_grid,
    ordered_map,
    sample_grid,
    skip_reasons,
)


def test_grid_from_string():
    grid = GridConfig.from_string("0:1:11,0:6.283:4")
    assert (grid.u_min, grid.u_max, grid.nu) == (0.0, 1.0, 11)
    assert (grid.v_min, grid.v_max, grid.nv) == (0.0, 6.283, 4)
    assert grid.size == 44
    assert grid.u_values()[0] == 0.0
    assert grid.u_values()[-1] == 1.0
    assert grid.u_values()[5] == pytest.approx(0.5)


@pytest.mark.parametrize("text", ["0:1:10", "0:1:10,0:1", "a:1:10,0:1:10", "0:1:1,0:1:10", "1:0:10,0:1:10", ""])
def test_grid_from_string_rejects(text):
    with pytest.raises(SpecError):
        GridConfig.from_string(text)


def test_grid_points_are_row_major():
    """u is the outer loop, v the inner one"""
    grid = GridConfig(u_min=0.0, u_max=1.0, nu=2, v_min=0.0, v_max=2.0, nv=3)
    assert grid_points(grid) == [(0.0, 0.0), (0.0, 1.0), (0.0, 2.0), (1.0, 0.0), (1.0, 1.0), (1.0, 2.0)]


def test_fit_grid_defaults_to_the_domain(sphere):
    grid = fit_grid(sphere, resolution=7)
    assert (grid.u_min, grid.u_max) == sphere.u_domain
    assert (grid.v_min, grid.v_max) == sphere.v_domain
    assert grid.nu == grid.nv == 7


def test_fit_grid_clips_to_the_domain(sphere):
    """u is clipped; periodic v keeps the requested range"""
    requested = GridConfig(u_min=-1.0, u_max=1.0, nu=5, v_min=-3.0, v_max=9.0, nv=4)
    grid = fit_grid(sphere, requested)
    assert (grid.u_min, grid.u_max) == (0.1, 1.0)
    assert (grid.v_min, grid.v_max) == (-3.0, 9.0)
    assert (grid.nu, grid.nv) == (5, 4)

    assert fit_grid(sphere, requested, margin=0.05).u_min == pytest.approx(0.15)
    outside = GridConfig(u_min=2.0, u_max=3.0, nu=5, v_min=0.0, v_max=1.0, nv=4)
    assert fit_grid(sphere, outside) is None


def test_evaluate_point_skips_with_reason(sphere):
    """Library errors turn into skipped samples carrying the exception name"""
    sample = evaluate_point(sphere, 3.0, 0.0)
    assert not sample.ok
    assert sample.skip_reason.startswith("DomainError: ")
    assert sample.jet is None

    sample = evaluate_point(sphere, 1.0, 0.0)
    assert sample.ok
    assert sample.curvature.K_ext == pytest.approx(1.0, abs=1e-12)


def test_sample_grid_order_does_not_depend_on_workers(named):
    spec = named["case1-random-0"]
    grid = GridConfig(u_min=0.0, u_max=3.0, nu=6, v_min=0.0, v_max=2.0 * math.pi, nv=5)
    serial = sample_grid(spec, grid)
    threaded = sample_grid(spec, grid, workers=4)
    assert [(s.u, s.v) for s in serial] == grid_points(grid)
    assert [(s.u, s.v) for s in threaded] == grid_points(grid)
    assert [s.curvature.K_ext for s in serial] == [s.curvature.K_ext for s in threaded]


def test_skip_reasons_are_counted_by_type(sphere):
    grid = GridConfig(u_min=1.0, u_max=2.0, nu=3, v_min=0.0, v_max=1.0, nv=2)
    samples = sample_grid(sphere, grid)
    assert skip_reasons(samples) == {"DomainError": 2}


def test_laplace_grid_marks_degenerate_points(sphere, cone):
    grid = GridConfig(u_min=0.5, u_max=1.5, nu=3, v_min=0.0, v_max=1.0, nv=2)

    minus = laplace_grid(cone, grid)
    assert all(s.ok for s in minus)
    assert minus[0].point[0] == pytest.approx(0.5)

    plus = laplace_grid(sphere, grid, "plus1", workers=2)
    assert len(plus) == 6
    assert not any(s.ok for s in plus)
    assert all(s.skip_reason.startswith("DegenerateNet: ") for s in plus)


def test_ordered_map_keeps_input_order():
    items = list(range(20))
    assert ordered_map(lambda x: x * x, items, workers=5) == [x * x for x in items]
    assert ordered_map(lambda x: x, [], workers=5) == []
