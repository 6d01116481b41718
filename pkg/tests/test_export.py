import io

import numpy as np
import pytest

from knotted_spheres.corpus import named_documents
from knotted_spheres.exceptions import CorpusError, SpecError
from knotted_spheres.export import (
    build_mesh,
    format_float,
    grid_faces,
    load_document,
    load_spec_dir,
    point_report,
    projection_matrix,
    sidecar_path,
    write_documents,
    write_samples_csv,
)
from knotted_spheres.models import GridConfig
from knotted_spheres.sampling import evaluate_point, sample_grid


def test_format_float():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(2.0) == "2"
    assert format_float(None) == "nan"
    assert format_float(float("nan")) == "nan"


def test_drop_projection_deletes_one_coordinate():
    P = projection_matrix("drop-x2")
    assert P.shape == (3, 4)
    assert np.array_equal(P @ np.array([1.0, 2.0, 3.0, 4.0]), np.array([1.0, 3.0, 4.0]))


def test_ortho_projection_annihilates_the_direction():
    P = projection_matrix("ortho:1,1,0,0")
    assert P.shape == (3, 4)
    assert np.allclose(P @ np.array([1.0, 1.0, 0.0, 0.0]), 0.0)
    assert np.allclose(P @ P.T, np.eye(3))


@pytest.mark.parametrize("mode", ["drop-x0", "drop-x5", "ortho:0,0,0,0", "ortho:1,2,3", "ortho:a,b,c,d", "iso"])
def test_bad_projection_modes(mode):
    with pytest.raises(SpecError):
        projection_matrix(mode)


def test_grid_faces():
    faces = grid_faces(3, 4)
    assert len(faces) == 2 * 2 * 3
    assert faces[:2] == [(1, 5, 6), (1, 6, 2)]
    assert max(max(f) for f in faces) == 12
    assert grid_faces(1, 4) == []


def test_build_mesh_without_valid_vertices(sphere):
    grid = GridConfig(u_min=2.0, u_max=3.0, nu=2, v_min=0.0, v_max=1.0, nv=2)
    with pytest.raises(CorpusError):
        build_mesh("sphere", sample_grid(sphere, grid), grid)


def test_build_mesh_first_vertex_skipped(sphere):
    """A leading skipped vertex collapses onto the first valid one"""
    grid = GridConfig(u_min=0.0, u_max=1.0, nu=2, v_min=0.0, v_max=1.0, nv=2)
    mesh = build_mesh("sphere", sample_grid(sphere, grid), grid)
    assert [(v.index, v.replaced_by) for v in mesh.report.skipped] == [(1, 3), (2, 3)]
    assert np.array_equal(mesh.vertices[0], mesh.vertices[2])
    assert np.all(np.isfinite(mesh.vertices))


def test_samples_csv_skipped_rows(sphere):
    grid = GridConfig(u_min=1.0, u_max=2.0, nu=2, v_min=0.0, v_max=1.0, nv=2)
    stream = io.StringIO()
    assert write_samples_csv(sample_grid(sphere, grid), stream) == 4
    header, good, _, bad, _ = stream.getvalue().splitlines()
    assert len(good.split(",")) == len(header.split(","))
    assert bad.split(",")[:3] == ["2", "0", "nan"]


def test_point_report(sphere):
    report = point_report("sphere", evaluate_point(sphere, 1.0, 0.0))
    assert report.skip_reason is None
    assert report.K == pytest.approx(1.0, abs=1e-12)
    assert len(report.X) == 4 and len(report.H) == 4

    skipped = point_report("sphere", evaluate_point(sphere, 3.0, 0.0))
    assert skipped.K is None
    assert skipped.skip_reason.startswith("DomainError")


def test_documents_round_trip_through_a_directory(tmp_path):
    docs = named_documents()
    paths = write_documents(docs, tmp_path)
    assert {p.name for p in paths} == {f"{d.name}.json" for d in docs}
    assert load_document(tmp_path / "sphere.json").name == "sphere"
    assert {s.name for s in load_spec_dir(tmp_path)} == {d.name for d in docs}


def test_duplicate_names_are_rejected(tmp_path):
    doc = named_documents()[0]
    with pytest.raises(CorpusError):
        write_documents([doc, doc], tmp_path)


def test_spec_dir_errors(tmp_path):
    with pytest.raises(CorpusError):
        load_spec_dir(tmp_path)
    with pytest.raises(SpecError):
        load_spec_dir(tmp_path / "missing")
    with pytest.raises(SpecError):
        load_document(tmp_path / "missing.json")


def test_sidecar_path(tmp_path):
    assert sidecar_path(tmp_path / "m.obj") == tmp_path / "m.obj.report.json"
