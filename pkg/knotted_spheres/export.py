"""
Readers and writers for surface documents, sample tables and meshes.

Tables are CSV with ``\\n`` line endings and 17 significant digits, so
identical input gives byte-identical files. Meshes are Wavefront OBJ.
"""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space

from .exceptions import CorpusError, SpecError
from .knots import surface_from_document
from .models import GridConfig, MeshReport, PointReport, SkippedVertex, SurfaceDocument
from .patch import SurfaceSpec
from .sampling import LaplaceSample, PointSample

logger = logging.getLogger(__name__)

# columns 13-16 hold the components of H and column 17 holds <H, H>
SAMPLE_COLUMNS = (
    "u", "v", "X1", "X2", "X3", "X4",
    "E", "F", "G", "W2", "K_ext", "K_int",
    "H1", "H2", "H3", "H4", "H2",
    "defect", "gamma112", "gamma212", "h_inv", "k_inv",
)
LAPLACE_COLUMNS = ("u", "v", "L1", "L2", "L3", "L4", "status")
DEFAULT_PROJECTION = "drop-x4"


def format_float(value: Optional[float]) -> str:
    if value is None or math.isnan(value):
        return "nan"
    return format(float(value), ".17g")


def _writer(stream: IO[str]):
    return csv.writer(stream, lineterminator="\n")


# -- surface documents --------------------------------------------------------

def load_document(path: Path | str) -> SurfaceDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read surface document {path}: {exc.strerror}", path=str(path)) from exc
    return SurfaceDocument.load(text)


def load_spec(path: Path | str) -> SurfaceSpec:
    return surface_from_document(load_document(path))


def load_spec_dir(directory: Path | str) -> List[SurfaceSpec]:
    """Every ``*.json`` document of a directory, in file-name order."""
    directory = Path(directory)
    if not directory.is_dir():
        raise SpecError(f"not a directory: {directory}", path=str(directory))
    paths = sorted(directory.glob("*.json"))
    if not paths:
        raise CorpusError(f"no surface documents in {directory}", path=str(directory))
    specs = [load_spec(path) for path in paths]
    logger.info(f"Loaded {len(specs)} surfaces from {directory}")
    return specs


def write_documents(docs: Iterable[SurfaceDocument], directory: Path | str) -> List[Path]:
    """Write one ``<name>.json`` per document; names must be unique."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []
    for doc in sorted(docs, key=lambda d: d.name):
        path = directory / f"{doc.name}.json"
        if path in written:
            raise CorpusError(f"duplicate surface name {doc.name!r}")
        path.write_text(doc.to_json() + "\n", encoding="utf-8")
        written.append(path)
    logger.info(f"Wrote {len(written)} surface documents to {directory}")
    return written


# -- point and grid tables ----------------------------------------------------

def point_report(name: str, sample: PointSample) -> PointReport:
    if not sample.ok:
        return PointReport(name=name, u=sample.u, v=sample.v, skip_reason=sample.skip_reason)
    ff, K, net = sample.ff, sample.curvature, sample.net
    return PointReport(
        name=name,
        u=sample.u,
        v=sample.v,
        X=tuple(float(x) for x in sample.jet.X),
        E=ff.E, F=ff.F, G=ff.G, W2=ff.W2,
        K=K.K_ext, K_int=K.K_int, K_rot=K.K_rot,
        H=tuple(float(h) for h in K.H_vec),
        H2=K.H2,
        defect=net.defect,
        gamma112=net.gamma112,
        gamma212=net.gamma212,
        h_inv=net.h_inv,
        k_inv=net.k_inv,
    )


def sample_row(sample: PointSample) -> List[str]:
    if not sample.ok:
        return [format_float(sample.u), format_float(sample.v)] + ["nan"] * (len(SAMPLE_COLUMNS) - 2)
    ff, K, net = sample.ff, sample.curvature, sample.net
    values = [sample.u, sample.v, *sample.jet.X, ff.E, ff.F, ff.G, ff.W2, K.K_ext, K.K_int, *K.H_vec, K.H2,
              net.defect, net.gamma112, net.gamma212, net.h_inv, net.k_inv]
    return [format_float(x) for x in values]


def write_samples_csv(samples: Sequence[PointSample], stream: IO[str]) -> int:
    """
    Write grid samples as CSV, one row per sample in the given order.

    Skipped samples keep their (u, v) and have ``nan`` everywhere else.

    Returns:
        Number of data rows written
    """
    writer = _writer(stream)
    writer.writerow(SAMPLE_COLUMNS)
    for sample in samples:
        writer.writerow(sample_row(sample))
    return len(samples)


def write_laplace_csv(samples: Sequence[LaplaceSample], stream: IO[str]) -> int:
    writer = _writer(stream)
    writer.writerow(LAPLACE_COLUMNS)
    for s in samples:
        coords = [format_float(x) for x in s.point] if s.ok else ["nan"] * 4
        writer.writerow([format_float(s.u), format_float(s.v), *coords, "ok" if s.ok else s.skip_reason])
    return len(samples)


# -- meshes --------------------------------------------------------------------

def projection_matrix(mode: str = DEFAULT_PROJECTION) -> np.ndarray:
    """
    3x4 matrix taking points of E^4 to E^3.

    ``drop-xK`` deletes coordinate K. ``ortho:n1,n2,n3,n4`` projects along n
    onto an orthonormal basis of its orthogonal complement.

    Raises:
        SpecError: for an unknown mode or a zero direction
    """
    if mode.startswith("drop-x") and mode[6:] in ("1", "2", "3", "4"):
        keep = [i for i in range(4) if i != int(mode[6:]) - 1]
        return np.eye(4)[keep]
    if mode.startswith("ortho:"):
        try:
            n = np.array([float(x) for x in mode[6:].split(",")])
        except ValueError as exc:
            raise SpecError(f"invalid projection {mode!r}: {exc}") from exc
        if n.shape != (4,) or not np.all(np.isfinite(n)) or not np.linalg.norm(n) > 0.0:
            raise SpecError(f"invalid projection {mode!r}: expected a non-zero 4-vector")
        return null_space((n / np.linalg.norm(n))[None, :]).T
    raise SpecError(f"unknown projection {mode!r}, expected drop-x1..drop-x4 or ortho:n1,n2,n3,n4")


@dataclass(frozen=True, eq=False)
class Mesh:
    vertices: np.ndarray  # (nu*nv, 3)
    faces: List[Tuple[int, int, int]]  # 1-based
    report: MeshReport


def grid_faces(nu: int, nv: int) -> List[Tuple[int, int, int]]:
    """Two triangles per grid cell, 1-based vertex indices."""
    faces = []
    for i in range(nu - 1):
        for j in range(nv - 1):
            a = i * nv + j + 1
            b, c = a + 1, a + nv
            d = c + 1
            faces.append((a, c, d))
            faces.append((a, d, b))
    return faces


def build_mesh(
    name: str,
    samples: Sequence[PointSample],
    grid: GridConfig,
    mode: str = DEFAULT_PROJECTION,
) -> Mesh:
    """
    Project grid samples to E^3 and triangulate them.

    A skipped sample collapses onto the previous valid vertex in row-major
    order (the first valid one when none precedes it), so faces touching it
    degenerate instead of carrying NaN.

    Raises:
        CorpusError: when no sample is valid
    """
    if len(samples) != grid.size:
        raise ValueError(f"expected {grid.size} samples, got {len(samples)}")
    valid = [k for k, s in enumerate(samples) if s.ok]
    if not valid:
        raise CorpusError(f"no valid vertex on {name!r}")
    P = projection_matrix(mode)
    vertices = np.empty((len(samples), 3))
    skipped: List[SkippedVertex] = []
    last = valid[0]
    for k, sample in enumerate(samples):
        if sample.ok:
            last = k
            vertices[k] = P @ sample.jet.X
        else:
            skipped.append(SkippedVertex(index=k + 1, u=sample.u, v=sample.v, reason=sample.skip_reason,
                                         replaced_by=last + 1))
    for entry in skipped:
        vertices[entry.index - 1] = vertices[entry.replaced_by - 1]
    faces = grid_faces(grid.nu, grid.nv)
    if skipped:
        logger.warning(f"{len(skipped)} mesh vertices collapsed on {name!r}")
    return Mesh(
        vertices=vertices,
        faces=faces,
        report=MeshReport(name=name, projection=mode, vertices=len(vertices), faces=len(faces), skipped=skipped),
    )


def write_obj(mesh: Mesh, stream: IO[str]) -> None:
    stream.write(f"# {mesh.report.name} ({mesh.report.projection})\n")
    for x, y, z in mesh.vertices:
        stream.write(f"v {format_float(x)} {format_float(y)} {format_float(z)}\n")
    for a, b, c in mesh.faces:
        stream.write(f"f {a} {b} {c}\n")


def sidecar_path(out: Path | str) -> Path:
    out = Path(out)
    return out.with_name(out.name + ".report.json")
