"""
Built-in surface corpora.

Randomised instances are drawn from ``numpy.random.default_rng(seed)`` so the
same seed always yields the same documents.
"""
from __future__ import annotations

import logging
import math
from typing import Dict, List, Optional

import numpy as np

from . import config
from .knots import surface_from_document
from .models import SurfaceDocument, SurfaceKind
from .patch import SurfaceSpec

logger = logging.getLogger(__name__)

RANDOM_CASE1 = 5
RANDOM_CASE2 = 5
COR5_CONSTANTS = (0.5, 1.0, 2.0)

# c -> (amplitude, u_domain); amplitude * c < 1 keeps the radicand positive
_SPHERICAL = {0.5: (1.0, (-2.0, 2.0)), 1.0: (0.5, (-1.2, 1.2)), 2.0: (0.3, (-0.7, 0.7))}
# c -> u_domain with c * exp(c u) < 1
_PSEUDO = {0.5: (-2.0, 1.0), 1.0: (-2.0, -0.3), 2.0: (-2.5, -0.6)}


def _doc(**fields) -> SurfaceDocument:
    return SurfaceDocument.load(fields)


def _draw(rng: np.random.Generator, lo: float, hi: float) -> float:
    # rounded so documents print compactly and reload bit-identically
    return round(float(rng.uniform(lo, hi)), 6)


def random_case1(rng: np.random.Generator, index: int) -> SurfaceDocument:
    """phi = a sin(bu) + cu with |phi'| <= 0.9, x2 = e sin u, x1 completed."""
    params = {
        "a": _draw(rng, 0.1, 0.4),
        "b": _draw(rng, 0.5, 1.5),
        "c": _draw(rng, -0.3, 0.3),
        "e": _draw(rng, 0.0, 0.2),
    }
    return _doc(
        kind=SurfaceKind.CASE1, name=f"case1-random-{index}",
        phi="a*sin(b*u) + c*u", x2="e*sin(u)", params=params,
        u_domain=(0.0, 3.0), unit_speed_complete=True,
        meta={"family": "case1-random"},
    )


def random_case2(rng: np.random.Generator, index: int) -> SurfaceDocument:
    """x3 = p + q sin(ru) > 0 with a random lambda line, x1 completed."""
    params = {
        "p": _draw(rng, 1.0, 2.0),
        "q": _draw(rng, 0.1, 0.4),
        "r": _draw(rng, 0.5, 1.5),
    }
    return _doc(
        kind=SurfaceKind.CASE2, name=f"case2-random-{index}",
        x2="0", x3="p + q*sin(r*u)", params=params, **{"lambda": _draw(rng, -1.0, 1.0)},
        u_domain=(0.0, 3.0), unit_speed_complete=True,
        meta={"family": "case2-random"},
    )


def named_documents() -> List[SurfaceDocument]:
    """Deterministic instances with known curvature."""
    docs = [
        _doc(
            kind=SurfaceKind.CASE1, name="case1-half-angle",
            x1="sqrt(3)/2*u", x2="0", phi="u/2", u_domain=(0.0, 3.0),
            meta={"family": "case1-half-angle"},
        ),
        _doc(
            kind=SurfaceKind.CASE1, name="clifford-case1",
            x1="sin(u)", x2="cos(u)", phi="0", u_domain=(0.0, 2.0 * math.pi),
            meta={"family": "clifford"},
        ),
        _doc(
            kind=SurfaceKind.CASE2, name="sphere",
            x1="-cos(u)", x2="0", x3="sin(u)", u_domain=(0.2, 1.4),
            meta={"family": "sphere", "K": 1.0, "H2": 1.0},
        ),
        _doc(
            kind=SurfaceKind.CASE2, name="plane",
            x1="1", x2="0", x3="u", u_domain=(0.5, 2.0),
            meta={"family": "plane", "K": 0.0, "H2": 0.0},
        ),
        _doc(
            kind=SurfaceKind.CASE2, name="cone",
            x1="u*c + d", x2="0", x3="u*s", params={"c": 0.8, "s": 0.6, "d": 0.5},
            u_domain=(0.5, 2.0), meta={"family": "cone"},
        ),
    ]
    for c in COR5_CONSTANTS:
        docs.append(_doc(
            kind=SurfaceKind.CASE2, name=f"cor5-pseudo-c{c:g}",
            x2="0", x3="exp(c*u)", params={"c": c}, u_domain=_PSEUDO[c],
            unit_speed_complete=True, meta={"family": "cor5-pseudo", "c": c},
        ))
        amplitude, domain = _SPHERICAL[c]
        docs.append(_doc(
            kind=SurfaceKind.CASE2, name=f"cor5-spher-c{c:g}",
            x2="0", x3="a*cos(c*u)", params={"a": amplitude, "c": c}, u_domain=domain,
            unit_speed_complete=True, meta={"family": "cor5-spher", "c": c},
        ))
    docs.append(_doc(
        kind=SurfaceKind.CASE2, name="cor5-flat-a0.5",
        x2="0", x3="a*u + b", params={"a": 0.5, "b": 1.0}, u_domain=(0.0, 2.0),
        unit_speed_complete=True, meta={"family": "cor5-flat"},
    ))
    docs.append(_doc(
        kind=SurfaceKind.CASE2, name="cor5-flat-a0.3",
        x2="0", x3="a*u + b", params={"a": 0.3, "b": 0.5}, u_domain=(0.0, 2.0),
        unit_speed_complete=True, meta={"family": "cor5-flat"}, **{"lambda": 0.5},
    ))
    docs += [
        _doc(
            kind=SurfaceKind.GENERAL, name="clifford-torus",
            x1="cos(u)", x2="sin(u)", x3="1", x4="0", u_domain=(0.0, 2.0 * math.pi),
            meta={"family": "clifford", "K": 0.0, "H2": 0.5},
        ),
        _doc(
            kind=SurfaceKind.GENERAL, name="general-sphere",
            x1="-cos(u)", x2="0", x3="sin(u)", x4="0", u_domain=(0.2, 1.4),
            meta={"family": "sphere", "K": 1.0, "H2": 1.0},
        ),
        _doc(
            kind=SurfaceKind.GENERAL, name="cylinder",
            x1="u", x2="0", x3="1", x4="0", u_domain=(0.0, 2.0),
            meta={"family": "cylinder", "K": 0.0},
        ),
        _doc(
            kind=SurfaceKind.GENERAL, name="planar-line",
            x1="0", x2="0", x3="u", x4="1", u_domain=(0.5, 2.0),
            meta={"family": "planar-line", "K": 0.0},
        ),
        _doc(
            kind=SurfaceKind.GENERAL, name="skew",
            x1="0.6*u", x2="0", x3="0.8 + 0.1*sin(u)", x4="0.1*cos(u)", u_domain=(0.0, 3.0),
            meta={"family": "skew"},
        ),
    ]
    return docs


def builtin_documents(seed: Optional[int] = None) -> List[SurfaceDocument]:
    """Random Case I, random Case II and the named instances, in that order."""
    seed = config.SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    docs = [random_case1(rng, i) for i in range(RANDOM_CASE1)]
    docs += [random_case2(rng, i) for i in range(RANDOM_CASE2)]
    docs += named_documents()
    logger.info(f"Built corpus of {len(docs)} documents with seed {seed:#x}")
    return docs


def builtin_corpus(seed: Optional[int] = None) -> List[SurfaceSpec]:
    return [surface_from_document(doc) for doc in builtin_documents(seed)]


def family(spec: SurfaceSpec) -> str:
    return str(spec.meta.get("family", ""))


def by_name(specs: List[SurfaceSpec]) -> Dict[str, SurfaceSpec]:
    return {spec.name: spec for spec in specs}
