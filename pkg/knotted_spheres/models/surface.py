from __future__ import annotations

import math
from enum import StrEnum
from typing import Any, Dict, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..exceptions import SpecError

TWO_PI = 2.0 * math.pi


class SurfaceKind(StrEnum):
    """Parametrization family of a rotational surface."""
    GENERAL = "general"
    CASE1 = "case1"
    CASE2 = "case2"


class SurfaceDocument(BaseModel):
    """
    JSON form of a surface specification.

    Expression fields are strings in the profile-expression grammar. ``x1`` may
    be omitted when ``unit_speed_complete`` is set: it is then integrated from
    the remaining components so the profile curve has unit speed.
    """
    model_config = ConfigDict(
        validate_by_name=True,
        validate_by_alias=True,
        extra="forbid",
        frozen=True,
    )

    kind: SurfaceKind
    name: str = "surface"
    x1: Optional[str] = None
    x2: Optional[str] = None
    x3: Optional[str] = None
    x4: Optional[str] = None
    phi: Optional[str] = None
    lam: float = Field(0.0, alias="lambda")
    params: Dict[str, float] = Field(default_factory=dict)
    u_domain: Tuple[float, float]
    v_domain: Tuple[float, float] = (0.0, TWO_PI)
    unit_speed_complete: bool = False
    x1_offset: float = 0.0
    meta: Dict[str, Union[float, str]] = Field(default_factory=dict)

    @field_validator("u_domain", "v_domain")
    @classmethod
    def _ordered(cls, value: Tuple[float, float]) -> Tuple[float, float]:
        lo, hi = value
        if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
            raise ValueError(f"domain must satisfy min < max, got {value}")
        return value

    @model_validator(mode="after")
    def _fields_for_kind(self) -> "SurfaceDocument":
        required = {
            SurfaceKind.GENERAL: ("x2", "x3", "x4"),
            SurfaceKind.CASE1: ("x2", "phi"),
            SurfaceKind.CASE2: ("x2", "x3"),
        }[self.kind]
        missing = [name for name in required if getattr(self, name) is None]
        if self.x1 is None and not self.unit_speed_complete:
            missing.insert(0, "x1")
        if missing:
            raise ValueError(f"{self.kind.value} surface requires {', '.join(missing)}")
        forbidden = {
            SurfaceKind.GENERAL: ("phi",),
            SurfaceKind.CASE1: ("x3", "x4"),
            SurfaceKind.CASE2: ("x4", "phi"),
        }[self.kind]
        present = [name for name in forbidden if getattr(self, name) is not None]
        if present:
            raise ValueError(f"{self.kind.value} surface does not take {', '.join(present)}")
        return self

    @classmethod
    def load(cls, data: Union[str, bytes, Dict[str, Any]]) -> "SurfaceDocument":
        """Validate a JSON string or decoded mapping, raising SpecError on failure."""
        try:
            if isinstance(data, (str, bytes)):
                return cls.model_validate_json(data)
            return cls.model_validate(data)
        except ValueError as exc:
            raise SpecError(f"invalid surface document: {exc}") from exc

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)


class GridConfig(BaseModel):
    """Rectangular parameter grid, sampled row-major (u outer, v inner)."""
    model_config = ConfigDict(frozen=True)

    u_min: float
    u_max: float
    nu: int = Field(ge=2)
    v_min: float
    v_max: float
    nv: int = Field(ge=2)

    @model_validator(mode="after")
    def _ordered(self) -> "GridConfig":
        if not self.u_min < self.u_max or not self.v_min < self.v_max:
            raise ValueError("grid ranges must satisfy min < max")
        return self

    @classmethod
    def from_string(cls, text: str) -> "GridConfig":
        """
        Parse ``a:b:n,c:d:m`` into a grid.

        Example:
            >>> GridConfig.from_string("0:1:10,0:6.283:10").nu
            10
        """
        try:
            u_part, v_part = text.split(",")
            a, b, n = u_part.split(":")
            c, d, m = v_part.split(":")
            return cls(
                u_min=float(a), u_max=float(b), nu=int(n),
                v_min=float(c), v_max=float(d), nv=int(m),
            )
        except ValueError as exc:
            raise SpecError(f"invalid grid {text!r}, expected a:b:n,c:d:m ({exc})") from exc

    def u_values(self) -> list[float]:
        return _linspace(self.u_min, self.u_max, self.nu)

    def v_values(self) -> list[float]:
        return _linspace(self.v_min, self.v_max, self.nv)

    @property
    def size(self) -> int:
        return self.nu * self.nv


def _linspace(lo: float, hi: float, n: int) -> list[float]:
    # endpoints exact, interior points reproducible across platforms
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n - 1)] + [hi]
