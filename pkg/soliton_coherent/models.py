"""
Validated schemas: run configuration, soliton parameters, state families and
verification reports.
"""
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .config import Config
from .utils import format_number, parse_complex, parse_float_list

FamilyName = Literal["psi", "xi_free", "rho", "phi", "eta"]
DefinitionClass = Literal["Definition1", "Definition2"]

FINITE_WITNESS_NOTE = (
    "moment identities certified for n,k <= n_max only; "
    "continuity over all finite holomorphic functions is not tested"
)


def _check_alphas(values: List[float]) -> List[float]:
    values = sorted(float(v) for v in values)
    if not values:
        raise ValueError("at least one alpha is required")
    if any(not np.isfinite(v) or v <= 0 for v in values):
        raise ValueError(f"alphas must be finite and strictly positive, got {values}")
    if any(b == a for a, b in zip(values, values[1:])):
        raise ValueError(f"alphas must be pairwise distinct, got {values}")
    return values


class Tolerances(BaseModel):
    measure: float = Field(default=Config.TOL_MEASURE, gt=0, description="Definition-1 moment tolerance")
    functional: float = Field(default=Config.TOL_FUNCTIONAL, gt=0, description="Definition-2 moment tolerance")
    darboux: float = Field(default=Config.TOL_DARBOUX, gt=0, description="Darboux identity tolerance")


class OutputSpec(BaseModel):
    format: Literal["csv", "json"] = Field(default="csv", description="Artifact format")
    path: str = Field(default="-", description="Output path, '-' for stdout")


class RunConfig(BaseModel):
    """Run configuration; echoed verbatim into every report."""
    alphas: List[float] = Field(default_factory=lambda: [1.0], description="Bound-state parameters alpha_k")
    shifts: Optional[List[float]] = Field(None, description="Translation parameters c_j")
    n_max: int = Field(default=Config.N_MAX, ge=0, description="Basis truncation")
    quad_order: int = Field(default=Config.QUAD_ORDER, ge=1, le=200, description="Gauss-Hermite order")
    grid: str = Field(default=Config.GRID, description="x-grid as min:max:points")
    p_max: float = Field(default=Config.P_MAX, gt=0, description="Half width of the p window")
    p_points: int = Field(default=Config.P_POINTS, ge=3, description="Points of the p window")
    z: complex = Field(default=0j, description="Coherent-state label")
    state: FamilyName = Field(default="psi", description="Coherent-state family")
    rep: Literal["position", "momentum"] = Field(default="position", description="Representation")
    t: float = Field(default=0.0, description="Time slice")
    tolerances: Tolerances = Field(default_factory=Tolerances)
    output: OutputSpec = Field(default_factory=OutputSpec)

    @field_validator("alphas", mode="before")
    @classmethod
    def parse_alphas(cls, value):
        return _check_alphas(parse_float_list(value))

    @field_validator("shifts", mode="before")
    @classmethod
    def parse_shifts(cls, value):
        return None if value is None else parse_float_list(value)

    @field_validator("z", mode="before")
    @classmethod
    def parse_z(cls, value):
        return parse_complex(value)

    @field_validator("grid")
    @classmethod
    def check_grid(cls, value: str) -> str:
        from .basis import UniformGrid
        UniformGrid.parse(value)
        return value

    @model_validator(mode="after")
    def check_sizes(self) -> "RunConfig":
        degree = 2 * len(self.alphas)
        if self.n_max < degree:
            raise ValueError(f"n_max={self.n_max} is below the degree {degree} of f")
        if self.shifts is not None and len(self.shifts) != len(self.alphas):
            raise ValueError("shifts must have one entry per alpha")
        return self

    def soliton_spec(self) -> "SolitonSpec":
        return SolitonSpec(alphas=tuple(self.alphas), shifts=tuple(self.shifts or ()))

    def echo(self) -> Dict[str, Any]:
        return {
            "alphas": [format_number(a) for a in self.alphas],
            "shifts": [format_number(c) for c in (self.shifts or [0.0] * len(self.alphas))],
            "n_max": self.n_max,
            "quad_order": self.quad_order,
            "grid": self.grid,
            "p_max": format_number(self.p_max),
            "p_points": self.p_points,
            "z": format_number(self.z),
            "state": self.state,
            "rep": self.rep,
            "t": format_number(self.t),
            "tolerances": {
                "measure": format_number(self.tolerances.measure),
                "functional": format_number(self.tolerances.functional),
                "darboux": format_number(self.tolerances.darboux),
            },
            "output": {"format": self.output.format},
        }


class SolitonSpec(BaseModel):
    """alpha_1 < ... < alpha_N > 0 and shifts c_j (zero when omitted)."""
    model_config = ConfigDict(frozen=True)

    alphas: Tuple[float, ...] = Field(..., description="Strictly increasing positive alphas")
    shifts: Tuple[float, ...] = Field(default=(), description="Shifts c_j of the transformation functions")

    @field_validator("alphas", mode="before")
    @classmethod
    def check_alphas(cls, value):
        values = [float(v) for v in value]
        if list(values) != _check_alphas(values):
            raise ValueError(f"alphas must be strictly increasing, got {values}")
        return tuple(values)

    @model_validator(mode="before")
    @classmethod
    def fill_shifts(cls, data):
        if isinstance(data, dict) and not data.get("shifts") and data.get("alphas") is not None:
            data = {**data, "shifts": (0.0,) * len(data["alphas"])}
        return data

    @model_validator(mode="after")
    def check_shifts(self) -> "SolitonSpec":
        if len(self.shifts) != len(self.alphas):
            raise ValueError("shifts must have one entry per alpha")
        return self

    @property
    def order(self) -> int:
        return len(self.alphas)


class StateFamily(BaseModel):
    family: FamilyName = Field(..., description="Coherent-state family")
    alphas: Tuple[float, ...] = Field(default=(), description="Symbol parameters; empty means f = 1")
    shifts: Tuple[float, ...] = Field(default=(), description="Darboux shifts")
    claimed: Optional[DefinitionClass] = Field(None, description="Class the family is expected to satisfy")

    @model_validator(mode="after")
    def check_family(self) -> "StateFamily":
        if self.family in ("phi", "eta") and not self.alphas:
            raise ValueError(f"family {self.family} needs at least one alpha")
        if self.alphas:
            _check_alphas(list(self.alphas))
        return self

    def soliton_spec(self) -> SolitonSpec:
        return SolitonSpec(alphas=tuple(sorted(self.alphas)), shifts=self.shifts)


class MomentEntry(BaseModel):
    n: int
    k: int
    lhs: float
    rhs: float
    residual: float


class MomentReport(BaseModel):
    """Moment identity lhs_nk = rhs_nk on n, k <= n_max."""
    suite: str
    alphas: List[float]
    n_max: int
    max_residual: float
    entries: List[MomentEntry]
    certificates: Dict[str, Any] = Field(default_factory=dict)

    def to_payload(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "alphas": [format_number(a) for a in self.alphas],
            "n_max": self.n_max,
            "max_residual": format_number(self.max_residual),
            "entries": [
                {
                    "n": e.n, "k": e.k,
                    "lhs": format_number(e.lhs), "rhs": format_number(e.rhs),
                    "residual": format_number(e.residual),
                }
                for e in self.entries
            ],
            "certificates": self.certificates,
        }


class CheckResult(BaseModel):
    name: str
    anchor: str = Field(..., description="The identity the check realizes")
    max_residual: float
    tolerance: float
    passed: bool

    @classmethod
    def compare(cls, name: str, anchor: str, residual: float, tolerance: float) -> "CheckResult":
        residual = float(residual)
        return cls(name=name, anchor=anchor, max_residual=residual, tolerance=tolerance,
                   passed=bool(np.isfinite(residual) and residual <= tolerance))

    def to_payload(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "max_residual": format_number(self.max_residual),
            "tolerance": format_number(self.tolerance),
            "pass": self.passed,
        }


class VerificationReport(BaseModel):
    suite: str
    config_echo: Dict[str, Any]
    checks: List[CheckResult]

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_payload(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "config_echo": self.config_echo,
            "checks": [c.to_payload() for c in self.checks],
            "overall_pass": self.overall_pass,
        }


class ClassificationReport(BaseModel):
    family: FamilyName
    claimed: Optional[DefinitionClass] = None
    classification: Literal["Definition1", "Definition2", "neither"]
    t: float = 0.0
    evidence: List[CheckResult]
    note: str = FINITE_WITNESS_NOTE

    @property
    def matches_claim(self) -> bool:
        return self.claimed is None or self.claimed == self.classification

    def to_payload(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "claimed": self.claimed,
            "classification": self.classification,
            "t": format_number(self.t),
            "evidence": [c.to_payload() for c in self.evidence],
            "note": self.note,
        }
