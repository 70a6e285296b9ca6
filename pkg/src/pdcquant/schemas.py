"""Request/response models for the HTTP service and the CLI.

The request models own the translation from wire-level fields (family
name, intensities, phases) to domain objects, so the service endpoints
and the command-line client build configurations identically.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from .scan import AxisSpec, ScanResult, ScanSpec
from .seeds import (PdcParams, Seed, SeedFamily, SeededPdcConfig,
                    coherent_seed, squeezed_seed, thermal_seed, vacuum_seed)

FamilyName = Literal["vacuum", "thermal", "coherent", "squeezed"]
ScanFamilyName = Literal["thermal", "coherent", "squeezed"]


def build_config(family: SeedFamily, s_a: float, s_b: float, n_pdc: float,
                 phase_r: float = 0.0, zeta_a: float = 0.0,
                 zeta_b: float = 0.0, phi: float = 0.0) -> SeededPdcConfig:
    """Domain configuration from wire-level fields.

    ``phase_r`` is the coherent interference phase r; the signal seed
    carries ``phase_r + phi`` so r is realized for any pump phase.
    Squeezed arms take their orientations from ``zeta_a``/``zeta_b``.
    """
    pdc = PdcParams(n_pdc, phi)
    if family is SeedFamily.VACUUM:
        return SeededPdcConfig(vacuum_seed(), vacuum_seed(), pdc)
    if family is SeedFamily.THERMAL:
        return SeededPdcConfig(thermal_seed(s_a), thermal_seed(s_b), pdc)
    if family is SeedFamily.COHERENT:
        return SeededPdcConfig(coherent_seed(s_a, phase=phase_r + phi),
                               coherent_seed(s_b), pdc)
    return SeededPdcConfig(squeezed_seed(s_a, phase=zeta_a),
                           squeezed_seed(s_b, phase=zeta_b), pdc)


class PointRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: FamilyName
    s_a: float = Field(0.0, ge=0.0, description="seed intensity, beam A")
    s_b: float = Field(0.0, ge=0.0, description="seed intensity, beam B")
    n_pdc: float = Field(..., ge=0.0, description="pair gain sinh^2|kappa|")
    phase_r: float = Field(0.0, description="coherent interference phase")
    zeta_a: float = Field(0.0, description="squeezed orientation, beam A")
    zeta_b: float = Field(0.0, description="squeezed orientation, beam B")
    phi: float = Field(0.0, description="pump phase")

    def to_config(self) -> SeededPdcConfig:
        return build_config(SeedFamily(self.family), self.s_a, self.s_b,
                            self.n_pdc, self.phase_r, self.zeta_a,
                            self.zeta_b, self.phi)


class QuantifyResponse(BaseModel):
    family: FamilyName
    s_a: float
    s_b: float
    n_pdc: float
    phase_r: Optional[float]
    mean_a: float
    mean_b: float
    mean_sum: float
    var_diff: float
    p_ssn: float
    p_lee: float
    p_ent: Optional[float]
    d_minus: float
    is_ssn: bool
    is_lee_nonclassical: bool
    is_entangled: bool
    label: str


class ThresholdRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: FamilyName
    s_a: float = Field(0.0, ge=0.0)
    s_b: float = Field(0.0, ge=0.0)
    phase_r: float = 0.0

    def to_seeds(self) -> tuple[Seed, Seed, float]:
        """Seeds plus the pump phase at which phase_r is realized."""
        cfg = build_config(SeedFamily(self.family), self.s_a, self.s_b,
                           0.0, self.phase_r)
        return cfg.seed_a, cfg.seed_b, cfg.pdc.phi


class ThresholdValue(BaseModel):
    value: float
    always: bool


class ThresholdResponse(BaseModel):
    family: FamilyName
    s_a: float
    s_b: float
    phase_r: Optional[float]
    n_ssn: ThresholdValue
    n_lee: ThresholdValue
    n_ent: Optional[ThresholdValue]


class AxisModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    start: float
    stop: float
    count: int = Field(..., ge=1)

    def to_axis(self) -> AxisSpec:
        return AxisSpec(self.start, self.stop, self.count)

    @classmethod
    def from_axis(cls, axis: AxisSpec) -> "AxisModel":
        return cls(start=axis.start, stop=axis.stop, count=axis.count)


class ScanRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: ScanFamilyName
    s_a: AxisModel
    s_b: AxisModel
    n_pdc: AxisModel
    phase_r: float = 0.0

    def to_spec(self) -> ScanSpec:
        return ScanSpec(SeedFamily(self.family), self.s_a.to_axis(),
                        self.s_b.to_axis(), self.n_pdc.to_axis(),
                        self.phase_r)


class ScanPointModel(BaseModel):
    s_a: float
    s_b: float
    n_pdc: float
    phase_r: Optional[float]
    p_ssn: Optional[float]
    p_lee: Optional[float]
    p_ent: Optional[float]
    d_minus: float
    label: str


class ScanSummary(BaseModel):
    total_points: int
    label_counts: dict[str, int]


class ScanResponse(BaseModel):
    family: ScanFamilyName
    axes: dict[str, AxisModel]
    phase_r: Optional[float]
    points: list[ScanPointModel]
    summary: ScanSummary

    @classmethod
    def from_result(cls, result: ScanResult) -> "ScanResponse":
        spec = result.spec
        return cls(
            family=spec.family.value,
            axes={"s_a": AxisModel.from_axis(spec.s_a),
                  "s_b": AxisModel.from_axis(spec.s_b),
                  "n_pdc": AxisModel.from_axis(spec.n_gain)},
            phase_r=(spec.phase_r
                     if spec.family is SeedFamily.COHERENT else None),
            points=[ScanPointModel(
                s_a=p.s_a, s_b=p.s_b, n_pdc=p.n_gain, phase_r=p.phase_r,
                p_ssn=p.p_ssn, p_lee=p.p_lee, p_ent=p.p_ent,
                d_minus=p.d_minus, label=p.label) for p in result.points],
            summary=ScanSummary(total_points=len(result.points),
                                label_counts=result.label_counts),
        )


class VerifyRequest(PointRequest):
    dim: int = Field(25, ge=3, description="initial Fock truncation")
    tail_bound: float = Field(1e-8, gt=0.0)
    auto_dim: bool = Field(True, description="escalate dim until the "
                                             "tail bound is met")


class VerifyRow(BaseModel):
    quantity: str
    closed: float
    oracle: float
    abs_diff: float
    tolerance: float
    passed: bool


class VerifyResponse(BaseModel):
    family: FamilyName
    s_a: float
    s_b: float
    n_pdc: float
    phase_r: Optional[float]
    dim_used: int
    tail_mass: float
    passed: bool
    max_abs_diff: float
    rows: list[VerifyRow]


class HealthResponse(BaseModel):
    status: str
    version: str
