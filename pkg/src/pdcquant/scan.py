"""Region scans over seed intensities and pair gain.

Each grid point is labeled by the strongest nonclassicality evidence it
shows: ``LEE`` (difference variance beats the full classical bound),
``SSN`` (sub-shot-noise only), ``ENT_ONLY`` (Gaussian test certifies
entanglement but photon counting does not), else ``CLASSICAL``.  Results
serialize to CSV (fixed column set, ``%.12g``, deterministic bytes) and
JSON (full float precision).
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

from .covariance import is_entangled_gaussian
from .errors import UndefinedQuantifierError
from .quantifiers import QuantifierReport, classify
from .seeds import (PdcParams, Seed, SeedFamily, SeededPdcConfig,
                    coherent_seed, squeezed_seed, thermal_seed)

LABEL_LEE = "LEE"
LABEL_SSN = "SSN"
LABEL_ENT_ONLY = "ENT_ONLY"
LABEL_CLASSICAL = "CLASSICAL"
LABELS = (LABEL_LEE, LABEL_SSN, LABEL_ENT_ONLY, LABEL_CLASSICAL)

CSV_COLUMNS = ("family", "s_a", "s_b", "n_pdc", "phase_r", "p_ssn",
               "p_lee", "p_ent", "d_minus", "label")

_FAMILY_SEED = {
    SeedFamily.THERMAL: thermal_seed,
    SeedFamily.COHERENT: coherent_seed,
    SeedFamily.SQUEEZED: squeezed_seed,
}


@dataclass(frozen=True)
class AxisSpec:
    """One scan axis: either a fixed value or an inclusive linear range."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("axis count must be >= 1")
        if self.count == 1 and self.start != self.stop:
            raise ValueError("fixed axis must have start == stop")
        if not (np.isfinite(self.start) and np.isfinite(self.stop)):
            raise ValueError("axis endpoints must be finite")

    @classmethod
    def fixed(cls, value: float) -> "AxisSpec":
        return cls(value, value, 1)

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.count)


def parse_axis(text: str) -> AxisSpec:
    """Parse ``"start:stop:count"`` (count >= 2) or a bare fixed value."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return AxisSpec.fixed(float(parts[0]))
        if len(parts) == 3:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 2:
                raise ValueError(
                    "ranged axis needs count >= 2; give a bare value "
                    "for a fixed axis")
            return AxisSpec(start, stop, count)
    except ValueError as exc:
        raise ValueError(f"bad axis {text!r}: {exc}") from None
    raise ValueError(f"bad axis {text!r}: expected VALUE or START:STOP:COUNT")


@dataclass(frozen=True)
class ScanSpec:
    family: SeedFamily
    s_a: AxisSpec
    s_b: AxisSpec
    n_gain: AxisSpec
    phase_r: float = 0.0

    def __post_init__(self):
        if self.family not in _FAMILY_SEED:
            raise ValueError(f"cannot scan family {self.family.value!r}")
        for name, axis in (("s_a", self.s_a), ("s_b", self.s_b)):
            if min(axis.start, axis.stop) < 0.0:
                raise ValueError(f"{name} axis must be nonnegative")
        if min(self.n_gain.start, self.n_gain.stop) < 0.0:
            raise ValueError("n_gain axis must be nonnegative")

    @property
    def total_points(self) -> int:
        return self.s_a.count * self.s_b.count * self.n_gain.count


@dataclass(frozen=True)
class ScanPoint:
    s_a: float
    s_b: float
    n_gain: float
    phase_r: float | None
    p_ssn: float | None
    p_lee: float | None
    p_ent: float | None
    d_minus: float
    label: str


@dataclass
class ScanResult:
    spec: ScanSpec
    points: list[ScanPoint] = field(default_factory=list)

    @property
    def label_counts(self) -> dict[str, int]:
        counts = {label: 0 for label in LABELS}
        for p in self.points:
            counts[p.label] += 1
        return counts


def label_point(report: QuantifierReport) -> str:
    if report.is_lee_nonclassical:
        return LABEL_LEE
    if report.is_ssn:
        return LABEL_SSN
    if report.is_entangled:
        return LABEL_ENT_ONLY
    return LABEL_CLASSICAL


def point_config(spec: ScanSpec, s_a: float, s_b: float,
                 n_gain: float) -> SeededPdcConfig:
    make = _FAMILY_SEED[spec.family]
    if spec.family is SeedFamily.COHERENT:
        seed_a: Seed = make(s_a, phase=spec.phase_r)
    else:
        seed_a = make(s_a)
    return SeededPdcConfig(seed_a, make(s_b), PdcParams(n_gain))


def run_scan(spec: ScanSpec) -> ScanResult:
    """Evaluate the grid row-major in (s_a, s_b, n_gain)."""
    result = ScanResult(spec=spec)
    keep_r = spec.family is SeedFamily.COHERENT
    for s_a in spec.s_a.values():
        for s_b in spec.s_b.values():
            for n_gain in spec.n_gain.values():
                cfg = point_config(spec, float(s_a), float(s_b),
                                   float(n_gain))
                try:
                    rep = classify(cfg)
                    point = ScanPoint(
                        s_a=float(s_a), s_b=float(s_b), n_gain=float(n_gain),
                        phase_r=spec.phase_r if keep_r else None,
                        p_ssn=rep.p_ssn, p_lee=rep.p_lee, p_ent=rep.p_ent,
                        d_minus=rep.d_minus, label=label_point(rep))
                except UndefinedQuantifierError:
                    # no light in either beam: quantifiers are 0/0
                    flag, d_minus = is_entangled_gaussian(cfg)
                    point = ScanPoint(
                        s_a=float(s_a), s_b=float(s_b), n_gain=float(n_gain),
                        phase_r=spec.phase_r if keep_r else None,
                        p_ssn=None, p_lee=None, p_ent=None,
                        d_minus=d_minus,
                        label=LABEL_ENT_ONLY if flag else LABEL_CLASSICAL)
                result.points.append(point)
    return result


def hierarchy_audit(result: ScanResult, tol: float = 1e-9) -> list[str]:
    """Invariant check over stored rows (not recomputed reports), so data
    corruption is caught: Lee never exceeds sub-shot-noise, the thermal
    quantifiers satisfy 2 p_ssn = p_lee + p_ent, and every label matches
    the flags implied by the stored numbers."""
    problems = []
    thermal = result.spec.family is SeedFamily.THERMAL
    for idx, p in enumerate(result.points):
        where = (f"point {idx} (s_a={p.s_a:g}, s_b={p.s_b:g}, "
                 f"n={p.n_gain:g})")
        if p.p_ssn is None:
            if p.label not in (LABEL_CLASSICAL, LABEL_ENT_ONLY):
                problems.append(f"{where}: undefined quantifiers but "
                                f"label {p.label}")
            continue
        if p.p_lee > p.p_ssn + tol:
            problems.append(f"{where}: p_lee {p.p_lee!r} exceeds "
                            f"p_ssn {p.p_ssn!r}")
        if thermal and p.p_ent is not None:
            gap = abs(2.0 * p.p_ssn - (p.p_lee + p.p_ent))
            if gap > max(tol, 1e-12 * (1.0 + abs(p.p_ssn))):
                problems.append(f"{where}: 2*p_ssn - (p_lee + p_ent) "
                                f"= {gap:.3e}")
        expected = (LABEL_LEE if p.p_lee > 0.0 else
                    LABEL_SSN if p.p_ssn > 0.0 else
                    LABEL_ENT_ONLY if p.d_minus < 0.5 else
                    LABEL_CLASSICAL)
        if p.label != expected:
            problems.append(f"{where}: label {p.label} but stored values "
                            f"imply {expected}")
    return problems


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.12g}"


def csv_rows(result: ScanResult):
    family = result.spec.family.value
    yield ",".join(CSV_COLUMNS)
    for p in result.points:
        yield ",".join((family, _fmt(p.s_a), _fmt(p.s_b), _fmt(p.n_gain),
                        _fmt(p.phase_r), _fmt(p.p_ssn), _fmt(p.p_lee),
                        _fmt(p.p_ent), _fmt(p.d_minus), p.label))


def to_csv_text(result: ScanResult) -> str:
    return "\n".join(csv_rows(result)) + "\n"


def result_payload(result: ScanResult) -> dict:
    """JSON-ready dict; floats are kept as-is so serialization round-trips
    bit-exactly."""
    spec = result.spec
    axis = lambda a: {"start": a.start, "stop": a.stop, "count": a.count}
    return {
        "family": spec.family.value,
        "axes": {"s_a": axis(spec.s_a), "s_b": axis(spec.s_b),
                 "n_pdc": axis(spec.n_gain)},
        "phase_r": spec.phase_r if spec.family is SeedFamily.COHERENT
                   else None,
        "points": [
            {"s_a": p.s_a, "s_b": p.s_b, "n_pdc": p.n_gain,
             "phase_r": p.phase_r, "p_ssn": p.p_ssn, "p_lee": p.p_lee,
             "p_ent": p.p_ent, "d_minus": p.d_minus, "label": p.label}
            for p in result.points
        ],
        "summary": {
            "total_points": len(result.points),
            "label_counts": result.label_counts,
        },
    }


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".part")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(result: ScanResult, path: str):
    _atomic_write(path, to_csv_text(result))


def write_json(result: ScanResult, path: str):
    _atomic_write(path, json.dumps(result_payload(result), indent=2) + "\n")
