"""Analysis-report assembly and JSON serialization.

Reports are plain records (strings, numbers, lists, string-keyed maps) so
that serialization is trivially lossless; classification verdicts and check
results are flattened into records when the report is built. Reports carry
no timestamps: identical inputs must produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__ as _tool_version
from .classify import (
    Confirmed,
    PositivityVerdict,
    RefutedWithWitness,
    UndeterminedUpToHorizon,
)
from .rng import GENERATOR_NAME
from .spectral import Spectrum
from .verify import CheckResult

SCHEMA_VERSION = "1"


class ReportError(ValueError):
    pass


def verdict_record(v: PositivityVerdict) -> dict:
    status = v.status
    if isinstance(status, Confirmed):
        st = {"kind": "confirmed", "n0": int(status.n0)}
    elif isinstance(status, RefutedWithWitness):
        st = {"kind": "refuted", "witness": str(status.description)}
    elif isinstance(status, UndeterminedUpToHorizon):
        st = {"kind": "undetermined", "horizon": int(status.horizon)}
    else:
        raise ReportError(f"unknown verdict status {status!r}")
    return {
        "notion": v.notion.value,
        "status": st,
        "tolerance": float(v.tolerance),
    }


def check_record(c: CheckResult) -> dict:
    return {
        "name": c.name,
        "pass": bool(c.pass_),
        "margin": float(c.margin),
        "tolerance": float(c.tolerance),
        "applicable": bool(c.applicable),
        "contradiction": bool(c.contradiction),
        "hypotheses": {k: v for k, v in sorted(c.hypotheses.items())},
    }


def spectrum_record(s: Spectrum) -> dict:
    return {
        "eigenvalues": [[float(z.real), float(z.imag)] for z in s.eigenvalues],
        "spectral_radius": float(s.spectral_radius),
    }


@dataclass(frozen=True)
class AnalysisReport:
    operator_id: str
    model_descriptor: dict
    classification: tuple  # of verdict records
    spectrum: Optional[dict]
    checks: tuple  # of check records
    decay_sequences: dict  # label -> list of floats
    seed: int
    versions: dict = field(
        default_factory=lambda: {
            "tool": _tool_version,
            "schema": SCHEMA_VERSION,
            "rng": GENERATOR_NAME,
        }
    )

    @property
    def contradiction_count(self) -> int:
        return sum(1 for c in self.checks if c["contradiction"])


_REPORT_FIELDS = (
    "operator_id",
    "model_descriptor",
    "classification",
    "spectrum",
    "checks",
    "decay_sequences",
    "seed",
    "versions",
)


def report_to_json(report: AnalysisReport) -> str:
    payload = {
        "operator_id": report.operator_id,
        "model_descriptor": report.model_descriptor,
        "classification": list(report.classification),
        "spectrum": report.spectrum,
        "checks": list(report.checks),
        "decay_sequences": {
            k: [float(v) for v in vs] for k, vs in sorted(report.decay_sequences.items())
        },
        "seed": int(report.seed),
        "versions": report.versions,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def report_from_json(text: str) -> AnalysisReport:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ReportError("report must be a JSON object")
    unknown = set(data) - set(_REPORT_FIELDS)
    if unknown:
        raise ReportError(f"unknown report fields: {sorted(unknown)}")
    missing = set(_REPORT_FIELDS) - set(data)
    if missing:
        raise ReportError(f"missing report fields: {sorted(missing)}")
    versions = data["versions"]
    if set(versions) - {"tool", "schema", "rng"}:
        raise ReportError("unknown version fields")
    if versions.get("schema") != SCHEMA_VERSION:
        raise ReportError(
            f"schema version {versions.get('schema')!r} is not supported "
            f"(expected {SCHEMA_VERSION!r})"
        )
    for rec in data["classification"]:
        if set(rec) - {"notion", "status", "tolerance"}:
            raise ReportError("unknown fields in a classification record")
    for rec in data["checks"]:
        allowed = {
            "name",
            "pass",
            "margin",
            "tolerance",
            "applicable",
            "contradiction",
            "hypotheses",
        }
        if set(rec) - allowed:
            raise ReportError("unknown fields in a check record")
    return AnalysisReport(
        operator_id=data["operator_id"],
        model_descriptor=data["model_descriptor"],
        classification=tuple(data["classification"]),
        spectrum=data["spectrum"],
        checks=tuple(data["checks"]),
        decay_sequences=dict(data["decay_sequences"]),
        seed=int(data["seed"]),
        versions=versions,
    )
