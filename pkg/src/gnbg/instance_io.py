"""Instance serialization, grid export, and report emission.

Instances persist as JSON documents (``*.gnbg.json``) holding every symbol
needed to rebuild the landscape exactly: interaction angles are stored
sparsely as 1-indexed (p, q, angle) triples, with a dense ``rotation``
escape field for orthogonal matrices that were never expressed as angles.
Floats rely on Python's shortest-repr JSON encoding, which round-trips
binary64 exactly.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .core import Component, ProblemInstance
from .harness import ExperimentReport
from .rotation import ThetaSpec
from .transform import TransformParams

FORMAT_VERSION = "1.0"
GRID_FORMAT_VERSION = "1.0"


class InstanceFormatError(ValueError):
    """Malformed or invalid instance document; message names the field."""


def serialize_instance(instance: ProblemInstance) -> dict:
    components = []
    for comp in instance.components:
        record = {
            "sigma": comp.sigma,
            "m": comp.center.tolist(),
            "h_diag": comp.h_diag.tolist(),
            "lambda": comp.lam,
            "mu": list(comp.transform.mu),
            "omega": list(comp.transform.omega),
            "theta": [
                {"p": p, "q": q, "angle": angle}
                for p, q, angle in (comp.theta.to_triples() if comp.theta else [])
            ],
        }
        if comp.theta is None and comp.rotation is not None:
            record["rotation"] = comp.rotation.tolist()
        components.append(record)
    doc = {
        "format_version": FORMAT_VERSION,
        "dim": instance.dim,
        "bounds": {"lower": instance.lower.tolist(), "upper": instance.upper.tolist()},
        "components": components,
    }
    if instance.provenance is not None:
        doc["provenance"] = instance.provenance
    return doc


def _require(doc, key, types, where):
    if key not in doc:
        raise InstanceFormatError(f"{where}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, types):
        raise InstanceFormatError(f"{where}.{key}: unexpected type {type(value).__name__}")
    return value


def _vector(doc, key, dim, where):
    raw = _require(doc, key, list, where)
    if len(raw) != dim:
        raise InstanceFormatError(f"{where}.{key}: expected {dim} elements, got {len(raw)}")
    try:
        vec = np.array([float(v) for v in raw])
    except (TypeError, ValueError):
        raise InstanceFormatError(f"{where}.{key}: non-numeric element") from None
    if not np.all(np.isfinite(vec)):
        raise InstanceFormatError(f"{where}.{key}: non-finite element")
    return vec


def parse_instance(doc: dict) -> ProblemInstance:
    """Rebuild an instance from its document; errors name the bad field."""
    if not isinstance(doc, dict):
        raise InstanceFormatError("document: expected a JSON object")
    version = _require(doc, "format_version", str, "document")
    if version.split(".")[0] != FORMAT_VERSION.split(".")[0]:
        raise InstanceFormatError(
            f"document.format_version: {version!r} not compatible with {FORMAT_VERSION!r}"
        )
    dim = _require(doc, "dim", int, "document")
    if dim < 1:
        raise InstanceFormatError("document.dim: must be >= 1")
    bounds = _require(doc, "bounds", dict, "document")
    lower = _vector(bounds, "lower", dim, "bounds")
    upper = _vector(bounds, "upper", dim, "bounds")
    raw_components = _require(doc, "components", list, "document")
    if not raw_components:
        raise InstanceFormatError("document.components: must be nonempty")

    components = []
    for k, raw in enumerate(raw_components):
        where = f"components[{k}]"
        if not isinstance(raw, dict):
            raise InstanceFormatError(f"{where}: expected a JSON object")
        sigma = float(_require(raw, "sigma", (int, float), where))
        center = _vector(raw, "m", dim, where)
        h_diag = _vector(raw, "h_diag", dim, where)
        if np.any(h_diag <= 0):
            raise InstanceFormatError(f"{where}.h_diag: elements must be > 0")
        lam = float(_require(raw, "lambda", (int, float), where))
        if lam <= 0:
            raise InstanceFormatError(f"{where}.lambda: must be > 0")
        mu = _vector(raw, "mu", 2, where)
        omega = _vector(raw, "omega", 4, where)
        try:
            transform = TransformParams(tuple(mu), tuple(omega))
        except ValueError as exc:
            raise InstanceFormatError(f"{where}: {exc}") from None

        triples = []
        for t, entry in enumerate(_require(raw, "theta", list, where)):
            tw = f"{where}.theta[{t}]"
            if not isinstance(entry, dict):
                raise InstanceFormatError(f"{tw}: expected a JSON object")
            p = _require(entry, "p", int, tw)
            q = _require(entry, "q", int, tw)
            angle = float(_require(entry, "angle", (int, float), tw))
            if not 1 <= p < q <= dim:
                raise InstanceFormatError(f"{tw}: require 1 <= p < q <= dim, got p={p}, q={q}")
            triples.append((p, q, angle))

        theta = ThetaSpec.from_triples(dim, triples) if triples else None
        rotation = None
        if "rotation" in raw:
            if triples:
                raise InstanceFormatError(f"{where}: theta and rotation are mutually exclusive")
            rows = _require(raw, "rotation", list, where)
            if len(rows) != dim:
                raise InstanceFormatError(f"{where}.rotation: expected {dim} rows")
            rotation = np.array(
                [_vector({"row": r}, "row", dim, f"{where}.rotation[{i}]") for i, r in enumerate(rows)]
            )
        try:
            components.append(
                Component(center, sigma, h_diag, lam, transform, theta, rotation)
            )
        except (ValueError, ArithmeticError) as exc:
            raise InstanceFormatError(f"{where}: {exc}") from None

    provenance = doc.get("provenance")
    try:
        return ProblemInstance(dim, lower, upper, tuple(components), provenance)
    except ValueError as exc:
        raise InstanceFormatError(f"document: {exc}") from None


def dump_instance(instance: ProblemInstance) -> str:
    return json.dumps(serialize_instance(instance), indent=2) + "\n"


def load_instance(text: str) -> ProblemInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"document: invalid JSON ({exc})") from None
    return parse_instance(doc)


def export_grid(
    instance: ProblemInstance, i: int, j: int, resolution: int, fixed: np.ndarray
) -> dict:
    """Row-major grid of objective values over the (x_i, x_j) plane.

    Rows sweep x_i from lower to upper, columns sweep x_j; the remaining
    coordinates are pinned to ``fixed``.
    """
    d = instance.dim
    if not (0 <= i < d and 0 <= j < d) or i == j:
        raise ValueError(f"axis indices must be distinct and in [0, {d}), got ({i}, {j})")
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    fixed = np.asarray(fixed, dtype=float)
    if fixed.shape != (d,):
        raise ValueError(f"fixed must have shape ({d},)")
    from .core import evaluate

    xi = np.linspace(instance.lower[i], instance.upper[i], resolution)
    xj = np.linspace(instance.lower[j], instance.upper[j], resolution)
    values = []
    x = fixed.copy()
    for a in xi:
        row = []
        for b in xj:
            x[i], x[j] = a, b
            row.append(evaluate(instance, x))
        values.append(row)
    return {
        "format_version": GRID_FORMAT_VERSION,
        "axis": [int(i), int(j)],
        "fixed": fixed.tolist(),
        "resolution": int(resolution),
        "values": values,
    }


def _fmt(value) -> str:
    return "--" if value is None else repr(float(value))


def write_csv_report(reports: list[ExperimentReport], stream) -> None:
    """One row per knob value; columns mirror the milestone table layout."""
    if not reports:
        return
    milestones = reports[0].milestones
    header = ["knob"]
    for n in range(1, len(milestones) + 1):
        header += [f"mean_err_m{n}", f"std_err_m{n}"]
    header += ["mean_fe_success", "success_rate"]
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for report in reports:
        row = ["" if report.knob is None else str(report.knob)]
        for m in report.milestones:
            row += [repr(report.mean_errors[m]), repr(report.std_errors[m])]
        row += [_fmt(report.mean_fe_success), repr(report.success_rate)]
        writer.writerow(row)


def csv_report_text(reports: list[ExperimentReport]) -> str:
    buf = io.StringIO()
    write_csv_report(reports, buf)
    return buf.getvalue()


def report_to_dict(report: ExperimentReport) -> dict:
    """Full JSON-ready record including per-run traces."""
    return {
        "knob": report.knob,
        "runs": report.runs,
        "milestones": list(report.milestones),
        "mean_errors": {str(m): report.mean_errors[m] for m in report.milestones},
        "std_errors": {str(m): report.std_errors[m] for m in report.milestones},
        "mean_fe_success": report.mean_fe_success,
        "success_rate": report.success_rate,
        "run_results": [
            {
                "best_value": r.best_value,
                "best_error": r.best_error,
                "best_position": r.best_position.tolist(),
                "fe_used": r.fe_used,
                "milestone_errors": {str(m): e for m, e in r.milestone_errors.items()},
                "fe_to_success": r.fe_to_success,
                "success": r.success,
            }
            for r in report.run_results
        ],
    }
