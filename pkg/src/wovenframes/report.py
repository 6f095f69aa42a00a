"""JSON frame files and reports.

Floats are written with Python's shortest round-trip ``repr`` so a frame
survives ``parse(serialize(frame))`` bit for bit. Frame files may also give
entries as hex-float strings such as ``"0x1.8p+1"``. Index sets in reports
are 1-based.
"""

from __future__ import annotations

import json
import math
from datetime import datetime, timezone
from functools import lru_cache
from importlib import resources

import jsonschema
import numpy as np

from .certificates import CertificateResult
from .errors import NonFiniteValue, ParseError, ShapeError
from .frame import BoundsReport, ExcessReport, Frame
from .weaving import PartitionAssignment, WeavingVerdict

SCHEMA_TAG = "wovenframes.report/1"


def _reject_constant(name):
    raise NonFiniteValue(f"non-finite number {name} in input")


def _number(x, where: str) -> float:
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected a number, got a boolean")
    if isinstance(x, (int, float)):
        v = float(x)
    elif isinstance(x, str):
        try:
            v = float.fromhex(x)
        except ValueError:
            raise ParseError(f"{where}: {x!r} is neither a number nor a hex float") from None
    else:
        raise ParseError(f"{where}: expected a number, got {type(x).__name__}")
    if not math.isfinite(v):
        raise NonFiniteValue(f"{where}: non-finite entry")
    return v


def _load(data) -> object:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        return json.loads(data, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None


def _rows(raw, where: str) -> list[list[float]]:
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise ParseError(f"{where} must be a list of lists")
    rows = [[_number(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(raw)]
    if len({len(r) for r in rows}) > 1:
        raise ShapeError(f"{where} rows have different lengths")
    return rows


def parse_vectors(data) -> tuple[int, list[list[float]]]:
    """Parse ``{"dim": d, "vectors": [...]}`` without requiring a spanning set."""
    obj = _load(data)
    if not isinstance(obj, dict) or "dim" not in obj or "vectors" not in obj:
        raise ParseError('frame file must be an object with "dim" and "vectors"')
    dim = obj["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ParseError('"dim" must be a positive integer')
    rows = _rows(obj["vectors"], "vectors")
    if not rows:
        raise ShapeError("a frame file needs at least one vector")
    if len(rows[0]) != dim:
        raise ShapeError(f"vectors have length {len(rows[0])}, expected dim {dim}")
    return dim, rows


def parse_frame_file(data) -> Frame:
    dim, rows = parse_vectors(data)
    return Frame(rows, dim=dim)


def parse_matrix_file(data) -> np.ndarray:
    """Parse ``{"matrix": [[...], ...]}``."""
    obj = _load(data)
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise ParseError('matrix file must be an object with "matrix"')
    rows = _rows(obj["matrix"], "matrix")
    if not rows or not rows[0]:
        raise ShapeError("matrix must be non-empty")
    return np.array(rows)


def frame_json(f: Frame) -> dict:
    return {"dim": f.dim, "vectors": f.vectors.tolist()}


def serialize_frame(f: Frame) -> str:
    return json.dumps(frame_json(f))


def _one_based(indices) -> list[int]:
    return [int(i) + 1 for i in indices]


def bounds_result(b: BoundsReport, riesz: BoundsReport, f: Frame, is_frame: bool, is_riesz: bool) -> dict:
    return {"kind": "bounds", "dim": f.dim, "n": f.n, "lower": b.lower, "upper": b.upper,
            "is_frame": is_frame, "riesz_lower": riesz.lower, "riesz_upper": riesz.upper,
            "is_riesz_basis": is_riesz}


def excess_result(e: ExcessReport) -> dict:
    return {"kind": "excess", "excess": e.excess, "rank": len(e.riesz_indices),
            "riesz_indices": _one_based(e.riesz_indices),
            "redundant_indices": _one_based(e.redundant_indices)}


def witness_json(w: PartitionAssignment, lam: float, m: int) -> dict:
    return {"assignment": [c + 1 for c in w.choice],
            "sigma": _one_based(w.sigma) if m == 2 else None,
            "lambda_min": lam}


def verdict_result(v: WeavingVerdict, m: int) -> dict:
    return {"kind": "weaving", "frames": m, "woven": v.woven,
            "universal_lower": v.universal_lower, "universal_upper": v.universal_upper,
            "partitions_checked": v.partitions_checked,
            "witness": None if v.witness is None else witness_json(v.witness, v.witness_lower, m)}


def certificate_result(r: CertificateResult, oracle: WeavingVerdict | None = None) -> dict:
    return {"kind": "certificate", "name": r.name, "applicable": r.applicable,
            "certificate_kind": r.kind, "quantities": dict(r.quantities),
            "guaranteed_lower": r.guaranteed_lower, "guaranteed_upper": r.guaranteed_upper,
            "failed_condition": r.failed_condition, "flags": list(r.flags),
            "concluded": None if r.concluded is None else [frame_json(f) for f in r.concluded],
            "oracle": None if oracle is None else {"woven": oracle.woven,
                                                   "universal_lower": oracle.universal_lower,
                                                   "universal_upper": oracle.universal_upper}}


def make_report(command: str, inputs, result: dict, deterministic: bool = False) -> dict:
    rep = {"version": SCHEMA_TAG, "command": command, "inputs": [str(i) for i in inputs], "result": result}
    if not deterministic:
        rep["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return rep


@lru_cache(maxsize=1)
def schema() -> dict:
    text = resources.files("wovenframes").joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def validate(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` unless ``report`` matches the schema."""
    jsonschema.validate(report, schema())


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False)
