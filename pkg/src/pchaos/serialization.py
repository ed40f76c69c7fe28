"""Versioned file formats and atomic writers.

Grid files (JSON, format_version 1):

    {"format_version": 1, "kind": "cells" | "paley", "p": int, "level": int,
     "data": [[re, im], ...]}

``data`` has exactly p^level entries, in cell order for kind "cells" and
Paley order for kind "paley". Measure files use kind "paley" and add
{"variation": float, "provenance": {...}}; complex provenance entries are
encoded as [re, im] pairs.

Polynomial files:

    {"format_version": 1, "p": int, "N": int,
     "terms": [{"k": [...], "l": [...], "re": float, "im": float}, ...]}

with terms sorted by (k, l). Floats are emitted with repr precision, so
stored values round-trip exactly. Every writer goes through a temporary
file in the target directory followed by os.replace; readers never observe
a partial file.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from typing import Any, Iterable, Sequence

import numpy as np

from .chaos import ChaosPolynomial
from .errors import FormatError
from .measures import MeasureRep
from .padic import ChaosTerm
from .transform import Spectrum, StepFunction

FORMAT_VERSION = 1


def write_text_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def json_default(value: Any):
    """Fold numpy scalars and arrays into plain JSON types."""
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"not JSON serializable: {type(value)}")


def dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=json_default) + "\n"


def write_json_atomic(path: str, payload: dict) -> None:
    write_text_atomic(path, dump_json(payload))


def write_csv_atomic(path: str, fieldnames: Sequence[str], rows: Iterable[dict]) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=list(fieldnames))
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_json(path: str) -> dict:
    try:
        with open(path) as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise FormatError(f"{path}: no such file")
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _require(payload: dict, field: str, path: str) -> Any:
    if field not in payload:
        raise FormatError(f"{path}: missing required field {field!r}")
    return payload[field]


def _check_version(payload: dict, path: str) -> None:
    version = _require(payload, "format_version", path)
    if version != FORMAT_VERSION:
        raise FormatError(
            f"{path}: format_version {version} unsupported (expected {FORMAT_VERSION})"
        )


def _encode_array(values: np.ndarray) -> list:
    return [[float(v.real), float(v.imag)] for v in values]


def _decode_array(data: Any, expected: int, path: str) -> np.ndarray:
    if not isinstance(data, list) or len(data) != expected:
        raise FormatError(
            f"{path}: field 'data' must hold {expected} [re, im] pairs"
        )
    try:
        arr = np.array([complex(re, im) for re, im in data], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{path}: field 'data' entries must be [re, im] pairs") from exc
    return arr


def _encode_provenance(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _encode_provenance(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return {"complex_array": _encode_array(value)}
        return [float(v) for v in value]
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (tuple, list)):
        return [_encode_provenance(v) for v in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return value


def _decode_provenance(value: Any) -> Any:
    if isinstance(value, dict):
        if set(value) == {"complex_array"}:
            return np.array(
                [complex(re, im) for re, im in value["complex_array"]],
                dtype=np.complex128,
            )
        return {k: _decode_provenance(v) for k, v in value.items()}
    return value


def _grid_payload(kind: str, p: int, level: int, values: np.ndarray) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "p": p,
        "level": level,
        "data": _encode_array(values),
    }


def save_step_function(path: str, f: StepFunction, extras: dict | None = None) -> None:
    payload = _grid_payload("cells", f.p, f.level, f.values)
    payload.update(extras or {})
    write_json_atomic(path, payload)


def save_spectrum(path: str, s: Spectrum, extras: dict | None = None) -> None:
    payload = _grid_payload("paley", s.p, s.level, s.coeffs)
    payload.update(extras or {})
    write_json_atomic(path, payload)


def save_measure(path: str, m: MeasureRep, extras: dict | None = None) -> None:
    payload = _grid_payload("paley", m.p, m.level, m.spectrum.coeffs)
    payload["variation"] = m.variation
    payload["provenance"] = _encode_provenance(m.provenance)
    payload.update(extras or {})
    write_json_atomic(path, payload)


def load_grid(path: str) -> StepFunction | Spectrum:
    """Load either grid kind; the payload's 'kind' field decides the type."""
    payload = _load_json(path)
    _check_version(payload, path)
    kind = _require(payload, "kind", path)
    p = int(_require(payload, "p", path))
    level = int(_require(payload, "level", path))
    data = _decode_array(_require(payload, "data", path), p**level, path)
    if kind == "cells":
        return StepFunction(p, level, data)
    if kind == "paley":
        return Spectrum(p, level, data)
    raise FormatError(f"{path}: unknown kind {kind!r} (expected 'cells' or 'paley')")


def load_step_function(path: str) -> StepFunction:
    obj = load_grid(path)
    if not isinstance(obj, StepFunction):
        raise FormatError(f"{path}: expected kind 'cells'")
    return obj


def load_spectrum(path: str) -> Spectrum:
    obj = load_grid(path)
    if not isinstance(obj, Spectrum):
        raise FormatError(f"{path}: expected kind 'paley'")
    return obj


def load_measure(path: str) -> MeasureRep:
    payload = _load_json(path)
    _check_version(payload, path)
    if _require(payload, "kind", path) != "paley":
        raise FormatError(f"{path}: a measure file must have kind 'paley'")
    p = int(_require(payload, "p", path))
    level = int(_require(payload, "level", path))
    data = _decode_array(_require(payload, "data", path), p**level, path)
    variation = float(_require(payload, "variation", path))
    provenance = _decode_provenance(_require(payload, "provenance", path))
    return MeasureRep(Spectrum(p, level, data), variation, provenance)


def save_polynomial(path: str, Q: ChaosPolynomial, extras: dict | None = None) -> None:
    terms = [
        {
            "k": list(term.ks),
            "l": list(term.ls),
            "re": float(Q.coeffs[term].real),
            "im": float(Q.coeffs[term].imag),
        }
        for term in Q.terms()
    ]
    payload = {
        "format_version": FORMAT_VERSION,
        "p": Q.p,
        "N": Q.N,
        "terms": terms,
    }
    payload.update(extras or {})
    write_json_atomic(path, payload)


def load_polynomial(path: str) -> ChaosPolynomial:
    payload = _load_json(path)
    _check_version(payload, path)
    p = int(_require(payload, "p", path))
    N = int(_require(payload, "N", path))
    raw_terms = _require(payload, "terms", path)
    if not isinstance(raw_terms, list):
        raise FormatError(f"{path}: field 'terms' must be a list")
    coeffs = {}
    for i, entry in enumerate(raw_terms):
        try:
            term = ChaosTerm(tuple(entry["k"]), tuple(entry["l"]))
            coeffs[term] = complex(entry["re"], entry["im"])
        except (KeyError, TypeError) as exc:
            raise FormatError(
                f"{path}: terms[{i}] must carry fields 'k', 'l', 're', 'im'"
            ) from exc
    return ChaosPolynomial(p, N, coeffs)
