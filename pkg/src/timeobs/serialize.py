"""JSON and CSV readers/writers.

JSON floats go through Python repr (shortest exact round-trip form); CSV cells
use 17 significant digits.  Both reparse to the identical double, so emitted
artifacts re-read into equal in-memory values.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import SchemaError
from .operators import OperatorMatrix
from .spectral import EnergySpectrum, QuantumState, build_spectrum

SPECTRUM_KEY = "spectrum"
STATE_KEY = "state"


def fmt17(x: float) -> str:
    """17-significant-digit decimal form; reparses to the same double."""
    return format(float(x), ".17g")


def _require(doc: dict, key: str, context: str):
    if key not in doc:
        raise SchemaError(f"{context}: missing required key {key!r}")
    return doc[key]


def _as_number(value, context: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{context}: expected a number, got {type(value).__name__}")
    return float(value)


def _as_int(value, context: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{context}: expected an integer, got {type(value).__name__}")
    return value


def _as_number_list(value, context: str) -> list[float]:
    if not isinstance(value, list):
        raise SchemaError(f"{context}: expected a list of numbers")
    return [_as_number(v, context) for v in value]


def spectrum_to_dict(spectrum: EnergySpectrum) -> dict:
    """Explicit-levels form of the spectrum schema; loses no information."""
    return {
        "kind": "custom",
        "levels": [float(e) for e in spectrum.levels],
        "n": spectrum.size,
        "hbar": float(spectrum.hbar),
        "label": spectrum.label,
    }


def spectrum_from_dict(doc: dict) -> EnergySpectrum:
    if not isinstance(doc, dict):
        raise SchemaError("spectrum: expected an object")
    kind = _require(doc, "kind", "spectrum")
    if kind == "harmonic":
        n = _as_int(_require(doc, "n", "spectrum"), "spectrum.n")
        omega = _as_number(doc.get("omega", 1.0), "spectrum.omega")
        hbar = _as_number(doc.get("hbar", 1.0), "spectrum.hbar")
        return build_spectrum("harmonic", n, omega=omega, hbar=hbar)
    if kind == "box":
        n = _as_int(_require(doc, "n", "spectrum"), "spectrum.n")
        scale = _as_number(doc.get("scale", 1.0), "spectrum.scale")
        hbar = _as_number(doc.get("hbar", 1.0), "spectrum.hbar")
        return build_spectrum("box", n, scale=scale, hbar=hbar)
    if kind == "custom":
        levels = _as_number_list(_require(doc, "levels", "spectrum"), "spectrum.levels")
        hbar = _as_number(doc.get("hbar", 1.0), "spectrum.hbar")
        label = doc.get("label", "custom")
        if not isinstance(label, str):
            raise SchemaError("spectrum.label: expected a string")
        spec = build_spectrum("custom", len(levels), levels=levels, hbar=hbar)
        return EnergySpectrum(spec.levels, hbar=spec.hbar, label=label)
    raise SchemaError(f"spectrum.kind: unknown kind {kind!r}")


def state_to_dict(state: QuantumState) -> dict:
    return {
        "re": [float(v) for v in state.coeffs.real],
        "im": [float(v) for v in state.coeffs.imag],
    }


def state_from_dict(doc: dict) -> QuantumState:
    if not isinstance(doc, dict):
        raise SchemaError("state: expected an object")
    re = _as_number_list(_require(doc, "re", "state"), "state.re")
    im = _as_number_list(_require(doc, "im", "state"), "state.im")
    if len(re) != len(im):
        raise SchemaError("state: re and im must have equal length")
    return QuantumState(np.array(re, dtype=float) + 1j * np.array(im, dtype=float))


def load_problem(path) -> tuple[EnergySpectrum, QuantumState | None]:
    """Read a {"spectrum": ..., "state": ...} document; the state is optional."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise SchemaError("problem document: expected a top-level object")
    spectrum = spectrum_from_dict(_require(doc, SPECTRUM_KEY, "problem document"))
    state = None
    if STATE_KEY in doc and doc[STATE_KEY] is not None:
        state = state_from_dict(doc[STATE_KEY])
        if state.size != spectrum.size:
            raise SchemaError(
                f"problem document: state length {state.size} does not match "
                f"spectrum length {spectrum.size}"
            )
    return spectrum, state


def dump_problem(path, spectrum: EnergySpectrum, state: QuantumState | None = None) -> None:
    doc: dict = {SPECTRUM_KEY: spectrum_to_dict(spectrum)}
    if state is not None:
        doc[STATE_KEY] = state_to_dict(state)
    write_json(path, doc)


def matrix_to_dict(op: OperatorMatrix) -> dict:
    return {
        "n": op.basis_size,
        "re": [[float(v) for v in row] for row in op.entries.real],
        "im": [[float(v) for v in row] for row in op.entries.imag],
    }


def matrix_from_dict(doc: dict) -> OperatorMatrix:
    if not isinstance(doc, dict):
        raise SchemaError("matrix: expected an object")
    n = _as_int(_require(doc, "n", "matrix"), "matrix.n")
    re = _require(doc, "re", "matrix")
    im = _require(doc, "im", "matrix")
    for name, rows in (("re", re), ("im", im)):
        if not isinstance(rows, list) or len(rows) != n:
            raise SchemaError(f"matrix.{name}: expected {n} rows")
        for row in rows:
            if not isinstance(row, list) or len(row) != n:
                raise SchemaError(f"matrix.{name}: expected square {n} x {n} data")
    entries = np.array(re, dtype=float) + 1j * np.array(im, dtype=float)
    return OperatorMatrix(entries)


def load_matrix(path) -> OperatorMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_dict(json.load(fh))


def dump_matrix(path, op: OperatorMatrix) -> None:
    write_json(path, matrix_to_dict(op))


def write_json(path, obj) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def dump_series(path, series, header: Sequence[str] = ("tau", "value")) -> None:
    """DeviationSeries (or any taus/values pair) as two-column CSV."""
    write_csv(path, header, zip(series.taus, series.values))


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Plain CSV with 17-significant-digit floats; integers stay integers."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = [
                str(v) if isinstance(v, (int, np.integer)) else fmt17(v) for v in row
            ]
            fh.write(",".join(cells) + "\n")
