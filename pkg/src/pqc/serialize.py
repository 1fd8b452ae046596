"""JSON forms of states, channels, verdicts and synthesis reports.

Complex matrices are written as nested ``[re, im]`` pairs. Floats are emitted
with 17 significant digits so that every value round-trips exactly.
"""
from __future__ import annotations

import json
import math
from typing import Any, Optional

import numpy as np

from .bloch import QubitState, as_state, state_from_bloch
from .channel import AffineChannel, ensemble_to_affine
from .ensemble import UnitaryEnsemble

SCHEMA = "pqc-report/1"


def _float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = f"{x:.17g}"
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{" + pad + ("," + pad).join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        parts = [_encode(v, indent, level + 1) for v in seq]
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(parts) + "]"
        return "[" + pad + ("," + pad).join(parts) + end + "]"
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON text with 17-significant-digit floats."""
    return _encode(obj, indent, 0) + "\n"


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(obj) -> np.ndarray:
    """Accept ``(d, d, 2)`` nested pairs, a row-major ``(4, 2)`` list for qubits, or a real ``(d, d)`` matrix."""
    arr = np.asarray(obj, dtype=float)
    if arr.ndim == 3 and arr.shape[2] == 2 and arr.shape[0] == arr.shape[1]:
        return arr[..., 0] + 1j * arr[..., 1]
    if arr.shape == (4, 2):
        return (arr[:, 0] + 1j * arr[:, 1]).reshape(2, 2)
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
        return arr.astype(complex)
    raise ValueError(f"cannot read a square complex matrix from shape {arr.shape}")


def parse_state(obj) -> QubitState:
    """A Bloch triple ``[x, y, z]`` or a 2x2 complex matrix."""
    if isinstance(obj, dict):
        if "bloch" in obj:
            return state_from_bloch(obj["bloch"])
        if "matrix" in obj:
            return as_state(matrix_from_json(obj["matrix"]))
        raise ValueError("state object needs a 'bloch' or 'matrix' key")
    arr = np.asarray(obj, dtype=float)
    if arr.shape == (3,):
        return state_from_bloch(arr)
    return as_state(matrix_from_json(obj))


def ensemble_to_json(e) -> list:
    return [{"p": p, "u": matrix_to_json(u)} for p, u in e]


def ensemble_from_json(entries) -> UnitaryEnsemble:
    return UnitaryEnsemble.from_entries((float(x["p"]), matrix_from_json(x["u"])) for x in entries)


def affine_to_json(c: AffineChannel) -> dict:
    return {"T": c.T.tolist(), "t": c.t.tolist()}


def channel_to_json(e: UnitaryEnsemble, include_affine: bool = True) -> dict:
    out = {"ensemble": ensemble_to_json(e)}
    if include_affine:
        out["affine"] = affine_to_json(ensemble_to_affine(e))
    return out


def channel_from_json(obj: dict) -> tuple[Optional[UnitaryEnsemble], AffineChannel]:
    """Read a channel file; the ensemble wins over a cached affine block when both exist."""
    ens = ensemble_from_json(obj["ensemble"]) if "ensemble" in obj else None
    if ens is not None:
        return ens, ensemble_to_affine(ens)
    if "affine" not in obj:
        raise ValueError("channel needs an 'ensemble' or an 'affine' block")
    return None, AffineChannel(obj["affine"]["T"], obj["affine"]["t"])


def verdict_to_json(v) -> dict:
    return v.to_dict()


def span_to_json(span) -> dict:
    return {
        "dim": span.dim,
        "ball_radius": span.ball_radius,
        "most_mixed": span.most_mixed.bloch.tolist(),
        "directions": span.directions.tolist(),
        "plaintexts": span.points.tolist(),
    }


def report_to_json(report) -> dict:
    return {
        "span": span_to_json(report.span),
        "target": report.target.bloch.tolist(),
        "construction": report.construction,
        "achievable": report.achievable,
        "key_entropy": report.key_entropy,
        "min_entropy": report.min_entropy,
        "r_param": report.r_param,
        **channel_to_json(report.ensemble),
        "verdicts": {k: v.to_dict() for k, v in report.verdicts.items()},
    }
