"""Run reports and canonical JSON serialization.

Floats are written with 17 significant digits so identical runs produce
byte-identical files and round-trip without precision loss.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

SCHEMA_VERSION = 1


def _format_float(value: float) -> str:
    if not np.isfinite(value):
        raise ValueError(f"cannot serialize non-finite number {value!r}")
    text = format(float(value), ".17g")
    # Keep a decimal marker so the value reads back as a float.
    if "." not in text and "e" not in text and "E" not in text:
        text += ".0"
    return text


def _write(obj, out: list, indent: int) -> None:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_format_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(f"{inner}{json.dumps(str(key), ensure_ascii=False)}: ")
            _write(value, out, indent + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(f"{pad}}}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            out.append("[]")
            return
        out.append("[\n")
        for i, value in enumerate(seq):
            out.append(inner)
            _write(value, out, indent + 1)
            out.append(",\n" if i < len(seq) - 1 else "\n")
        out.append(f"{pad}]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_canonical(obj) -> str:
    """Serialize to deterministic, human-readable JSON text."""
    out: list = []
    _write(obj, out, 0)
    return "".join(out) + "\n"


def content_digest(data: bytes) -> str:
    """Hex SHA-256 of raw input bytes, recorded in every report."""
    return "sha256:" + hashlib.sha256(data).hexdigest()


def order_dict(order) -> dict:
    return {"p": order.p, "d": order.d, "q": order.q}


def params_dict(params) -> dict:
    return {
        "phi": list(params.phi),
        "theta": list(params.theta),
        "constant": float(params.constant),
        "sigma2": float(params.sigma2),
    }


def ljung_box_dict(report) -> dict:
    return {
        "q_statistic": float(report.q_statistic),
        "dof": report.dof,
        "p_value": float(report.p_value),
        "lags_used": report.lags_used,
    }


def forecast_dict(fc) -> dict:
    return {
        "horizon_labels": list(fc.horizon_labels),
        "point": list(fc.point),
        "lower": list(fc.lower),
        "upper": list(fc.upper),
        "level": float(fc.level),
        "psi": list(fc.psi),
        "clamped": fc.clamped,
        "point_unclamped": list(fc.point_unclamped),
        "lower_unclamped": list(fc.lower_unclamped),
        "upper_unclamped": list(fc.upper_unclamped),
    }


def correlogram_dict(gram) -> dict:
    return {
        "lags": list(gram.lags),
        "coefficients": list(gram.coefficients),
        "confidence_band": float(gram.confidence_band),
    }


def candidate_dict(cand) -> dict:
    return {
        "order": order_dict(cand.order),
        "aic": None if cand.aic is None else float(cand.aic),
        "bic": None if cand.bic is None else float(cand.bic),
        "converged": cand.converged,
        "skipped": cand.skipped,
        "note": cand.note,
    }


def run_report(
    tool_version: str,
    command: str,
    input_digest: str,
    order,
    params,
    converged: bool,
    diagnostics=None,
    criteria=None,
    forecast=None,
) -> dict:
    """Assemble the self-contained RunReport mapping."""
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": tool_version,
        "command": command,
        "input_digest": input_digest,
        "order": order_dict(order),
        "params_summary": params_dict(params),
        "converged": converged,
        "diagnostics": None if diagnostics is None else ljung_box_dict(diagnostics),
        "criteria": None
        if criteria is None
        else {"aic": float(criteria[0]), "bic": float(criteria[1])},
        "forecast": None if forecast is None else forecast_dict(forecast),
    }
