"""JSON and CSV encodings of solver results.

JSON keeps full double precision (complex numbers as ``{"re": .., "im": ..}``)
so documents round-trip exactly. CSV is a display format: root components
become ``x<k>_re, x<k>_im`` column pairs printed with a fixed number of
decimals.
"""

from __future__ import annotations

import csv
import io
import math
from typing import Iterable, Sequence

import numpy as np

from .probing import BoxBracket, Bracket1D, StabilityCurve, StabilityReport
from .solvers import IterationTrace, SolveOutcome
from .sweep import RootRecord, RootRegistry

__all__ = [
    "complex_from_json",
    "complex_to_json",
    "format_complex",
    "outcome_to_json",
    "record_from_json",
    "record_to_json",
    "registry_csv",
    "registry_to_json",
    "root_columns",
    "vector_from_json",
    "vector_to_json",
]


def _num(x) -> float | None:
    x = float(x)
    return x if math.isfinite(x) else None


def complex_to_json(z: complex) -> dict:
    return {"re": _num(z.real), "im": _num(z.imag)}


def complex_from_json(d: dict) -> complex:
    re = math.nan if d["re"] is None else d["re"]
    im = math.nan if d["im"] is None else d["im"]
    return complex(re, im)


def vector_to_json(v) -> list[dict]:
    return [complex_to_json(complex(z)) for z in np.asarray(v).ravel()]


def vector_from_json(items: Sequence[dict]) -> np.ndarray:
    return np.array([complex_from_json(d) for d in items], dtype=np.complex128)


def format_complex(z: complex, precision: int = 8) -> str:
    """``a + bi`` display form; purely real values print without the imaginary part."""
    if z.imag == 0:
        return f"{z.real:.{precision}f}"
    sign = "-" if z.imag < 0 else "+"
    return f"{z.real:.{precision}f} {sign} {abs(z.imag):.{precision}f}i"


def trace_to_json(trace: IterationTrace) -> dict:
    return {
        "iterates": [vector_to_json(x) for x in trace.iterates],
        "step_norms": [_num(s) for s in trace.step_norms],
        "residual_norms": [_num(r) for r in trace.residual_norms],
    }


def outcome_to_json(outcome: SolveOutcome, **meta) -> dict:
    doc = dict(meta)
    doc.update(
        status=outcome.status.value,
        iterations=outcome.iterations,
        root=None if outcome.root is None else vector_to_json(outcome.root),
        final_iterate=vector_to_json(outcome.final_iterate),
        residual_norm=_num(outcome.residual_norm),
        step_norm=_num(outcome.last_step_norm),
    )
    if outcome.trace is not None:
        doc["trace"] = trace_to_json(outcome.trace)
    return doc


def record_to_json(index: int, rec: RootRecord) -> dict:
    return {
        "index": index,
        "alpha": rec.alpha_used,
        "root": vector_to_json(rec.root),
        "step_norm": _num(rec.last_step_norm),
        "residual_norm": _num(rec.residual_norm),
        "iterations": rec.iterations,
        "is_real": rec.is_real,
    }


def record_from_json(d: dict) -> RootRecord:
    return RootRecord(
        alpha_used=d["alpha"],
        root=vector_from_json(d["root"]),
        last_step_norm=math.nan if d["step_norm"] is None else d["step_norm"],
        residual_norm=d["residual_norm"],
        iterations=d["iterations"],
        is_real=d["is_real"],
    )


def registry_to_json(registry: RootRegistry, **meta) -> dict:
    doc = dict(meta)
    doc["dedup_tol"] = registry.dedup_tol
    doc["summary"] = dict(sorted(registry.tally.items()))
    doc["roots"] = [record_to_json(i, r) for i, r in enumerate(registry.records, start=1)]
    return doc


def root_columns(dim: int) -> list[str]:
    cols = []
    for k in range(1, dim + 1):
        cols += [f"x{k}_re", f"x{k}_im"]
    return cols


def _fmt(x, spec: str) -> str:
    x = float(x)
    return format(x, spec) if math.isfinite(x) else str(x)


def _csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _root_cells(root, precision: int) -> list[str]:
    cells = []
    for z in np.asarray(root).ravel():
        cells += [_fmt(z.real, f".{precision}f"), _fmt(z.imag, f".{precision}f")]
    return cells


def registry_csv(registry: RootRegistry, dim: int, precision: int = 8) -> str:
    header = ["index", "alpha"] + root_columns(dim) + ["step_norm", "residual_norm", "iterations"]
    rows = []
    for i, rec in enumerate(registry.records, start=1):
        rows.append(
            [i, _fmt(rec.alpha_used, f".{precision}f")]
            + _root_cells(rec.root, precision)
            + [
                _fmt(rec.last_step_norm, f".{precision}e"),
                _fmt(rec.residual_norm, f".{precision}e"),
                rec.iterations,
            ]
        )
    return _csv_text(header, rows)


def outcome_csv(outcome: SolveOutcome, alpha: float | None, dim: int, precision: int = 8) -> str:
    header = ["status", "alpha"] + root_columns(dim) + ["step_norm", "residual_norm", "iterations"]
    row = (
        [outcome.status.value, "" if alpha is None else _fmt(alpha, f".{precision}f")]
        + _root_cells(outcome.final_iterate, precision)
        + [
            _fmt(outcome.last_step_norm, f".{precision}e"),
            _fmt(outcome.residual_norm, f".{precision}e"),
            outcome.iterations,
        ]
    )
    text = _csv_text(header, [row])
    if outcome.trace is not None:
        tr = outcome.trace
        steps = list(tr.step_norms) + [math.nan] * (len(tr.iterates) - len(tr.step_norms))
        rows = [
            [i] + _root_cells(x, precision)
            + [_fmt(r, f".{precision}e"), _fmt(s, f".{precision}e")]
            for i, (x, r, s) in enumerate(zip(tr.iterates, tr.residual_norms, steps))
        ]
        text += "\n" + _csv_text(
            ["iteration"] + root_columns(dim) + ["residual_norm", "step_norm"], rows
        )
    return text


def report_to_json(report: StabilityReport) -> dict:
    return {
        "base_point": [float(x) for x in report.base_point],
        "component": report.direction,
        "base_norm": report.base_norm,
        "offsets": list(report.offsets),
        "residual_norms": list(report.residual_norms),
        "deltas": list(report.deltas),
        "classification": report.classification,
    }


def report_csv(report: StabilityReport, precision: int = 8) -> str:
    rows = [
        [_fmt(d, f".{precision}f"), _fmt(n, f".{precision}f"), _fmt(n - report.base_norm, f".{precision}f")]
        for d, n in zip(report.offsets, report.residual_norms)
    ]
    return _csv_text(["offset", "norm", "delta"], rows)


def curve_csv(curve: StabilityCurve, precision: int = 8) -> str:
    rows = [[_fmt(x, f".{precision}f") for x in row] for row in curve.rows()]
    return _csv_text(curve.header(), rows)


def curve_to_json(curve: StabilityCurve) -> dict:
    return {"header": curve.header(), "rows": [[float(x) for x in row] for row in curve.rows()]}


def box_to_json(box: BoxBracket) -> dict:
    return {
        "X_a": [float(x) for x in box.X_a],
        "X_b": [float(x) for x in box.X_b],
        "component_products": [float(p) for p in box.component_products],
        "violations": box.violations,
        "holds": box.holds,
    }


def box_csv(box: BoxBracket, precision: int = 8) -> str:
    rows = [
        [k, _fmt(a, f".{precision}f"), _fmt(b, f".{precision}f"), _fmt(p, f".{precision}e"), "yes" if p <= 0 else "no"]
        for k, (a, b, p) in enumerate(zip(box.X_a, box.X_b, box.component_products), start=1)
    ]
    return _csv_text(["component", "X_a", "X_b", "product", "sign_change"], rows)


def brackets_to_json(brackets: Sequence[Bracket1D]) -> list[dict]:
    return [{"lo": b.lo, "hi": b.hi, "f_lo": b.f_lo, "f_hi": b.f_hi} for b in brackets]


def brackets_csv(brackets: Sequence[Bracket1D], precision: int = 8) -> str:
    rows = [
        [_fmt(b.lo, f".{precision}f"), _fmt(b.hi, f".{precision}f"),
         _fmt(b.f_lo, f".{precision}e"), _fmt(b.f_hi, f".{precision}e")]
        for b in brackets
    ]
    return _csv_text(["lo", "hi", "f_lo", "f_hi"], rows)
