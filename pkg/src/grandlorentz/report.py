"""Check records and their JSON-lines / CSV serialisation."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable

PASS = "pass"
FAIL = "fail"
REPORT_ONLY = "report-only"
DIVERGENT = "divergent"
TRIVIAL = "trivial"

FIELDS = (
    "check_name",
    "params",
    "lhs",
    "rhs",
    "constant",
    "margin",
    "ratio",
    "status",
    "seed",
    "notes",
)


@dataclass
class CheckReport:
    """One inequality instance.

    ``margin`` is rhs - lhs and is set only when the constant is known;
    ``ratio`` is lhs / rhs and is what report-only checks expose.
    """

    check_name: str
    params: dict
    lhs: float
    rhs: float
    constant: float | str = "free"
    margin: float | None = None
    ratio: float | None = None
    status: str = REPORT_ONLY
    seed: int | None = None
    notes: str = ""
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool | None:
        if self.status in (PASS, TRIVIAL):
            return True
        if self.status == FAIL:
            return False
        return None

    @property
    def gating(self) -> bool:
        return self.constant != "free"

    def sort_key(self):
        return (self.check_name, json.dumps(_jsonable(self.params), sort_keys=True))


def known_constant_report(
    name: str, params: dict, lhs: float, rhs: float, constant: float, rel_tol: float, notes: str = ""
) -> CheckReport:
    """Pass iff lhs <= rhs + rel_tol * |rhs|; lhs and rhs already carry the constant."""
    if lhs == 0 and rhs == 0:
        return CheckReport(name, params, 0.0, 0.0, constant, 0.0, None, TRIVIAL, notes=notes)
    if math.isinf(rhs) and not math.isinf(lhs):
        margin = math.inf
    else:
        margin = rhs - lhs
    ok = margin >= -rel_tol * abs(rhs)
    ratio = lhs / rhs if rhs not in (0, math.inf) else None
    return CheckReport(name, params, lhs, rhs, constant, margin, ratio, PASS if ok else FAIL, notes=notes)


def ratio_report(name: str, params: dict, lhs: float, rhs: float, notes: str = "") -> CheckReport:
    """Report-only lhs/rhs; 0/0 is a trivial pass."""
    if lhs == 0 and rhs == 0:
        return CheckReport(name, params, 0.0, 0.0, "free", None, None, TRIVIAL, notes=notes)
    if math.isinf(lhs) or math.isinf(rhs):
        return CheckReport(name, params, lhs, rhs, "free", None, None, DIVERGENT, notes=notes)
    ratio = lhs / rhs if rhs else math.inf
    return CheckReport(name, params, lhs, rhs, "free", None, ratio, REPORT_ONLY, notes=notes)


def fmt_float(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    try:
        x = float(obj)
    except (TypeError, ValueError):
        return str(obj)
    if x.is_integer() and abs(x) < 2**53 and not isinstance(obj, float):
        return int(x)
    return _Float(x)


class _Float(float):
    """Float that serialises with 17 significant digits (strings for inf/nan)."""


def _encode(obj) -> str:
    if isinstance(obj, _Float):
        s = fmt_float(obj)
        return s if math.isfinite(obj) else json.dumps(s)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, list):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    return json.dumps(obj)


def report_record(r: CheckReport) -> dict:
    rec = {
        "check_name": r.check_name,
        "params": dict(sorted(r.params.items())),
        "lhs": r.lhs,
        "rhs": r.rhs,
        "constant": r.constant,
        "margin": r.margin,
        "ratio": r.ratio,
        "status": r.status,
        "seed": r.seed,
        "notes": r.notes,
    }
    return _jsonable(rec)


def to_jsonl(reports: Iterable[CheckReport]) -> str:
    return "".join(_encode(report_record(r)) + "\n" for r in reports)


def to_csv(reports: Iterable[CheckReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in reports:
        params = ";".join(f"{k}={fmt_float(v) if isinstance(v, float) else v}" for k, v in sorted(r.params.items()))
        w.writerow(
            [
                r.check_name,
                params,
                fmt_float(r.lhs),
                fmt_float(r.rhs),
                fmt_float(r.constant),
                fmt_float(r.margin),
                fmt_float(r.ratio),
                r.status,
                "" if r.seed is None else r.seed,
                r.notes,
            ]
        )
    return buf.getvalue()


def table_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_float(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()
