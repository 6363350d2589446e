"""JSON and CSV documents for series and reports.

Exact values are always strings (``p/q`` or a canonical polynomial), never
JSON numbers.  Set SOURCE_DATE_EPOCH for byte-reproducible output; without
it the metadata carries the current UTC time.
"""

from __future__ import annotations

import csv
import io
import json
import os
from datetime import datetime, timezone

import mpmath

from hpmkit import __version__
from hpmkit.exact import parse_poly, parse_rational
from hpmkit.hpm import PerturbationSeries, ProblemSpec, StateSpec

CSV_DIGITS = 17


def timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    now = datetime.fromtimestamp(int(epoch), timezone.utc) if epoch else datetime.now(timezone.utc)
    return now.strftime("%Y-%m-%dT%H:%M:%SZ")


def metadata(command: str) -> dict:
    return {"tool": "hpmkit", "version": __version__, "command": command, "timestamp": timestamp()}


def decimal_string(x, digits: int = CSV_DIGITS) -> str:
    """``digits`` significant digits; no overflow for huge rationals."""
    with mpmath.workdps(digits + 10):
        if hasattr(x, "numerator") and hasattr(x, "denominator"):
            v = mpmath.mpf(x.numerator) / x.denominator
        else:
            v = mpmath.mpf(x)
        return mpmath.nstr(v, digits, min_fixed=-4, max_fixed=digits)


def series_document(series: PerturbationSeries, command: str, **extra) -> dict:
    doc = {
        "metadata": metadata(command),
        "state": series.state.as_dict() if series.state is not None else "symbolic",
        "problem": {**series.problem.as_dict(), "first_order": series.start},
        "coefficients": series.as_strings(),
    }
    doc.update(extra)
    return doc


def dumps_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def series_from_json(text: str) -> PerturbationSeries:
    """Inverse of :func:`series_document` for the fields that define a series."""
    doc = json.loads(text)
    prob = doc["problem"]
    problem = ProblemSpec(K=prob["K"], P=prob["P"])
    start = prob.get("first_order", 0)
    if doc["state"] == "symbolic":
        coeffs = tuple(parse_poly(s) for s in doc["coefficients"])
        return PerturbationSeries(coeffs, problem, None, start)
    st = doc["state"]
    state = StateSpec(st["n_r"], st["l"], st.get("m_l"))
    coeffs = tuple(parse_rational(s) for s in doc["coefficients"])
    return PerturbationSeries(coeffs, problem, state, start)


def series_csv(series: PerturbationSeries, digits: int = CSV_DIGITS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if series.symbolic:
        w.writerow(["order", "polynomial"])
        for p, s in zip(series.orders(), series.as_strings()):
            w.writerow([p, s])
    else:
        w.writerow(["order", "coefficient", f"value_{digits}g"])
        for p, s in zip(series.orders(), series.as_strings()):
            w.writerow([p, s, decimal_string(series[p], digits)])
    return buf.getvalue()


def report_csv(report: dict, digits: int = CSV_DIGITS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["field", "value"])
    for key, value in report.items():
        if isinstance(value, float):
            value = format(value, f".{digits}g")
        elif isinstance(value, (list, tuple)):
            value = ";".join(format(v, f".{digits}g") if isinstance(v, float) else str(v) for v in value)
        elif value is None:
            value = ""
        w.writerow([key, value])
    return buf.getvalue()
