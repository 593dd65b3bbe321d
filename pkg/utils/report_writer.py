"""
Renders reports for standard output.

text        one "key: value" line per field, sections for inputs / fields / residuals
structured  JSON document (the same shape the HTTP API returns under "report")
csv         two columns field,value with nested entries flattened to dotted keys;
            curves are written as plain tables
"""

import json
import logging
from typing import Any, Dict, Iterator, Tuple

import pandas as pd

from config import Config
from models import ReportRecord, round_significant

logger = logging.getLogger(__name__)

FORMATS = ("text", "structured", "csv")


def _float_format() -> str:
    return f"%.{Config.SIGNIFICANT_DIGITS}g"


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"Unknown output format '{fmt}', expected one of {', '.join(FORMATS)}")


def _flatten(prefix: str, value: Any) -> Iterator[Tuple[str, Any]]:
    if isinstance(value, dict):
        for key, item in value.items():
            yield from _flatten(f"{prefix}.{key}" if prefix else key, item)
    elif isinstance(value, list):
        for index, item in enumerate(value):
            yield from _flatten(f"{prefix}.{index}", item)
    else:
        yield prefix, value


def _json(document: Dict) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def render_report(record: ReportRecord, fmt: str = "text") -> str:
    _check_format(fmt)
    report = record.to_dict()

    if fmt == "structured":
        return _json(report)

    if fmt == "csv":
        rows = [(key, value) for section in ("fields", "residuals") if section in report
                for key, value in _flatten(section, report[section])]
        frame = pd.DataFrame(rows, columns=["field", "value"])
        return frame.to_csv(index=False, lineterminator="\n")

    lines = [f"command: {report['command']}"]
    for section in ("inputs", "fields", "residuals"):
        if section not in report:
            continue
        lines.append(f"[{section}]")
        for key, value in report[section].items():
            shown = json.dumps(value, ensure_ascii=False) if isinstance(value, (list, dict)) else value
            lines.append(f"{key}: {shown}")
    return "\n".join(lines) + "\n"


def curve_to_dict(frame: pd.DataFrame) -> Dict:
    rows = [{column: round_significant(float(value)) for column, value in row.items()}
            for row in frame.to_dict(orient="records")]
    return {"command": "bell-curve", "inputs": {"samples": len(frame)}, "rows": rows}


def render_curve(frame: pd.DataFrame, fmt: str = "csv") -> str:
    _check_format(fmt)

    if fmt == "csv":
        return frame.to_csv(index=False, float_format=_float_format(), lineterminator="\n")

    if fmt == "structured":
        return _json(curve_to_dict(frame))

    return frame.to_string(index=False, float_format=lambda x: f"{x:.{Config.SIGNIFICANT_DIGITS}g}") + "\n"


def render_health(health: Dict, fmt: str = "text") -> str:
    """Self-check results without the timestamp, so repeated runs compare equal."""
    _check_format(fmt)
    checks = health.get("checks", {})

    if fmt == "structured":
        return _json({"status": health.get("status"), "checks": checks})

    if fmt == "csv":
        frame = pd.DataFrame(
            [(name, result.get("healthy"), result.get("residual")) for name, result in checks.items()],
            columns=["check", "healthy", "residual"],
        )
        return frame.to_csv(index=False, float_format="%.3e", lineterminator="\n")

    lines = [f"status: {health.get('status')}"]
    for name, result in checks.items():
        marker = "ok" if result.get("healthy") else "FAIL"
        detail = f"residual={result['residual']:.3e}" if "residual" in result else result.get("error", "")
        lines.append(f"{name}: {marker} {detail}")
    return "\n".join(lines) + "\n"
