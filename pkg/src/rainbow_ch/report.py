"""Deterministic JSON/CSV emission and aggregation of run outputs."""

from __future__ import annotations

import json
from pathlib import Path

STATUSES = ("ok", "violation", "indeterminate")
EXIT_CODES = {"ok": 0, "violation": 1, "indeterminate": 2}
REPORT_NAME = "report.json"


class ReportError(OSError):
    """I/O or parse failure, carrying the offending path."""

    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = str(path)


def dumps(obj) -> str:
    # sorted keys and a fixed indent so equal payloads give equal bytes
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def envelope(command: str, args: dict, status: str, result) -> dict:
    if status not in STATUSES:
        raise ValueError(f"unknown status {status!r}")
    return {"command": command, "args": args, "status": status, "result": result}


def _write(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise ReportError(path, exc.strerror or str(exc)) from exc
    return path


def emit_report(doc: dict, out_dir, name: str) -> Path:
    """Write ``doc`` as ``<out_dir>/<name>.json``."""
    return _write(Path(out_dir) / f"{name}.json", dumps(doc))


def emit_text(text: str, out_dir, filename: str) -> Path:
    return _write(Path(out_dir) / filename, text)


def load_report(path) -> dict:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ReportError(path, exc.strerror or str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise ReportError(path, f"not JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(doc, dict) or "command" not in doc or doc.get("status") not in STATUSES:
        raise ReportError(path, "not a run output (needs command and status)")
    return doc


def aggregate(out_dir) -> dict:
    """Collect every run output in ``out_dir`` into one summary."""
    out_dir = Path(out_dir)
    if not out_dir.is_dir():
        raise ReportError(out_dir, "output directory does not exist")
    runs = []
    for path in sorted(out_dir.glob("*.json")):
        if path.name == REPORT_NAME:
            continue
        try:
            doc = load_report(path)
        except ReportError:
            continue  # colourings, checkpoints and other non-run files
        runs.append({"file": path.name, "command": doc["command"], "status": doc["status"]})
    counts = {s: sum(r["status"] == s for r in runs) for s in STATUSES}
    if counts["violation"]:
        status = "violation"
    elif counts["indeterminate"]:
        status = "indeterminate"
    else:
        status = "ok"
    return {"runs": runs, "counts": counts, "status": status}
