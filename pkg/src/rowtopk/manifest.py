"""Run manifests and CSV emission.

Every CSV starts with a `# rowtopk-csv v1 <kind>` header line and is written
next to a JSON manifest that echoes the full parameter set, enough to re-run
the experiment exactly.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__

CSV_SCHEMA = "rowtopk-csv v1"


def build_manifest(command: str, params: dict) -> dict:
    return {
        "artifact": "rowtopk",
        "version": __version__,
        "command": command,
        "params": params,
        "numpy": np.__version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def manifest_path(out_path) -> Path:
    p = Path(out_path)
    return p.with_name(p.name + ".manifest.json")


def write_manifest(out_path, command: str, params: dict) -> Path:
    path = manifest_path(out_path)
    path.write_text(json.dumps(build_manifest(command, params), indent=2) + "\n")
    return path


def render_csv(kind: str, header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write(f"# {CSV_SCHEMA} {kind}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def emit_csv(
    kind: str,
    header: list[str],
    rows: list[list],
    out: str | None,
    command: str,
    params: dict,
    echo: bool = False,
) -> None:
    text = render_csv(kind, header, rows)
    if out:
        Path(out).write_text(text)
        write_manifest(out, command, params)
        if echo:
            sys.stdout.write(text)
    else:
        sys.stdout.write(text)
