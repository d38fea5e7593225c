"""Table serialization: self-describing CSV (comment preamble with the
resolved configuration) and an equivalent column-keyed JSON form."""

from __future__ import annotations

import json
from pathlib import Path

from . import __version__

Row = dict[str, float | str]

SIG_DIGITS = 12


def _format_value(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, bool):
        return str(v)
    if isinstance(v, int):
        return str(v)
    return f"{float(v):.{SIG_DIGITS - 1}e}"


def _columns(rows: list[Row], columns: list[str] | None) -> list[str]:
    if columns is not None:
        return list(columns)
    cols: list[str] = []
    for row in rows:
        for key in row:
            if key not in cols:
                cols.append(key)
    return cols


def emit_table(
    rows: list[Row],
    path: str | Path,
    fmt: str = "csv",
    config: dict | None = None,
    columns: list[str] | None = None,
) -> Path:
    """Write a table to ``path`` in the requested format.

    CSV files carry a '#' comment preamble recording the artifact version and
    every resolved configuration value, then a header row naming each column.
    Numbers are written with 12 significant digits so a round trip through
    the file reproduces them exactly at that precision.
    """
    if not rows:
        raise ValueError("refusing to emit an empty table")
    path = Path(path)
    cols = _columns(rows, columns)
    config = config or {}

    if fmt == "csv":
        lines = [f"# kerrchain {__version__}"]
        for key in sorted(config):
            lines.append(f"# {key} = {config[key]}")
        lines.append(",".join(cols))
        for row in rows:
            lines.append(",".join(_format_value(row.get(c, "")) for c in cols))
        path.write_text("\n".join(lines) + "\n")
    elif fmt == "json":
        payload = {
            "version": __version__,
            "config": config,
            "columns": {c: [row.get(c) for row in rows] for c in cols},
        }
        path.write_text(json.dumps(payload, indent=2, default=float) + "\n")
    else:
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")
    return path


def read_table(path: str | Path) -> tuple[list[Row], dict]:
    """Parse a file written by emit_table back into rows and config."""
    path = Path(path)
    if path.suffix == ".json":
        payload = json.loads(path.read_text())
        cols = payload["columns"]
        names = list(cols)
        n = len(cols[names[0]]) if names else 0
        rows = [{c: cols[c][i] for c in names} for i in range(n)]
        return rows, payload.get("config", {})

    config: dict = {}
    header: list[str] | None = None
    rows: list[Row] = []
    for line in path.read_text().splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, val = body.partition("=")
                config[key.strip()] = val.strip()
            continue
        cells = line.split(",")
        if header is None:
            header = cells
            continue
        row: Row = {}
        for name, cell in zip(header, cells):
            try:
                row[name] = float(cell)
            except ValueError:
                row[name] = cell
        rows.append(row)
    return rows, config
