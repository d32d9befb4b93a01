"""Report files: JSON documents and CSV tables, both versioned."""

from __future__ import annotations

import csv
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .serialization import ensure_serializable

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def write_json(path: str | Path, payload: Mapping[str, Any]) -> Path:
    """Write ``payload`` with a leading ``"schema"`` field."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    document = {"schema": SCHEMA_VERSION, **ensure_serializable(dict(payload))}
    target.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    logger.info("Wrote %s", target)
    return target


def read_json(path: str | Path) -> dict[str, Any]:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _cell(value: Any) -> Any:
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, complex):
        return f"{value.real!r}{value.imag:+}j" if value.imag else repr(value.real)
    return value


def write_csv(
    path: str | Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    *,
    footer: Mapping[str, Any] | None = None,
) -> Path:
    """Write a CSV table preceded by ``# schema: 1`` and followed by ``# key: value`` lines."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", newline="", encoding="utf-8") as handle:
        handle.write(f"# schema: {SCHEMA_VERSION}\n")
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
        for key, value in (footer or {}).items():
            handle.write(f"# {key}: {_cell(value)}\n")
    logger.info("Wrote %s", target)
    return target


def write_records(path: str | Path, records: Sequence[Mapping[str, Any]], **kwargs: Any) -> Path:
    """CSV from a list of dicts sharing the keys of the first record."""
    header = list(records[0].keys()) if records else []
    return write_csv(path, header, ([record.get(name) for name in header] for record in records), **kwargs)


def read_csv(path: str | Path) -> tuple[list[str], list[list[str]], dict[str, str]]:
    """Parse a report CSV into ``(header, rows, footer)``; the schema line is skipped."""
    header: list[str] = []
    rows: list[list[str]] = []
    footer: dict[str, str] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        data_lines = []
        for line in handle:
            if line.startswith("#"):
                key, _, value = line[1:].partition(":")
                if key.strip() != "schema":
                    footer[key.strip()] = value.strip()
            else:
                data_lines.append(line)
    parsed = list(csv.reader(data_lines))
    if parsed:
        header, rows = parsed[0], parsed[1:]
    return header, rows, footer
