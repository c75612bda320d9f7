"""
Series emitters - canonical CSV and JSON for scan records

CSV: '#'-prefixed metadata lines (key=<canonical JSON>), a fixed header,
12 significant digits, '\\n' line endings. Parsing an emitted CSV and
emitting it again reproduces the file byte for byte.
"""
import json
import logging
from pathlib import Path
from typing import Any, Optional

from lib.errors import EmptySeriesError, IoError
from lib.measures import Phase
from lib.rgflow import ScanRecord

logger = logging.getLogger(__name__)

COLUMNS = ("parameter", "entropy", "mi", "negativity_proxy", "multipartite", "phase", "rate")
MEASURE_COLUMNS = ("entropy", "mi", "negativity_proxy", "multipartite", "rate")

PROXY_NOTE = "negativity_proxy = 1.5 * EWCS / four_G_N, a geometric proxy for the negativity"


def format_number(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.12g}"


def _canonical(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def _row(record: ScanRecord) -> list[str]:
    cells = [format_number(record.parameter_value)]
    cells += [format_number(getattr(record, name)) for name in MEASURE_COLUMNS[:-1]]
    cells.append(record.phase.value if record.phase is not None else "")
    cells.append(format_number(record.rate))
    return cells


def _error_entries(records: list[ScanRecord]) -> list[dict[str, str]]:
    return [
        {"parameter": format_number(r.parameter_value), "error": r.error}
        for r in records
        if r.error is not None
    ]


def series_metadata(records: list[ScanRecord], metadata: dict[str, Any]) -> dict[str, Any]:
    """Caller metadata plus the errors list and the proxy note"""
    return {**metadata, "errors": _error_entries(records), "note": PROXY_NOTE}


def render_csv(records: list[ScanRecord], metadata: dict[str, Any]) -> str:
    lines = [f"# {key}={_canonical(value)}" for key, value in sorted(metadata.items())]
    lines.append(",".join(COLUMNS))
    lines += [",".join(_row(r)) for r in records]
    return "\n".join(lines) + "\n"


def render_json(records: list[ScanRecord]) -> str:
    def rounded(value: Optional[float]) -> Optional[float]:
        return None if value is None else float(format_number(value))

    rows = []
    for r in records:
        row: dict[str, Any] = {"parameter": rounded(r.parameter_value)}
        for name in MEASURE_COLUMNS[:-1]:
            row[name] = rounded(getattr(r, name))
        row["phase"] = r.phase.value if r.phase is not None else None
        row["rate"] = rounded(r.rate)
        rows.append(row)
    return json.dumps(rows, indent=2) + "\n"


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from e


def emit_series(records: list[ScanRecord], fmt: str, path: Path,
                metadata: Optional[dict[str, Any]] = None) -> None:
    """Write records as CSV, or as a JSON array with a <path>.meta.json sidecar"""
    if not records:
        raise EmptySeriesError()
    path = Path(path)
    meta = series_metadata(records, metadata or {})
    if fmt == "csv":
        _write(path, render_csv(records, meta))
    elif fmt == "json":
        _write(path, render_json(records))
        _write(path.with_name(path.name + ".meta.json"), json.dumps(meta, indent=2, sort_keys=True) + "\n")
    else:
        raise IoError(f"unknown output format {fmt!r}")
    logger.info(f"emitted path={path} format={fmt} records={len(records)}")


def read_series(path: Path) -> tuple[list[ScanRecord], dict[str, Any]]:
    """Parse an emitted CSV back into records and caller metadata"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}") from e

    metadata: dict[str, Any] = {}
    lines = text.split("\n")[:-1]
    while lines and lines[0].startswith("# "):
        key, _, value = lines.pop(0)[2:].partition("=")
        metadata[key] = json.loads(value)
    if not lines or tuple(lines[0].split(",")) != COLUMNS:
        raise IoError(f"{path} is not an emitted series")

    errors = {e["parameter"]: e["error"] for e in metadata.pop("errors", [])}
    metadata.pop("note", None)

    def number(cell: str) -> Optional[float]:
        return float(cell) if cell else None

    records = []
    for line in lines[1:]:
        cells = dict(zip(COLUMNS, line.split(",")))
        records.append(ScanRecord(
            parameter_value=float(cells["parameter"]),
            entropy=number(cells["entropy"]),
            mi=number(cells["mi"]),
            negativity_proxy=number(cells["negativity_proxy"]),
            multipartite=number(cells["multipartite"]),
            phase=Phase(cells["phase"]) if cells["phase"] else None,
            rate=number(cells["rate"]),
            error=errors.get(cells["parameter"]),
        ))
    return records, metadata
