import json
import math
from pathlib import Path
from typing import Any, Sequence

import pandas as pd

from horserace.config import logger
from horserace.io import format_float

Row = dict[str, Any]


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def _json_cell(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


def _text_cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.4f}" if math.isfinite(value) else repr(value)
    return str(value)


def write_csv(rows: Sequence[Row], columns: Sequence[str], path: Path) -> Path:
    frame = pd.DataFrame([[_csv_cell(row.get(c)) for c in columns] for row in rows], columns=list(columns), dtype=str)
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
    return path


def write_json(rows: Sequence[Row], columns: Sequence[str], path: Path) -> Path:
    records = [{c: _json_cell(row.get(c)) for c in columns} for row in rows]
    path.write_text(json.dumps(records, sort_keys=True, indent=2, allow_nan=False) + "\n", encoding="utf-8")
    return path


def render_text(rows: Sequence[Row], columns: Sequence[str]) -> str:
    """Aligned plain-text table."""
    if not rows:
        return "(no rows)\n"
    frame = pd.DataFrame([[_text_cell(row.get(c)) for c in columns] for row in rows], columns=list(columns))
    return frame.to_string(index=False) + "\n"


def write_report(rows: Sequence[Row], columns: Sequence[str], out_dir: Path, name: str) -> list[Path]:
    """Write `<name>.csv`, `<name>.json` and `<name>.txt` into `out_dir`."""
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = [
        write_csv(rows, columns, out_dir / f"{name}.csv"),
        write_json(rows, columns, out_dir / f"{name}.json"),
    ]
    text_path = out_dir / f"{name}.txt"
    text_path.write_text(render_text(rows, columns), encoding="utf-8")
    paths.append(text_path)

    logger.info(f"Wrote {name} report with {len(rows)} rows", extra={"out_dir": str(out_dir)})
    return paths
