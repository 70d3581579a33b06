"""
CSV and JSON writers with a metadata header.

CSV files start with '#' comment lines; JSON documents carry the same values
under "metadata". Floats in CSV bodies use '.' and a fixed number of digits.
"""

import csv
import io
import json
import sys
from pathlib import Path
from typing import Any

from ..models import OutputMetadata

Record = dict[str, Any]


def format_value(value: Any, digits: int = 6) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.{digits}f}"
    return "" if value is None else str(value)


def render_csv(records: list[Record], metadata: OutputMetadata, digits: int = 6) -> str:
    buffer = io.StringIO()
    for line in metadata.header_lines():
        buffer.write(line + "\n")
    if records:
        writer = csv.DictWriter(buffer, fieldnames=list(records[0]), lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow({key: format_value(value, digits) for key, value in record.items()})
    return buffer.getvalue()


def render_json(payload: Any, metadata: OutputMetadata) -> str:
    document = {"metadata": metadata.model_dump(), "data": payload}
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def emit(text: str, out: Path | None) -> None:
    """Write to out, or stdout when out is None."""
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
