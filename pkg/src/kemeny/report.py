"""Report envelopes and their JSON/CSV encodings.

JSON numbers are emitted with Python's shortest round-trip repr (<= 17
significant digits, lossless); CSV values are formatted to 10 significant
digits.  The timestamp field stays null unless explicitly stamped so that
identical commands produce byte-identical output.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Any

from . import __version__

CSV_SIG_DIGITS = 10


@dataclass(frozen=True)
class ReportEnvelope:
    """Self-describing result wrapper: enough context to re-run exactly."""

    payload_kind: str  # matrix | test | fit | moments | harness
    payload: Any
    command: list[str]
    seed: int | None = None
    timestamp: str | None = None
    version: str = __version__

    def as_dict(self) -> dict:
        return {
            "version": self.version,
            "command": self.command,
            "seed": self.seed,
            "timestamp": self.timestamp,
            "payload_kind": self.payload_kind,
            "payload": self.payload,
        }


def stamp_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def to_json(envelope: ReportEnvelope) -> str:
    return json.dumps(envelope.as_dict(), indent=2, sort_keys=True) + "\n"


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.{CSV_SIG_DIGITS}g}"
    if value is None:
        return ""
    return str(value)


def rows_to_csv(fieldnames, rows) -> str:
    """Encode dict rows as CSV with 10-significant-digit floats."""
    buf = io.StringIO()
    buf.write(",".join(fieldnames) + "\n")
    for row in rows:
        buf.write(",".join(_csv_cell(row.get(name)) for name in fieldnames) + "\n")
    return buf.getvalue()
