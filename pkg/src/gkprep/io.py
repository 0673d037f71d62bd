"""Tabular serialization, grid-spec parsing, and run manifests.

Every number leaving the package goes through one canonical formatting
rule: 12 significant digits (%.12g). JSON payloads store the value
re-parsed from that rendering, so serializing, parsing, and serializing
again is byte-identical; CSV stores the rendering itself. Booleans are
written as lowercase true/false in both formats.

Grid specifications are `start:stop:step` strings with inclusive
endpoints; a bare number is a one-point grid.
"""

import json
from dataclasses import dataclass
from typing import Optional

from .errors import ParameterRangeError

__all__ = [
    "RunManifest",
    "canon_float",
    "format_value",
    "parse_grid_spec",
    "parse_int_list",
    "to_csv_text",
    "to_json_text",
]

_ENDPOINT_SLACK = 1e-9  # fraction of one step tolerated past `stop`


def format_value(value) -> str:
    """Canonical text rendering of one scalar cell."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return "%.12g" % value
    return str(value)


def canon_float(value: float) -> float:
    """The double nearest the 12-significant-digit rendering of `value`."""
    return float("%.12g" % value)


def _canonicalize(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return canon_float(obj)
    if isinstance(obj, dict):
        return {key: _canonicalize(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonicalize(val) for val in obj]
    return obj


def to_json_text(payload) -> str:
    """Serialize a payload of dicts/lists/scalars to canonical JSON text.

    Floats are canonicalized to 12 significant digits and keys are sorted,
    so parse -> serialize is the identity on the emitted bytes.
    """
    return json.dumps(_canonicalize(payload), indent=2, sort_keys=True) + "\n"


def to_csv_text(header, rows) -> str:
    """Serialize rows (sequences of scalars) under a fixed header order."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(cell) for cell in row))
    return "\n".join(lines) + "\n"


def parse_grid_spec(spec: str):
    """Parse `start:stop:step` (inclusive) or a bare number into floats."""
    parts = spec.split(":")
    if len(parts) not in (1, 3):
        raise ParameterRangeError(
            "grid spec must be 'start:stop:step' or a single number: %r" % spec
        )
    try:
        numbers = tuple(float(p) for p in parts)
    except ValueError:
        raise ParameterRangeError("grid spec is not numeric: %r" % spec)
    if len(numbers) == 1:
        return numbers
    start, stop, step = numbers
    if step <= 0.0:
        raise ParameterRangeError("grid spec step must be positive: %r" % spec)
    if stop < start:
        raise ParameterRangeError("grid spec stop must be >= start: %r" % spec)
    values = []
    i = 0
    while True:
        value = start + i * step
        if value > stop + _ENDPOINT_SLACK * step:
            break
        values.append(value)
        i += 1
    return tuple(values)


def parse_int_list(text: str):
    """Parse a comma-separated integer list like '1,3,11'."""
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ParameterRangeError("expected comma-separated integers: %r" % text)
    if not values:
        raise ParameterRangeError("integer list must be non-empty")
    return values


@dataclass(frozen=True)
class RunManifest:
    """Sidecar record that makes an output file re-runnable.

    `parameters` holds the full parsed argument set of the invocation;
    re-running the same command with them reproduces the output
    byte-identically (count-identically for seeded Monte Carlo).
    """

    command: str
    parameters: dict
    version: str
    seed: Optional[int]
    duration_seconds: float

    def to_json(self) -> str:
        return to_json_text({
            "command": self.command,
            "parameters": self.parameters,
            "version": self.version,
            "seed": self.seed,
            "duration_seconds": self.duration_seconds,
        })
