"""Small shared helpers for the test suite."""

from __future__ import annotations


def rel(a: float, b: float) -> float:
    """Relative deviation of a from the reference b."""
    return abs(a / b - 1.0)


def read_csv(path):
    """Split one of our CSV artifacts into (comment header, columns, rows)."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    assert lines[0].startswith("# "), f"missing comment header in {path}"
    cols = lines[1].split(",")
    rows = [ln.split(",") for ln in lines[2:] if ln]
    return lines[0], cols, rows
