"""Tabular rendering of bound and oracle results.

CSV columns, in order:

``name, n, k, s, t, t1, t2, value_fraction, value_decimal, regime_ok``

Parameters a row does not use are left empty. Oracle rows are named
``oracle_min``; their value is the minimum and ``regime_ok`` is the
completeness flag.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .bounds import BoundReport, fraction_to_decimal
from .exceptions import DomainError
from .oracle import OracleResult

CSV_COLUMNS = ("name", "n", "k", "s", "t", "t1", "t2", "value_fraction", "value_decimal", "regime_ok")
FORMATS = ("json", "csv", "text")


def _row(result) -> dict[str, str]:
    if isinstance(result, BoundReport):
        row = {key: str(v) for key, v in result.params.items() if key in CSV_COLUMNS}
        row.update(name=result.name, value_fraction=result.value_fraction,
                   value_decimal=result.value_decimal, regime_ok=str(result.regime_ok).lower())
        return row
    if isinstance(result, OracleResult):
        value = Fraction(result.minimum)
        return {
            "name": "oracle_min",
            "n": str(result.n),
            "k": str(result.k),
            "s": str(result.s),
            "value_fraction": f"{value.numerator}/{value.denominator}",
            "value_decimal": fraction_to_decimal(value),
            "regime_ok": str(result.complete).lower(),
        }
    raise DomainError(f"cannot tabulate {type(result).__name__}")


def emit_table(results, fmt: str = "csv") -> str:
    """Render results in input order. Output is byte-stable for a fixed input."""
    results = list(results)
    if fmt == "json":
        return json.dumps([r.to_dict() for r in results], indent=2, sort_keys=True) + "\n"
    rows = [_row(r) for r in results]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, restval="", lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "text":
        lines = []
        for row in rows:
            params = " ".join(f"{c}={row[c]}" for c in ("n", "k", "s", "t", "t1", "t2") if row.get(c))
            lines.append(f"{row['name']} {params}: {row['value_fraction']} ({row['value_decimal']})"
                         + ("" if row["regime_ok"] == "true" else " [outside regime]"))
        return "".join(line + "\n" for line in lines)
    raise DomainError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
