"""CSV / Markdown / JSON serialization of counting tables.

The CSV shape mirrors the reference tables: header ``n\\k,0,1,...,K``, one
row per n, and an empty cell wherever k exceeds the maximal inversion count
n(n-1)/2 (for difference rows, the cap of the longer row applies).
"""

from __future__ import annotations

import json
from typing import Sequence

from .enumeration import CountTable
from .perms import parse_basis


def _count_cap(n: int) -> int:
    return n * (n - 1) // 2


def table_to_csv(table: CountTable) -> str:
    lines = ["n\\k," + ",".join(str(k) for k in range(table.k_max + 1))]
    for n in range(1, table.n_max + 1):
        cap = _count_cap(n)
        cells = [
            "" if k > cap else str(table.rows[n - 1][k])
            for k in range(table.k_max + 1)
        ]
        lines.append(f"{n}," + ",".join(cells))
    return "\n".join(lines) + "\n"


def diffs_to_csv(table: CountTable, diffs: Sequence[Sequence[int]]) -> str:
    lines = ["n\\k," + ",".join(str(k) for k in range(table.k_max + 1))]
    for n in range(1, table.n_max):
        cap = _count_cap(n + 1)
        cells = [
            "" if k > cap else str(diffs[n - 1][k]) for k in range(table.k_max + 1)
        ]
        lines.append(f"{n}," + ",".join(cells))
    return "\n".join(lines) + "\n"


def csv_to_cells(text: str) -> dict[int, list[int | None]]:
    """Rows keyed by n; blank cells become None."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    out: dict[int, list[int | None]] = {}
    for ln in lines[1:]:
        parts = ln.split(",")
        out[int(parts[0])] = [None if c == "" else int(c) for c in parts[1:]]
    return out


def table_from_csv(text: str, basis_text: str) -> CountTable:
    cells = csv_to_cells(text)
    n_max = max(cells)
    k_max = len(next(iter(cells.values()))) - 1
    rows = tuple(
        tuple(0 if v is None else v for v in cells[n]) for n in range(1, n_max + 1)
    )
    return CountTable(basis=parse_basis(basis_text), n_max=n_max, k_max=k_max, rows=rows)


def table_to_markdown(table: CountTable) -> str:
    header = ["n\\k"] + [str(k) for k in range(table.k_max + 1)]
    lines = ["| " + " | ".join(header) + " |"]
    lines.append("|" + "---|" * len(header))
    for n in range(1, table.n_max + 1):
        cap = _count_cap(n)
        cells = [str(n)] + [
            "" if k > cap else str(table.rows[n - 1][k])
            for k in range(table.k_max + 1)
        ]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def table_to_json(table: CountTable) -> str:
    payload = {
        "basis": table.basis_text,
        "n_max": table.n_max,
        "k_max": table.k_max,
        "rows": [list(row) for row in table.rows],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def table_from_json(text: str) -> CountTable:
    payload = json.loads(text)
    return CountTable(
        basis=parse_basis(payload["basis"]),
        n_max=payload["n_max"],
        k_max=payload["k_max"],
        rows=tuple(tuple(row) for row in payload["rows"]),
    )
