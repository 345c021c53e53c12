"""Embedded tables of parameter sets ruled out in the literature.

Two TSV resources ship with the package, mirroring the published tables
column for column (including the comment strings naming the external
nonexistence results).  The comments are literal metadata: the engine never
re-derives the cited theorems, it only verifies everything that can be
recomputed from the parameters themselves (r, b, integrality, and this
package's own criteria).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import cache
from importlib import resources

from .designs import QsdParams

# Remarks attached to individual rows or whole tables, kept out of the TSVs
# so those stay column-for-column copies of the published tables.
ROW_NOTES: dict[tuple[int, int, int], str] = {
    (1266, 396, 1422): (
        "Theorem 5.1 of BlokhuisCalderbank92 does not rule out this set, "
        "while Lemma 5.5 does (the theorem rules out the complementary set)."
    ),
}

SMALL_TABLE_NOTE = (
    "In the first four cases the complementary design violates Bagchi92, Theorem 1."
)


@dataclass(frozen=True)
class TableRow:
    """One embedded row: parameters as printed, plus its comment metadata."""

    v: int
    k: int
    lam: int
    y: int
    x: int
    r: int | None
    b: int | None
    comment: str
    note: str | None
    table: str

    def params(self) -> QsdParams:
        return QsdParams(v=self.v, k=self.k, lam=self.lam, x=self.x, y=self.y)


def _read_rows(resource: str, table: str, has_rb: bool) -> list[TableRow]:
    text = resources.files("qsdcheck.data").joinpath(resource).read_text(encoding="utf-8")
    reader = csv.DictReader(text.splitlines(), delimiter="\t")
    rows = []
    for rec in reader:
        v, k, lam = int(rec["v"]), int(rec["k"]), int(rec["lambda"])
        rows.append(
            TableRow(
                v=v,
                k=k,
                lam=lam,
                y=int(rec["y"]),
                x=int(rec["x"]),
                r=int(rec["r"]) if has_rb else None,
                b=int(rec["b"]) if has_rb else None,
                comment=(rec["comment"] or "").strip(),
                note=ROW_NOTES.get((v, k, lam)),
                table=table,
            )
        )
    return rows


@cache
def _bc92_rows() -> tuple[TableRow, ...]:
    return tuple(_read_rows("table_bc92.tsv", "bc92", has_rb=False))


@cache
def _small_rows() -> tuple[TableRow, ...]:
    return tuple(_read_rows("table_small.tsv", "small", has_rb=True))


def bc92_rows() -> list[TableRow]:
    """The seven large parameter sets (no printed r, b columns)."""
    return list(_bc92_rows())


def small_rows() -> list[TableRow]:
    """The seven far smaller ruled-out parameter sets (printed r, b columns)."""
    return list(_small_rows())


def all_rows() -> list[TableRow]:
    return bc92_rows() + small_rows()


@cache
def _comment_index() -> dict[tuple[int, int, int, int, int], str]:
    return {
        (row.v, row.k, row.lam, row.x, row.y): row.comment
        for row in _bc92_rows() + _small_rows()
        if row.comment
    }


def external_comment(p: QsdParams) -> str | None:
    """The embedded comment for p's exact parameter tuple, if there is one."""
    return _comment_index().get((p.v, p.k, p.lam, p.x, p.y))
