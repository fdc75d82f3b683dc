"""Bundled corpus of alternating knot diagrams with frozen invariants.

The CSV ships with the package (data/corpus.csv) and is regenerated by
tools/gen_corpus.py from an enumeration of small checkerboard graphs.  The
stored sigma/det/alexander/genus columns are read back as integers and a
Laurent polynomial so tests can compare recomputed values against them.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources

from .invariants import LaurentPolynomial


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    pd: str
    sigma: int
    det: int
    alexander: LaurentPolynomial
    genus: int

    @property
    def crossings(self) -> int:
        return 0 if not self.pd.strip() else self.pd.count("X(")


def load_corpus() -> tuple[CorpusEntry, ...]:
    text = (
        resources.files("knotcert").joinpath("data/corpus.csv").read_text("utf-8")
    )
    entries = []
    for row in csv.DictReader(io.StringIO(text)):
        entries.append(
            CorpusEntry(
                name=row["name"],
                pd=row["pd"],
                sigma=int(row["sigma"]),
                det=int(row["det"]),
                alexander=LaurentPolynomial.from_string(row["alexander"]),
                genus=int(row["genus"]),
            )
        )
    return tuple(entries)


def corpus_entry(name: str) -> CorpusEntry:
    for e in load_corpus():
        if e.name == name:
            return e
    raise KeyError(name)
