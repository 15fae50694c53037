"""Reference sequences with every intermediate stack, for n = 61, 53 and 57."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .core import Stack
from .formats import SequenceDocument
from .verify import Trace, verify_sorts

CORPUS_IDS = ("a61", "b53", "c57")


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    n: int
    flips: tuple[int, ...]
    phases: tuple[str, ...]
    states: tuple[Stack, ...]
    provenance: str = ""

    def document(self) -> SequenceDocument:
        return SequenceDocument(self.n, self.flips, None, self.phases, self.provenance)

    def trace(self) -> Trace:
        return Trace(self.states, self.flips, self.phases)


def load_entry(entry_id: str, corpus_dir: str | Path | None = None) -> CorpusEntry:
    if corpus_dir is None:
        if entry_id not in CORPUS_IDS:
            raise KeyError(f"unknown corpus entry {entry_id!r}; have {', '.join(CORPUS_IDS)}")
        raw = resources.files("burnt_pancakes").joinpath("data", f"{entry_id}.json").read_text()
    else:
        raw = (Path(corpus_dir) / f"{entry_id}.json").read_text()
    d = json.loads(raw)
    entry = CorpusEntry(
        id=d["id"],
        n=d["n"],
        flips=tuple(d["flips"]),
        phases=tuple(d["phases"]),
        states=tuple(tuple(s) for s in d["states"]),
        provenance=d.get("provenance", ""),
    )
    _check(entry)
    return entry


def _check(entry: CorpusEntry) -> None:
    if len(entry.flips) != (3 * entry.n + 3) // 2:
        raise ValueError(f"{entry.id}: {len(entry.flips)} flips, expected {(3 * entry.n + 3) // 2}")
    if not verify_sorts(entry.n, entry.flips).sorted:
        raise ValueError(f"{entry.id}: flips do not sort -I_{entry.n}")
    bad = entry.trace().first_mismatch()
    if bad is not None:
        raise ValueError(f"{entry.id}: listed state after flip #{bad} does not follow from the flip")


def first_divergence(states: tuple[Stack, ...], golden: tuple[Stack, ...]) -> int | None:
    """Index of the first state that differs, counting a length mismatch as divergence."""
    for i, (a, b) in enumerate(zip(states, golden)):
        if tuple(a) != tuple(b):
            return i
    if len(states) != len(golden):
        return min(len(states), len(golden))
    return None
