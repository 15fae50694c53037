"""Sequence documents: a flip list for one stack size, optionally phase-tagged.

JSON form (validated against :data:`SEQUENCE_SCHEMA`)::

    {"n": 53, "family": "S5", "flips": [53, 44, ...], "phases": ["W1", ...],
     "provenance": "..."}

Text form: an optional ``# n=53 family=S5`` header, then flip lengths
separated by whitespace. A line may start with a phase tag (``W1: 53 44``),
in which case every flip on it carries that tag.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

import jsonschema

from .sequences import PHASES, AnnotatedSeq

SEQUENCE_SCHEMA = {
    "type": "object",
    "required": ["n", "flips"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "family": {"type": ["string", "null"], "enum": ["S1", "S5", "S9", None]},
        "flips": {"type": "array", "items": {"type": "integer"}},
        "phases": {"type": ["array", "null"], "items": {"enum": list(PHASES)}},
        "provenance": {"type": "string"},
    },
}


class DocumentError(ValueError):
    pass


@dataclass(frozen=True)
class SequenceDocument:
    n: int
    flips: tuple[int, ...]
    family: str | None = None
    phases: tuple[str, ...] | None = None
    provenance: str = ""

    def __post_init__(self):
        bad = [k for k in self.flips if not 1 <= k <= self.n]
        if bad:
            raise DocumentError(f"flips outside [1, {self.n}]: {bad[:5]}")
        if self.phases is not None and len(self.phases) != len(self.flips):
            raise DocumentError(f"{len(self.phases)} phase tags for {len(self.flips)} flips")

    @classmethod
    def from_seq(cls, seq: AnnotatedSeq, provenance: str = "") -> SequenceDocument:
        return cls(seq.n, seq.flips, seq.family.name, seq.phases, provenance)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "family": self.family,
            "flips": list(self.flips),
            "phases": None if self.phases is None else list(self.phases),
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, d: dict) -> SequenceDocument:
        try:
            jsonschema.validate(d, SEQUENCE_SCHEMA)
        except jsonschema.ValidationError as exc:
            raise DocumentError(f"invalid sequence document: {exc.message}") from exc
        phases = d.get("phases")
        return cls(d["n"], tuple(d["flips"]), d.get("family"),
                   None if phases is None else tuple(phases), d.get("provenance", ""))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def to_text(self) -> str:
        head = f"# n={self.n}"
        if self.family:
            head += f" family={self.family}"
        lines = [head]
        if self.provenance:
            lines.append(f"# {self.provenance}")
        if self.phases is None:
            lines.append(" ".join(map(str, self.flips)))
        else:
            i = 0
            while i < len(self.flips):
                tag = self.phases[i]
                j = i
                while j < len(self.flips) and self.phases[j] == tag:
                    j += 1
                lines.append(f"{tag}: " + " ".join(map(str, self.flips[i:j])))
                i = j
        return "\n".join(lines) + "\n"


_HEADER = re.compile(r"#\s*n\s*=\s*(\d+)(?:\s+family\s*=\s*(\w+))?")
_TAGGED = re.compile(r"^\s*([WAB][1-6])\s*:(.*)$")


def parse_text(text: str, n: int | None = None) -> SequenceDocument:
    family = None
    flips: list[int] = []
    phases: list[str] = []
    tagged = untagged = False
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            m = _HEADER.match(stripped)
            if m and n is None:
                n = int(m.group(1))
                family = m.group(2)
            continue
        m = _TAGGED.match(line)
        body = m.group(2) if m else line
        try:
            values = [int(tok) for tok in body.replace(",", " ").split()]
        except ValueError as exc:
            raise DocumentError(f"cannot parse flips from line {line!r}") from exc
        if m:
            tagged = True
            phases.extend([m.group(1)] * len(values))
        else:
            untagged = True
        flips.extend(values)
    if n is None:
        raise DocumentError("stack size unknown: add '# n=<size>' or pass n")
    if tagged and untagged:
        raise DocumentError("mixes phase-tagged and untagged lines")
    return SequenceDocument(n, tuple(flips), family, tuple(phases) if tagged else None)


def parse_document(text: str, n: int | None = None) -> SequenceDocument:
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"bad JSON: {exc}") from exc
        if n is not None:
            data.setdefault("n", n)
        return SequenceDocument.from_dict(data)
    return parse_text(text, n)


def load_document(path: str | Path, n: int | None = None) -> SequenceDocument:
    return parse_document(Path(path).read_text(), n)
