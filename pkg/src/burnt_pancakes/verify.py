"""Replay, certify and trace flipping sequences.

Trace text format
-----------------
One state per bracketed list of signed ints, wrapped at ``width`` entries per
line. The first state is prefixed ``start``, each later state with
``flip <k>``. Lines starting with ``#`` are comments and an optional
``Step <tag>:`` line marks where a phase begins. Parsing only looks at the
numbers, so whitespace and wrapping do not matter::

    # n=3 flips=1
    start [-1, -2, -3]
    flip 3 [3, 2, 1]
"""
from __future__ import annotations

import enum
import re
from collections.abc import Sequence
from dataclasses import dataclass, field

from .core import (
    FlipClass,
    FlipRangeError,
    Stack,
    adjacency_delta,
    flip_inplace,
    improve_candidate,
    is_sorted,
    neg_identity,
)
from .sequences import AnnotatedSeq


class InvalidFlipError(FlipRangeError):
    def __init__(self, index: int, k: int, n: int):
        super().__init__(f"flip #{index} has length {k}, outside [1, {n}]")
        self.index = index
        self.k = k


@dataclass(frozen=True)
class PhaseViolation:
    index: int
    phase: str
    expected: FlipClass
    actual: FlipClass


@dataclass(frozen=True)
class VerifyReport:
    n: int
    sorted: bool
    total_flips: int
    waste_count: int
    improve_count: int
    final_stack: Stack
    phase_violations: tuple[PhaseViolation, ...] = ()

    @property
    def ok(self) -> bool:
        return self.sorted and not self.phase_violations

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "sorted": self.sorted,
            "total_flips": self.total_flips,
            "waste_count": self.waste_count,
            "improve_count": self.improve_count,
            "phase_violations": [
                {"index": v.index, "phase": v.phase, "expected": v.expected.value, "actual": v.actual.value}
                for v in self.phase_violations
            ],
            "final_stack": list(self.final_stack),
        }


def _unpack(seq) -> tuple[Sequence[int], Sequence[str] | None]:
    if isinstance(seq, AnnotatedSeq):
        return seq.flips, seq.phases
    return seq, None


def _expected_class(phase: str) -> FlipClass:
    return FlipClass.WASTE if phase.startswith("W") else FlipClass.IMPROVE


def verify_sorts(n: int, seq, phases: Sequence[str] | None = None) -> VerifyReport:
    """Replay ``seq`` on -I_n, classifying every flip.

    ``seq`` is an :class:`AnnotatedSeq` or a plain list of flip lengths, in
    which case phase tags may be passed separately. With tags, a W-phase
    improve or an A/B-phase waste is reported as a violation.
    """
    flips, tags = _unpack(seq)
    if phases is not None:
        tags = phases
    if tags is not None and len(tags) != len(flips):
        raise ValueError(f"{len(tags)} phase tags for {len(flips)} flips")
    entries = list(neg_identity(n))
    improves = 0
    violations = []
    for i, k in enumerate(flips):
        if not 1 <= k <= n:
            raise InvalidFlipError(i, k, n)
        cls = FlipClass.IMPROVE if adjacency_delta(entries, k) == 1 else FlipClass.WASTE
        improves += cls is FlipClass.IMPROVE
        if tags is not None and cls is not _expected_class(tags[i]):
            violations.append(PhaseViolation(i, tags[i], _expected_class(tags[i]), cls))
        flip_inplace(entries, k)
    return VerifyReport(
        n=n,
        sorted=is_sorted(entries),
        total_flips=len(flips),
        waste_count=len(flips) - improves,
        improve_count=improves,
        final_stack=tuple(entries),
        phase_violations=tuple(violations),
    )


@dataclass(frozen=True)
class Trace:
    states: tuple[Stack, ...]
    flips: tuple[int, ...]
    phases: tuple[str, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.states[0])

    def first_mismatch(self) -> int | None:
        """Index ``i`` of the first flip with ``states[i+1] != flip(states[i])``."""
        if len(self.states) != len(self.flips) + 1:
            return min(len(self.states), len(self.flips))
        for i, k in enumerate(self.flips):
            entries = list(self.states[i])
            flip_inplace(entries, k)
            if tuple(entries) != self.states[i + 1]:
                return i
        return None


def trace(n: int, seq, start: Stack | None = None, phases: Sequence[str] | None = None) -> Trace:
    flips, tags = _unpack(seq)
    if phases is not None:
        tags = phases
    entries = list(neg_identity(n) if start is None else start)
    states = [tuple(entries)]
    for i, k in enumerate(flips):
        if not 1 <= k <= n:
            raise InvalidFlipError(i, k, n)
        flip_inplace(entries, k)
        states.append(tuple(entries))
    return Trace(tuple(states), tuple(flips), None if tags is None else tuple(tags))


def _render_state(state: Stack, width: int, indent: str) -> str:
    rows = [", ".join(str(x) for x in state[i:i + width]) for i in range(0, len(state), width)]
    return "[" + (",\n" + indent).join(rows) + "]"


def render_trace(tr: Trace, width: int = 15) -> str:
    lines = [f"# n={tr.n} flips={len(tr.flips)}"]
    lines.append("start " + _render_state(tr.states[0], width, " " * 7))
    for i, k in enumerate(tr.flips):
        if tr.phases is not None and (i == 0 or tr.phases[i] != tr.phases[i - 1]):
            lines.append(f"Step {tr.phases[i]}:")
        prefix = f"flip {k} "
        lines.append(prefix + _render_state(tr.states[i + 1], width, " " * (len(prefix) + 1)))
    return "\n".join(lines) + "\n"


_TRACE_TOKEN = re.compile(r"(start|flip\s+(\d+))\s*\[([^\]]*)\]")


def parse_trace(text: str) -> Trace:
    body = "\n".join(line for line in text.splitlines() if not line.lstrip().startswith("#"))
    states, flips = [], []
    for m in _TRACE_TOKEN.finditer(body):
        values = tuple(int(v) for v in m.group(3).replace("\n", " ").split(",") if v.strip())
        if m.group(1) == "start":
            if states:
                raise ValueError("trace has more than one start state")
        else:
            if not states:
                raise ValueError("flip before start state")
            flips.append(int(m.group(2)))
        states.append(values)
    if not states:
        raise ValueError("no states found in trace text")
    return Trace(tuple(states), tuple(flips))


class Outcome(enum.Enum):
    SORTED = "sorted"
    STUCK = "stuck"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class CompletionResult:
    outcome: Outcome
    flips: tuple[int, ...]
    stack: Stack
    reason: str = field(default="")

    @property
    def sorted(self) -> bool:
        return self.outcome is Outcome.SORTED


def greedy_improve_completion(stack: Sequence[int], budget: int) -> CompletionResult:
    """Try to sort ``stack`` with improves only, using at most ``budget`` flips.

    Each state has at most one improve (see :func:`improve_candidate`), so
    following it is the whole search: O(n) per step, O(n^2) overall.
    """
    entries = list(stack)
    flips: list[int] = []
    while True:
        if is_sorted(entries):
            return CompletionResult(Outcome.SORTED, tuple(flips), tuple(entries))
        k = improve_candidate(entries)
        if k is None:
            return CompletionResult(
                Outcome.STUCK, tuple(flips), tuple(entries),
                f"no improve with {entries[0]} on top",
            )
        if len(flips) >= budget:
            return CompletionResult(Outcome.BUDGET_EXCEEDED, tuple(flips), tuple(entries))
        flip_inplace(entries, k)
        flips.append(k)
