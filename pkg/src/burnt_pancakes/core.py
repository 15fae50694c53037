"""Burnt pancake stacks as signed permutations.

A stack is a tuple of nonzero ints, top first. ``-k`` is pancake ``k`` burnt
side up. Below the last entry sits a virtual pancake ``n + 1`` that never
moves; it only matters when counting adjacencies at the bottom.
"""
from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from typing import NamedTuple

Stack = tuple[int, ...]


class InvalidStackError(ValueError):
    pass


class FlipRangeError(ValueError):
    pass


class FlipClass(enum.Enum):
    IMPROVE = "improve"
    WASTE = "waste"


class RunKind(enum.Enum):
    BLOCK = "block"
    CLAN = "clan"
    FREE = "free"


class Segment(NamedTuple):
    start: int  # 0-based
    length: int
    kind: RunKind


def make_stack(entries: Iterable[int]) -> Stack:
    """Validate ``entries`` as a signed permutation and return it as a tuple."""
    stack = tuple(int(x) for x in entries)
    n = len(stack)
    if n == 0:
        raise InvalidStackError("empty stack")
    if sorted(abs(x) for x in stack) != list(range(1, n + 1)):
        raise InvalidStackError(f"not a signed permutation of 1..{n}: {list(stack)}")
    return stack


def neg_identity(n: int) -> Stack:
    if n < 1:
        raise ValueError(f"stack size must be positive, got {n}")
    return tuple(range(-1, -n - 1, -1))


def identity(n: int) -> Stack:
    if n < 1:
        raise ValueError(f"stack size must be positive, got {n}")
    return tuple(range(1, n + 1))


def is_sorted(stack: Sequence[int]) -> bool:
    return all(x == i for i, x in enumerate(stack, 1))


def _check_flip(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise FlipRangeError(f"flip length {k} outside [1, {n}]")


def flip(stack: Stack, k: int) -> Stack:
    """Reverse the top ``k`` pancakes and turn each one over."""
    _check_flip(len(stack), k)
    return tuple(-x for x in stack[k - 1::-1]) + stack[k:]


def flip_inplace(entries: list[int], k: int) -> None:
    # no range check: hot path for replay and search
    entries[:k] = [-x for x in entries[k - 1::-1]]


def apply_flips(stack: Stack, flips: Iterable[int]) -> Stack:
    entries = list(stack)
    n = len(entries)
    for k in flips:
        _check_flip(n, k)
        flip_inplace(entries, k)
    return tuple(entries)


def adjacency_count(stack: Sequence[int]) -> int:
    """Number of vertically consecutive pairs ``(a, a + 1)``, virtual bottom included."""
    n = len(stack)
    count = sum(1 for a, b in zip(stack, stack[1:]) if b == a + 1)
    return count + (stack[-1] == n)


def adjacency_delta(stack: Sequence[int], k: int) -> int:
    """Change in :func:`adjacency_count` caused by flipping ``k`` pancakes.

    Pairs inside the flipped prefix map ``(a, b) -> (-b, -a)`` and keep their
    status, so only the pair straddling the cut can change.
    """
    n = len(stack)
    below = stack[k] if k < n else n + 1
    before = below == stack[k - 1] + 1
    after = below == -stack[0] + 1
    return after - before


def classify_flip(stack: Sequence[int], k: int) -> FlipClass:
    _check_flip(len(stack), k)
    return FlipClass.IMPROVE if adjacency_delta(stack, k) == 1 else FlipClass.WASTE


def improve_candidate(stack: Sequence[int]) -> int | None:
    """The only flip length that can be an improve, or ``None``.

    An improve must bring the pancake ``-top + 1`` directly under the old top,
    which pins the cut just above wherever that pancake currently sits.
    """
    n = len(stack)
    target = -stack[0] + 1
    if target == n + 1:
        return n
    if not 1 <= abs(target) <= n:
        return None
    try:
        j = stack.index(target)
    except ValueError:
        return None
    if stack[j - 1] + 1 == target:
        return None
    return j


def decompose_runs(stack: Sequence[int]) -> list[Segment]:
    segments = []
    n = len(stack)
    i = 0
    while i < n:
        j = i + 1
        if j < n and stack[j] == stack[i] + 1:
            while j < n and stack[j] == stack[j - 1] + 1:
                j += 1
            kind = RunKind.BLOCK
        elif j < n and stack[j] == stack[i] - 1:
            while j < n and stack[j] == stack[j - 1] - 1:
                j += 1
            kind = RunKind.CLAN
        else:
            kind = RunKind.FREE
        segments.append(Segment(i, j - i, kind))
        i = j
    return segments


def max_clan_size(stack: Sequence[int]) -> int:
    return max((seg.length for seg in decompose_runs(stack) if seg.kind is RunKind.CLAN), default=0)
