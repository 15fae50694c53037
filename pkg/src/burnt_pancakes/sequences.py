"""Closed-form optimal flipping sequences for -I_n, n = 1 (mod 4), n >= 29.

Each sequence splits into a waste phase W (steps W1..W6) followed by two
improve phases A (A1..A5) and B (B1..B3). Indexed steps such as
``{44 + 12i, 4, 6} for 0 <= i < s`` expand group by group in increasing ``i``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

PHASES = ("W1", "W2", "W3", "W4", "W5", "W6", "A1", "A2", "A3", "A4", "A5", "B1", "B2", "B3")


class FamilyError(ValueError):
    pass


class EvenNError(FamilyError):
    pass


class ResidueThreeMod4Error(FamilyError):
    """n = 3 (mod 4): those sequences come from a different construction."""


class BelowMinimumError(FamilyError):
    pass


class Family(enum.Enum):
    S1 = (1, 37)
    S5 = (5, 29)
    S9 = (9, 33)

    def __init__(self, residue: int, min_n: int):
        self.residue = residue
        self.min_n = min_n

    def s_param(self, n: int) -> int:
        return (n - self.min_n) // 12


@dataclass(frozen=True)
class AnnotatedSeq:
    n: int
    family: Family
    flips: tuple[int, ...]
    phases: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.flips)

    def phase(self, letter: str) -> tuple[int, ...]:
        """Flips whose tag starts with ``letter`` (``"W"``, ``"A"`` or ``"B"``)."""
        return tuple(k for k, p in zip(self.flips, self.phases) if p.startswith(letter))

    def step(self, tag: str) -> tuple[int, ...]:
        return tuple(k for k, p in zip(self.flips, self.phases) if p == tag)


def family_of(n: int) -> Family:
    if n % 2 == 0:
        raise EvenNError(f"even n: T(n) in {{3n/2+1, 3n/2+2}}, no sequence family for n={n}")
    if n % 4 == 3:
        raise ResidueThreeMod4Error(f"n={n} is 3 mod 4; not covered by these families")
    fam = {1: Family.S1, 5: Family.S5, 9: Family.S9}[n % 12]
    if n < fam.min_n:
        raise BelowMinimumError(f"n={n} is below the minimum {fam.min_n} for family {fam.name}")
    return fam


def _div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    assert r == 0, f"{a} not divisible by {b}"
    return q


def _s1(n: int, s: int) -> dict[str, list[int]]:
    h = _div(n - 1, 2)
    t = _div(2 * n + 1, 3)
    return {
        "W1": [n, n - 9, n - 21, n - 13, n - 15],
        "W2": [n - 39 - 6 * i for i in range(2 * s)],
        "W3": [6 + 12 * i for i in range(s)],
        "W4": [n - 19, 10, n - 1, n - 13, n - 15, 14, n - 9, n - 19, n - 15, 12, n - 3, 2, 14, n - 17],
        "W5": [k for i in range(s) for k in (6, 4, n - 39 - 12 * i)],
        "W6": [n],
        "A1": [6, 32, 14, 20, 10, 2, 28, 4, 30, 8],
        "A2": [k for i in range(s) for k in (44 + 12 * i, 4, 6)],
        "A3": [n - 1],
        "A4": [k for i in range(s) for k in (n - 9 - 6 * i, n - 11 - 12 * i, n - 5 - 6 * i)],
        "A5": [h, h + 4, h - 2, 10, h - 4, h + 2, h + 8, n],
        "B1": [t + 3],
        "B2": [k for i in range(s)
               for k in (t - 3 - 8 * i, t - 1 - 8 * i, t + 7 + 4 * i, 6 + 12 * i, 4 + 12 * i, t + 3 + 4 * i)],
        "B3": [10, 24, 2, n - 3, n - 15, n - 19, n - 17, n - 11, n - 27, n - 9, n - 1, n - 21,
               n - 9, 4, 6, 18, 14],
    }


def _s5(n: int, s: int) -> dict[str, list[int]]:
    h = _div(n - 1, 2)
    t = _div(2 * n - 1, 3)
    return {
        "W1": [n, n - 9, 4, 10, n - 3, n - 15, n - 25],
        "W2": [n - 31 - 6 * i for i in range(2 * s)],
        "W3": [6 + 12 * i for i in range(s)],
        "W4": [n - 7, n - 1, n - 11, 6, 4, n - 5, 10, n - 15],
        "W5": [k for i in range(s) for k in (6, 4, n - 31 - 12 * i)],
        "W6": [n],
        "A1": [18, 20, 12, 4, 6, 24, 16, 26, 16, 4, 18],
        "A2": [k for i in range(s) for k in (36 + 12 * i, 4, 6)],
        "A3": [n - 1],
        "A4": [k for i in range(s) for k in (n - 9 - 6 * i, n - 11 - 12 * i, n - 5 - 6 * i)],
        "A5": [h - 6, h + 6, n],
        "B1": [t - 3],
        "B2": [k for i in range(s)
               for k in (t - 9 - 8 * i, t - 7 - 8 * i, t + 1 + 4 * i, 6 + 12 * i, 4 + 12 * i, t - 3 + 4 * i)],
        "B3": [12, n - 5, 4, n - 13, n - 15, n - 21, n - 25, n - 11, n - 9, n - 1, 6, 4, 14],
    }


def _s9(n: int, s: int) -> dict[str, list[int]]:
    h = _div(n - 1, 2)
    t = _div(2 * n, 3)
    return {
        "W1": [n, 14, 4, 10, n - 7, n - 29],
        "W2": [n - 35 - 6 * i for i in range(2 * s)],
        "W3": [6 + 12 * i for i in range(s)],
        "W4": [n - 11, n - 1, n - 9, 4, n - 13, n - 11, 8, 10, n - 5, 10, n - 19],
        "W5": [k for i in range(s) for k in (6, 4, n - 35 - 12 * i)],
        "W6": [n],
        "A1": [24, 16, 14, 4],
        "A2": [k for i in range(s) for k in (40 + 12 * i, 4, 6)],
        "A3": [n - 1],
        "A4": [k for i in range(s) for k in (n - 9 - 6 * i, n - 11 - 12 * i, n - 5 - 6 * i)],
        "A5": [h + 10, 12, 10, 4, 14, 22, 6, 24, h + 14, h - 6, h, n],
        "B1": [t],
        "B2": [k for i in range(s)
               for k in (t - 6 - 8 * i, t - 4 - 8 * i, t + 4 + 4 * i, 6 + 12 * i, 4 + 12 * i, t + 4 * i)],
        "B3": [18, n - 5, n - 19, n - 13, 8, n - 19, n - 29, n - 9, 14, n - 1, n - 17, n - 13, 10, 4, n - 9],
    }


_BUILDERS = {Family.S1: _s1, Family.S5: _s5, Family.S9: _s9}

# (|W|, |A|, |B|) at s = 0; each grows by 6 per unit of s
_BASE_LENGTHS = {Family.S1: (20, 19, 18), Family.S5: (16, 15, 14), Family.S9: (18, 17, 16)}


def generate(n: int) -> AnnotatedSeq:
    fam = family_of(n)
    steps = _BUILDERS[fam](n, fam.s_param(n))
    flips: list[int] = []
    phases: list[str] = []
    for tag in PHASES:
        flips.extend(steps[tag])
        phases.extend([tag] * len(steps[tag]))
    return AnnotatedSeq(n, fam, tuple(flips), tuple(phases))


def expected_lengths(n: int) -> tuple[int, int, int]:
    fam = family_of(n)
    s = fam.s_param(n)
    w, a, b = _BASE_LENGTHS[fam]
    return w + 6 * s, a + 6 * s, b + 6 * s
