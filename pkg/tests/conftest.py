"""Brute-force oracles kept independent of the package's fast paths."""
from __future__ import annotations

import itertools
import random
from collections import deque

import pytest


def naive_flip(stack, k):
    top = [-x for x in reversed(stack[:k])]
    return tuple(top) + tuple(stack[k:])


def naive_adjacencies(stack):
    padded = list(stack) + [len(stack) + 1]
    return sum(1 for i in range(len(stack)) if padded[i + 1] == padded[i] + 1)


def all_stacks(n):
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            yield tuple(s * v for s, v in zip(signs, perm))


def naive_distances(n):
    """Plain dict BFS from the sorted stack over every signed permutation."""
    start = tuple(range(1, n + 1))
    dist = {start: 0}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for k in range(1, n + 1):
            t = naive_flip(s, k)
            if t not in dist:
                dist[t] = dist[s] + 1
                queue.append(t)
    return dist


def random_stack(rng: random.Random, n: int):
    vals = list(range(1, n + 1))
    rng.shuffle(vals)
    return tuple(v if rng.random() < 0.5 else -v for v in vals)


@pytest.fixture
def rng():
    return random.Random(20240229)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
