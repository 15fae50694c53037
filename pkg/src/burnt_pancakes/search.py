"""Search for optimal sequences of the form "all wastes first, then improves".

A candidate for odd ``n`` is driven by an ordering of the ``(n - 1) // 2``
cuts. Cut ``m`` is the boundary between pancakes ``2m + 2`` and ``2m + 1``;
after a full flip of -I_n the stack is the clan ``[n, ..., 1]`` and splitting
it at every cut leaves clans of size 2 plus the free pancake 1. The waste
prefix is: full flip, one split per cut in the given order, full flip. What
follows must be improves only, which :func:`greedy_improve_completion`
decides in O(n^2).

Exhaustive enumeration walks permutations in lexicographic order as a
depth-first search, so the flips for a shared prefix are applied once. Work
is split into contiguous rank ranges (one per fixed leading prefix), which
is also the unit of parallelism and of checkpointing.
"""
from __future__ import annotations

import itertools
import json
import logging
import math
import os
import time
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import FlipClass, Stack, adjacency_delta, classify_flip, flip_inplace, neg_identity
from .verify import CompletionResult, greedy_improve_completion

log = logging.getLogger(__name__)

WORKERS_ENV = "BURNT_PANCAKES_WORKERS"
CHUNK_LEAVES = 50_000
SAMPLE_BLOCK = 10_000


class SplitWasImprove(ValueError):
    def __init__(self, position: int, cut: int, k: int):
        super().__init__(f"split #{position} (cut {cut}, flip {k}) is an improve")
        self.position = position
        self.cut = cut
        self.k = k


class BoundaryNotFound(RuntimeError):
    pass


def default_workers() -> int:
    return int(os.environ.get(WORKERS_ENV, "1"))


@dataclass(frozen=True)
class SearchConfig:
    mode: str = "exhaustive"  # or "randomized"
    seed: int = 0
    sample_count: int = 1
    worker_count: int = 1
    stop_after: int | None = None
    checkpoint_dir: str | None = None

    def __post_init__(self):
        if self.mode not in ("exhaustive", "randomized"):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        if self.mode == "randomized" and self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")


@dataclass(frozen=True)
class Candidate:
    n: int
    sigma: tuple[int, ...] | None
    waste_prefix: tuple[int, ...]
    completion: CompletionResult

    @property
    def flips(self) -> tuple[int, ...]:
        return self.waste_prefix + self.completion.flips

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "sigma": None if self.sigma is None else list(self.sigma),
            "waste_prefix": list(self.waste_prefix),
            "completion": list(self.completion.flips),
            "outcome": self.completion.outcome.value,
            "flips": list(self.flips),
        }


@dataclass
class SearchResult:
    n: int
    mode: str
    candidates: list[Candidate]
    examined: int = 0
    rejected_splits: int = 0
    seed: int | None = None
    elapsed: float = 0.0
    ranges: list[tuple[int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "seed": self.seed,
            "examined": self.examined,
            "rejected_splits": self.rejected_splits,
            "successes": len(self.candidates),
            "elapsed_s": round(self.elapsed, 3),
            "candidates": [c.to_dict() for c in self.candidates],
        }


def _cut_count(n: int) -> int:
    if n % 2 == 0 or n < 3:
        raise ValueError(f"cut permutations need odd n >= 3, got {n}")
    return (n - 1) // 2


def check_cuts(n: int, sigma: Sequence[int]) -> tuple[int, ...]:
    m = _cut_count(n)
    sigma = tuple(int(c) for c in sigma)
    if sorted(sigma) != list(range(m)):
        raise ValueError(f"cut order must be a permutation of 0..{m - 1}, got {list(sigma)}")
    return sigma


def _split_length(entries: Sequence[int], cut: int) -> int:
    """Flip length separating pancakes ``2cut + 2`` and ``2cut + 1``."""
    a = 2 * cut + 1
    try:
        j = entries.index(a)
    except ValueError:
        j = entries.index(-a)
    if j > 0 and abs(entries[j - 1]) == a + 1:
        return j
    if j + 1 < len(entries) and abs(entries[j + 1]) == a + 1:
        return j + 1
    raise BoundaryNotFound(f"pancakes {a} and {a + 1} are no longer adjacent")


def waste_prefix_from_cuts(n: int, sigma: Sequence[int]) -> tuple[Stack, tuple[int, ...]]:
    """Build the waste prefix for cut order ``sigma`` and the stack it leaves."""
    sigma = check_cuts(n, sigma)
    entries = list(neg_identity(n))
    flips = [n]
    flip_inplace(entries, n)
    for pos, cut in enumerate(sigma):
        k = _split_length(entries, cut)
        if classify_flip(entries, k) is FlipClass.IMPROVE:
            raise SplitWasImprove(pos, cut, k)
        flip_inplace(entries, k)
        flips.append(k)
    flip_inplace(entries, n)
    flips.append(n)
    return tuple(entries), tuple(flips)


def cuts_from_waste_phase(n: int, waste_flips: Sequence[int]) -> tuple[int, ...]:
    """Recover the cut order behind a waste prefix of the shape above.

    Raises ``ValueError`` if some middle flip does not split a single
    still-joined pair ``{2m + 2, 2m + 1}``.
    """
    m = _cut_count(n)
    if len(waste_flips) != m + 2 or waste_flips[0] != n or waste_flips[-1] != n:
        raise ValueError("waste prefix must be: full flip, one flip per cut, full flip")
    entries = list(neg_identity(n))
    flip_inplace(entries, n)
    sigma = []
    for k in waste_flips[1:-1]:
        if not 1 <= k < n:
            raise ValueError(f"split flip {k} out of range")
        pair = {abs(entries[k - 1]), abs(entries[k])}
        hi = max(pair)
        if min(pair) != hi - 1 or hi % 2:
            raise ValueError(f"flip {k} does not split a pair {{2m+2, 2m+1}}: {sorted(pair)}")
        cut = hi // 2 - 1
        if cut in sigma:
            raise ValueError(f"cut {cut} split twice")
        sigma.append(cut)
        flip_inplace(entries, k)
    return check_cuts(n, sigma)


def evaluate_cuts(n: int, sigma: Sequence[int]) -> Candidate | None:
    """Full per-candidate pipeline; ``None`` when a split turns out to be an improve."""
    try:
        stack, prefix = waste_prefix_from_cuts(n, sigma)
    except SplitWasImprove:
        return None
    return Candidate(n, tuple(sigma), prefix, greedy_improve_completion(stack, n))


# --- exhaustive enumeration -------------------------------------------------

def _completes(entries: list[int], n: int) -> bool:
    """Greedy improve-only completion of the post-waste stack, inlined for speed."""
    adj = sum(1 for a, b in zip(entries, entries[1:]) if b == a + 1) + (entries[-1] == n)
    while adj < n:
        target = 1 - entries[0]
        if target == n + 1:
            k = n
        elif target == 0:
            return False
        else:
            try:
                k = entries.index(target)
            except ValueError:
                return False
            if entries[k - 1] == target - 1:
                return False
        entries[:k] = [-x for x in entries[k - 1::-1]]
        adj += 1
    return True


def _rank_of_prefix(prefix: Sequence[int], m: int) -> int:
    unused = list(range(m))
    rank = 0
    for i, c in enumerate(prefix):
        rank += unused.index(c) * math.factorial(m - 1 - i)
        unused.remove(c)
    return rank


def _chunk_depth(m: int) -> int:
    d = 1 if m > 1 else 0
    while math.factorial(m - d) > CHUNK_LEAVES:
        d += 1
    return d


def exhaustive_chunks(n: int, depth: int | None = None) -> list[tuple[int, ...]]:
    """Leading prefixes, in lexicographic order, each a contiguous block of ranks."""
    m = _cut_count(n)
    d = _chunk_depth(m) if depth is None else depth
    return list(itertools.permutations(range(m), d))


def _run_chunk(n: int, prefix: tuple[int, ...]) -> tuple[list[tuple[int, ...]], int, int]:
    """Enumerate every cut order starting with ``prefix``.

    Returns (successful cut orders, leaves examined, leaves rejected because
    a split was an improve).
    """
    m = _cut_count(n)
    entries = list(range(n, 0, -1))
    used = [False] * m
    path: list[int] = []
    wins: list[tuple[int, ...]] = []
    stats = [0, 0]

    def apply(cut: int) -> int:
        k = _split_length(entries, cut)
        if adjacency_delta(entries, k) == 1:
            return 0
        entries[:k] = [-x for x in entries[k - 1::-1]]
        return k

    for cut in prefix:
        k = apply(cut)
        if not k:
            return [], math.factorial(m - len(prefix)), math.factorial(m - len(prefix))
        used[cut] = True
        path.append(cut)

    def dfs(depth: int) -> None:
        if depth == m:
            stats[0] += 1
            final = [-x for x in reversed(entries)]
            if _completes(final, n):
                wins.append(tuple(path))
            return
        for cut in range(m):
            if used[cut]:
                continue
            k = apply(cut)
            if not k:
                skipped = math.factorial(m - depth - 1)
                stats[0] += skipped
                stats[1] += skipped
                continue
            used[cut] = True
            path.append(cut)
            dfs(depth + 1)
            path.pop()
            used[cut] = False
            entries[:k] = [-x for x in entries[k - 1::-1]]

    dfs(len(prefix))
    return wins, stats[0], stats[1]


def _run_chunk_args(args):
    return _run_chunk(*args)


def _checkpoint_path(directory: Path, n: int, start: int, end: int) -> Path:
    return directory / f"n{n}_ranks_{start}_{end}.json"


def _map(func, items: list, workers: int) -> Iterator:
    if workers == 1 or len(items) <= 1:
        yield from map(func, items)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(func, items, chunksize=1)


def exhaustive_search(n: int, cfg: SearchConfig | None = None, depth: int | None = None) -> SearchResult:
    """Try every cut order for ``n``; the result does not depend on ``worker_count``.

    With ``stop_after`` set, work stops once that many successes have been
    merged; the last chunk is always completed, so the count may overshoot.
    """
    cfg = cfg or SearchConfig()
    m = _cut_count(n)
    t0 = time.perf_counter()
    prefixes = exhaustive_chunks(n, depth)
    width = math.factorial(m - (len(prefixes[0]) if prefixes else 0))
    ckpt = Path(cfg.checkpoint_dir) if cfg.checkpoint_dir else None
    if ckpt:
        ckpt.mkdir(parents=True, exist_ok=True)

    result = SearchResult(n, "exhaustive", [])
    done: dict[int, tuple[list, int, int]] = {}
    todo = []
    for prefix in prefixes:
        start = _rank_of_prefix(prefix, m)
        path = ckpt and _checkpoint_path(ckpt, n, start, start + width)
        if path and path.exists():
            rec = json.loads(path.read_text())
            done[start] = ([tuple(s) for s in rec["successes"]], rec["examined"], rec["rejected_splits"])
        else:
            todo.append((start, prefix))

    pending = iter(_map(_run_chunk_args, [(n, p) for _, p in todo], cfg.worker_count))
    found = sum(len(w) for w, _, _ in done.values())
    for start, _ in todo:
        if cfg.stop_after is not None and found >= cfg.stop_after:
            break
        wins, examined, rejected = next(pending)
        done[start] = (wins, examined, rejected)
        found += len(wins)
        if ckpt:
            _checkpoint_path(ckpt, n, start, start + width).write_text(json.dumps({
                "n": n, "range_start": start, "range_end": start + width,
                "successes": [list(s) for s in wins],
                "examined": examined, "rejected_splits": rejected,
            }))
        log.debug("n=%d ranks [%d, %d): %d successes", n, start, start + width, len(wins))
    pending.close()

    for start in sorted(done):
        wins, examined, rejected = done[start]
        result.examined += examined
        result.rejected_splits += rejected
        result.ranges.append((start, start + width))
        for sigma in wins:
            cand = evaluate_cuts(n, sigma)
            assert cand is not None and cand.completion.sorted
            result.candidates.append(cand)
    result.elapsed = time.perf_counter() - t0
    return result


# --- randomized sampling ----------------------------------------------------

def sample_cut_orders(n: int, seed: int, block: int, count: int) -> np.ndarray:
    """Cut orders for sample block ``block``: numpy PCG64 seeded with ``[seed, block]``.

    Blocks are fixed-size, so sample ``i`` is the same whatever the number
    of workers.
    """
    rng = np.random.default_rng([seed, block])
    m = _cut_count(n)
    return np.stack([rng.permutation(m) for _ in range(count)]) if count else np.empty((0, m), dtype=int)


def _run_samples(args) -> tuple[list[tuple[int, ...]], int]:
    n, seed, block, count = args
    wins = []
    rejected = 0
    start = list(range(n, 0, -1))
    for sigma in sample_cut_orders(n, seed, block, count).tolist():
        entries = start[:]
        ok = True
        for cut in sigma:
            k = _split_length(entries, cut)
            if adjacency_delta(entries, k) == 1:
                ok = False
                break
            entries[:k] = [-x for x in entries[k - 1::-1]]
        if not ok:
            rejected += 1
            continue
        entries.reverse()
        entries = [-x for x in entries]
        if _completes(entries, n):
            wins.append(tuple(sigma))
    return wins, rejected


def randomized_search(n: int, cfg: SearchConfig) -> SearchResult:
    if cfg.mode != "randomized":
        raise ValueError("randomized_search needs mode='randomized'")
    _cut_count(n)
    t0 = time.perf_counter()
    nblocks = -(-cfg.sample_count // SAMPLE_BLOCK)
    jobs = [(n, cfg.seed, b, min(SAMPLE_BLOCK, cfg.sample_count - b * SAMPLE_BLOCK)) for b in range(nblocks)]
    result = SearchResult(n, "randomized", [], seed=cfg.seed)
    for job, (wins, rejected) in zip(jobs, _map(_run_samples, jobs, cfg.worker_count)):
        result.examined += job[3]
        result.rejected_splits += rejected
        for sigma in wins:
            cand = evaluate_cuts(n, sigma)
            assert cand is not None and cand.completion.sorted
            result.candidates.append(cand)
        if cfg.stop_after is not None and len(result.candidates) >= cfg.stop_after:
            break
    result.elapsed = time.perf_counter() - t0
    return result


# --- extension from n to n + 12 ---------------------------------------------

@dataclass(frozen=True)
class ExtensionSpec:
    """Search space for growing a waste prefix for ``n`` into one for ``n + offset``.

    One template is inserted before the ``n - 1`` flip (the pivot) and one
    after it. Full flips and the pivot always shift by ``offset``; every
    flip marked in ``eligible`` is tried both shifted and unshifted. The
    defaults are the two waste triples of the optimal n = 15 sequence,
    ``[15, 10, 4, 6, 14, 6, 4, 10, 15]``.
    """

    n: int
    skeleton: tuple[int, ...]
    templates: tuple[tuple[int, ...], tuple[int, ...]] = ((10, 4, 6), (6, 4, 10))
    offset: int = 12
    eligible: tuple[bool, ...] | None = None
    positions: tuple[tuple[int, int], ...] | None = None

    @property
    def target_n(self) -> int:
        return self.n + self.offset

    @property
    def pivot(self) -> int:
        return self.skeleton.index(self.n - 1)

    def eligible_mask(self) -> tuple[bool, ...]:
        if self.eligible is not None:
            if len(self.eligible) != len(self.skeleton):
                raise ValueError("eligible mask length differs from skeleton")
            return self.eligible
        piv = self.pivot
        return tuple(k != self.n and i != piv for i, k in enumerate(self.skeleton))

    def insert_positions(self) -> list[tuple[int, int]]:
        """``(p1, p2)``: templates go before skeleton indices ``p1 <= pivot < p2``."""
        if self.positions is not None:
            return list(self.positions)
        piv = self.pivot
        last = len(self.skeleton) - 1
        return [(p1, p2) for p1 in range(1, piv + 1) for p2 in range(piv + 1, last + 1)]


def _extension_slots(spec: ExtensionSpec, p1: int, p2: int) -> list[tuple[int, bool]]:
    """(base value, free?) per flip; non-free slots already carry their final value."""
    mask = spec.eligible_mask()
    piv = spec.pivot
    slots = []
    for i, k in enumerate(spec.skeleton):
        if i == p1:
            slots.extend((t, False) for t in spec.templates[0])
        if i == p2:
            slots.extend((t, False) for t in spec.templates[1])
        if mask[i]:
            slots.append((k, True))
        elif k == spec.n or i == piv:
            slots.append((k + spec.offset, False))
        else:
            slots.append((k, False))
    return slots


def _run_extension(args) -> list[tuple[int, ...]]:
    spec, p1, p2 = args
    big = spec.target_n
    slots = _extension_slots(spec, p1, p2)
    entries = list(range(-1, -big - 1, -1))
    chosen: list[int] = []
    wins: list[tuple[int, ...]] = []

    def dfs(i: int) -> None:
        if i == len(slots):
            if _completes(entries[:], big):
                wins.append(tuple(chosen))
            return
        base, free = slots[i]
        for k in ((base, base + spec.offset) if free else (base,)):
            if not 1 <= k <= big or adjacency_delta(entries, k) == 1:
                continue
            entries[:k] = [-x for x in entries[k - 1::-1]]
            chosen.append(k)
            dfs(i + 1)
            chosen.pop()
            entries[:k] = [-x for x in entries[k - 1::-1]]

    dfs(0)
    return wins


def extension_search(spec: ExtensionSpec, cfg: SearchConfig | None = None) -> SearchResult:
    """Enumerate template positions crossed with shift masks; keep prefixes that complete."""
    cfg = cfg or SearchConfig()
    t0 = time.perf_counter()
    big = spec.target_n
    jobs = [(spec, p1, p2) for p1, p2 in spec.insert_positions()]
    result = SearchResult(big, "extension", [])
    seen: set[tuple[int, ...]] = set()
    for wins in _map(_run_extension, jobs, cfg.worker_count):
        result.examined += 1
        for flips in wins:
            if flips in seen:
                continue
            seen.add(flips)
            entries = list(neg_identity(big))
            for k in flips:
                flip_inplace(entries, k)
            result.candidates.append(Candidate(big, None, flips, greedy_improve_completion(entries, big)))
        if cfg.stop_after is not None and len(result.candidates) >= cfg.stop_after:
            break
    result.elapsed = time.perf_counter() - t0
    return result
