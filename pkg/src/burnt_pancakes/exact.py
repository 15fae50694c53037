"""Exact distances in the burnt pancake graph for small n.

The graph has 2^n * n! vertices and every vertex has degree n (flip lengths
1..n, each an involution, so the graph is undirected). Three independent
solvers compute T(n), the distance from -I_n to I_n:

* ``bfs``: layer-by-layer BFS over dense ranks with a distance byte per
  vertex, vectorized with numpy. Starting from I_n also yields g(n), the
  largest distance to I_n, and any distance query afterwards.
* ``bidir``: meet-in-the-middle BFS over bit-packed states.
* ``ida``: IDA* with the admissible bound ``n - adjacency_count``.

Witnesses are the lexicographically smallest optimal flip sequence.
"""
from __future__ import annotations

import dataclasses
import enum
import functools
import json
import math
import os
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import Stack, adjacency_count, adjacency_delta, flip, identity, neg_identity

LIMITS_ENV = "BURNT_PANCAKES_LIMITS"
BITS = 5  # per position: 4 bits of |value| - 1, then the sign bit
PACK_LIMIT = 12  # 12 * 5 = 60 bits fit a uint64


class LimitExceeded(ValueError):
    pass


class TimeBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Limits:
    bfs: int = 8
    bidir: int = 10
    ida: int = 12
    reverse: int = 7

    @classmethod
    def from_env(cls) -> Limits:
        """Read overrides like ``bfs=9,reverse=8`` from ``BURNT_PANCAKES_LIMITS``."""
        raw = os.environ.get(LIMITS_ENV, "").strip()
        if not raw:
            return cls()
        values = {}
        for part in raw.split(","):
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in {f.name for f in dataclasses.fields(cls)}:
                raise ValueError(f"unknown limit {key!r} in {LIMITS_ENV}")
            values[key] = int(val)
        return cls(**values)


def _limit(n: int, name: str, limit: int | None) -> None:
    if limit is None:
        limit = getattr(Limits.from_env(), name)
    if not 1 <= n <= limit:
        raise LimitExceeded(f"n={n} outside the {name} limit 1..{limit}")


class Method(enum.Enum):
    BFS = "bfs"
    BIDIR = "bidir"
    IDA = "ida"


@dataclass(frozen=True)
class SolveResult:
    n: int
    t_value: int
    witness: tuple[int, ...]
    explored: int
    method: Method
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "t_value": self.t_value,
            "witness": list(self.witness),
            "explored": self.explored,
            "method": self.method.value,
            "elapsed_s": round(self.elapsed, 3),
        }

    @classmethod
    def from_dict(cls, d: dict) -> SolveResult:
        return cls(d["n"], d["t_value"], tuple(d["witness"]), d["explored"], Method(d["method"]),
                   d.get("elapsed_s", 0.0))


# --- state encodings ----------------------------------------------------------

def encode(stack: Stack) -> int:
    """Pack a stack into an int, 5 bits per position, top in the low bits."""
    if len(stack) > 16:
        raise LimitExceeded("packing holds at most 16 pancakes")
    code = 0
    for i, v in enumerate(stack):
        code |= ((abs(v) - 1) | (16 if v < 0 else 0)) << (BITS * i)
    return code


def decode(code: int, n: int) -> Stack:
    out = []
    for i in range(n):
        field = (code >> (BITS * i)) & 31
        v = (field & 15) + 1
        out.append(-v if field & 16 else v)
    return tuple(out)


def encode_array(states: np.ndarray) -> np.ndarray:
    """Row-wise :func:`encode` for an ``(m, n)`` int array, ``n <= 12``."""
    n = states.shape[1]
    if n > PACK_LIMIT:
        raise LimitExceeded(f"uint64 packing holds at most {PACK_LIMIT} pancakes")
    fields = (np.abs(states).astype(np.uint64) - np.uint64(1)) | (states < 0).astype(np.uint64) << np.uint64(4)
    shifts = (np.arange(n, dtype=np.uint64) * np.uint64(BITS))
    return np.bitwise_or.reduce(fields << shifts, axis=1)


def decode_array(codes: np.ndarray, n: int) -> np.ndarray:
    shifts = np.arange(n, dtype=np.uint64) * np.uint64(BITS)
    fields = (codes[:, None] >> shifts) & np.uint64(31)
    vals = (fields & np.uint64(15)).astype(np.int8) + 1
    return np.where(fields & np.uint64(16), -vals, vals).astype(np.int8)


def state_count(n: int) -> int:
    return 2 ** n * math.factorial(n)


def rank_array(states: np.ndarray) -> np.ndarray:
    """Dense index in ``[0, 2^n n!)``: Lehmer rank of the magnitudes, then sign bits."""
    m, n = states.shape
    mags = np.abs(states)
    rank = np.zeros(m, dtype=np.int64)
    for i in range(n - 1):
        smaller = (mags[:, i + 1:] < mags[:, i:i + 1]).sum(axis=1)
        rank = rank * (n - i) + smaller
    signs = np.zeros(m, dtype=np.int64)
    for i in range(n):
        signs |= (states[:, i] < 0).astype(np.int64) << i
    return (rank << n) | signs


def unrank_array(ranks: np.ndarray, n: int) -> np.ndarray:
    ranks = np.asarray(ranks, dtype=np.int64)
    m = len(ranks)
    signs = ranks & ((1 << n) - 1)
    perm_rank = ranks >> n
    digits = np.empty((m, n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        base = n - i
        digits[:, i] = perm_rank % base
        perm_rank //= base
    avail = np.tile(np.arange(1, n + 1, dtype=np.int8), (m, 1))
    rows = np.arange(m)
    out = np.empty((m, n), dtype=np.int8)
    for i in range(n):
        idx = digits[:, i]
        out[:, i] = avail[rows, idx]
        keep = np.ones(avail.shape, dtype=bool)
        keep[rows, idx] = False
        avail = avail[keep].reshape(m, n - i - 1)
    for i in range(n):
        neg = (signs >> i) & 1 == 1
        out[neg, i] = -out[neg, i]
    return out


def rank(stack: Stack) -> int:
    return int(rank_array(np.array([stack], dtype=np.int8))[0])


def _flip_rows(states: np.ndarray, k: int) -> np.ndarray:
    out = states.copy()
    out[:, :k] = -states[:, k - 1::-1]
    return out


# --- full BFS over dense ranks ------------------------------------------------

@functools.lru_cache(maxsize=2)
def distances_to_identity(n: int) -> np.ndarray:
    """``dist[rank(S)]`` = flips needed to sort ``S``; int8, -1 never occurs after return."""
    dist = np.full(state_count(n), -1, dtype=np.int8)
    frontier = np.array([rank(identity(n))], dtype=np.int64)
    dist[frontier] = 0
    d = 0
    while len(frontier):
        states = unrank_array(frontier, n)
        found = []
        for k in range(1, n + 1):
            r = rank_array(_flip_rows(states, k))
            found.append(r[dist[r] < 0])
        frontier = np.unique(np.concatenate(found))
        d += 1
        dist[frontier] = d
    dist.setflags(write=False)
    return dist


def distance(stack: Stack) -> int:
    return int(distances_to_identity(len(stack))[rank(stack)])


def _greedy_witness(start: Stack, d: int, dist_of) -> tuple[int, ...]:
    """Smallest flip at each step that stays on a shortest path."""
    n = len(start)
    state, out = start, []
    while d:
        for k in range(1, n + 1):
            nxt = flip(state, k)
            if dist_of(nxt, len(out) + 1) == d - 1:
                state, d = nxt, d - 1
                out.append(k)
                break
        else:
            raise AssertionError("no neighbor closer to the goal")
    return tuple(out)


def bfs_T(n: int, limit: int | None = None) -> SolveResult:
    _limit(n, "bfs", limit)
    t0 = time.perf_counter()
    dist = distances_to_identity(n)
    start = neg_identity(n)
    t = int(dist[rank(start)])
    witness = _greedy_witness(start, t, lambda s, _: int(dist[rank(s)]))
    return SolveResult(n, t, witness, int(np.count_nonzero(dist >= 0)), Method.BFS,
                       time.perf_counter() - t0)


def g_of_n(n: int, limit: int | None = None) -> int:
    """Largest distance to I_n over all stacks (reverse BFS from I_n)."""
    _limit(n, "reverse", limit)
    return int(distances_to_identity(n).max())


def optimal_first_flip_full(n: int, limit: int | None = None) -> bool:
    _limit(n, "bfs", limit)
    start = neg_identity(n)
    return 1 + distance(flip(start, n)) == distance(start)


# --- bidirectional BFS over packed codes --------------------------------------

def _expand(codes: np.ndarray, n: int) -> np.ndarray:
    states = decode_array(codes, n)
    return np.unique(np.concatenate([encode_array(_flip_rows(states, k)) for k in range(1, n + 1)]))


def bidirectional_T(n: int, limit: int | None = None) -> SolveResult:
    _limit(n, "bidir", limit)
    t0 = time.perf_counter()
    src, dst = encode(neg_identity(n)), encode(identity(n))
    fwd = [np.array([src], dtype=np.uint64)]
    bwd = [np.array([dst], dtype=np.uint64)]
    seen_f, seen_b = fwd[0], bwd[0]
    best = None
    if src == dst:
        best = 0
    while best is None:
        # grow the smaller side
        grow_fwd = len(fwd[-1]) <= len(bwd[-1])
        layers, seen = (fwd, seen_f) if grow_fwd else (bwd, seen_b)
        new = _expand(layers[-1], n)
        new = new[~np.isin(new, seen, assume_unique=True)]
        layers.append(new)
        seen = np.union1d(seen, new)
        if grow_fwd:
            seen_f = seen
        else:
            seen_b = seen
        other = bwd if grow_fwd else fwd
        for j, layer in enumerate(other):
            if np.isin(new, layer, assume_unique=True).any():
                best = len(layers) - 1 + j
                break
    t = best

    # Forward states that still lie on a shortest path: layer i must reach
    # bwd[t - i] directly when that layer exists, otherwise via layer i + 1.
    b = len(bwd) - 1
    good: dict[int, np.ndarray] = {}
    i = t
    while i >= 0:
        if t - i <= b:
            good[i] = bwd[t - i] if i >= len(fwd) else np.intersect1d(fwd[i], bwd[t - i])
        else:
            good[i] = np.intersect1d(fwd[i], _expand(good[i + 1], n))
        i -= 1

    def dist_of(stack: Stack, step: int) -> int:
        code = np.array([encode(stack)], dtype=np.uint64)
        if step in good and np.isin(code, good[step]).any():
            return t - step
        return -1

    witness = _greedy_witness(neg_identity(n), t, dist_of)
    explored = len(seen_f) + len(seen_b)
    return SolveResult(n, t, witness, explored, Method.BIDIR, time.perf_counter() - t0)


# --- IDA* -----------------------------------------------------------------------

def heuristic(stack: Stack) -> int:
    """Lower bound on flips to sort: each flip adds at most one adjacency."""
    return len(stack) - adjacency_count(stack)


def ida_T(n: int, limit: int | None = None, time_budget: float | None = None) -> SolveResult:
    _limit(n, "ida", limit)
    t0 = time.perf_counter()
    entries = list(neg_identity(n))
    path: list[int] = []
    explored = 0

    def dfs(g: int, h: int, bound: int, last: int) -> int:
        nonlocal explored
        explored += 1
        f = g + h
        if f > bound:
            return f
        if h == 0:
            return -1
        if time_budget is not None and explored % 4096 == 0 and time.perf_counter() - t0 > time_budget:
            raise TimeBudgetExceeded(f"IDA* for n={n} exceeded {time_budget}s")
        nxt_bound = math.inf
        for k in range(1, n + 1):
            if k == last:
                continue
            dh = -adjacency_delta(entries, k)
            if g + 1 + h + dh > bound:
                nxt_bound = min(nxt_bound, g + 1 + h + dh)
                continue
            entries[:k] = [-x for x in entries[k - 1::-1]]
            path.append(k)
            r = dfs(g + 1, h + dh, bound, k)
            if r == -1:
                return -1
            path.pop()
            entries[:k] = [-x for x in entries[k - 1::-1]]
            nxt_bound = min(nxt_bound, r)
        return nxt_bound

    h0 = bound = heuristic(tuple(entries))
    while True:
        r = dfs(0, h0, bound, 0)
        if r == -1:
            break
        bound = r
    return SolveResult(n, len(path), tuple(path), explored, Method.IDA, time.perf_counter() - t0)


_SOLVERS = {Method.BFS: bfs_T, Method.BIDIR: bidirectional_T, Method.IDA: ida_T}


def solve(n: int, method: Method | str = Method.BFS, cache_dir: str | Path | None = None,
          limit: int | None = None) -> SolveResult:
    """Dispatch to a solver, reusing ``cache_dir/T_n{n}_{method}.json`` when present."""
    method = Method(method)
    path = Path(cache_dir) / f"T_n{n}_{method.value}.json" if cache_dir else None
    if path and path.exists():
        return SolveResult.from_dict(json.loads(path.read_text()))
    result = _SOLVERS[method](n, limit=limit)
    if path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(result.to_dict()))
    return result


# --- closed-form values ---------------------------------------------------------

@dataclass(frozen=True)
class Bounds:
    kind: str  # "exact", "range" or "needs_solver"
    lo: int | None = None
    hi: int | None = None

    def __str__(self) -> str:
        if self.kind == "exact":
            return f"Exact {self.lo}"
        if self.kind == "range":
            return f"Range {self.lo}..{self.hi}"
        return "NeedsSolver"


def t_bounds(n: int) -> Bounds:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n % 2 and n >= 19:
        v = (3 * n + 3) // 2
        return Bounds("exact", v, v)
    if n == 17:
        return Bounds("exact", 28, 28)
    if n % 2 == 0 and n >= 14:
        return Bounds("range", 3 * n // 2 + 1, 3 * n // 2 + 2)
    return Bounds("needs_solver")
