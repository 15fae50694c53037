"""Optimal flipping sequences for the burnt pancake stack -I_n.

Modules: :mod:`.core` (stacks, flips, adjacencies), :mod:`.sequences`
(closed-form sequences for n = 1 mod 4), :mod:`.verify` (replay, traces,
improve-only completion), :mod:`.search` (waste-first candidate search),
:mod:`.exact` (graph-search oracle for small n) and :mod:`.cli`.
"""
from .core import (
    FlipClass,
    RunKind,
    adjacency_count,
    apply_flips,
    classify_flip,
    decompose_runs,
    flip,
    identity,
    improve_candidate,
    make_stack,
    max_clan_size,
    neg_identity,
)
from .exact import bfs_T, bidirectional_T, g_of_n, ida_T, optimal_first_flip_full, t_bounds
from .sequences import expected_lengths, family_of, generate
from .verify import greedy_improve_completion, trace, verify_sorts

__version__ = "0.1.0"
