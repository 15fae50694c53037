"""Build the optimal sequence for a few stack sizes and check it by replay.

Run: python3 demos/generate_and_verify.py
"""
from burnt_pancakes import generate, verify_sorts
from burnt_pancakes.core import decompose_runs
from burnt_pancakes.verify import trace

for n in (29, 33, 37, 53):
    seq = generate(n)
    rep = verify_sorts(n, seq)
    print(f"n={n:3d} family={seq.family.name} flips={rep.total_flips} "
          f"wastes={rep.waste_count} improves={rep.improve_count} sorted={rep.sorted}")

# The waste phase leaves the stack as pairs [x+1, x] plus the lone -1 on top.
seq = generate(29)
after_w = trace(29, seq.phase("W")).states[-1]
print("after the waste phase:", after_w)
print("runs:", [(s.kind.value, s.length) for s in decompose_runs(after_w)][:6], "...")

# Every flip from there on is the unique adjacency-creating flip.
print("first improves:", seq.phase("A")[:8])
