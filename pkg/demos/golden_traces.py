"""Compare generated sequences against the bundled hand-checked step listings.

Run: python3 demos/golden_traces.py
"""
from burnt_pancakes.corpus import CORPUS_IDS, first_divergence, load_entry
from burnt_pancakes.sequences import generate
from burnt_pancakes.verify import render_trace, trace

for cid in CORPUS_IDS:
    entry = load_entry(cid)
    tr = trace(entry.n, generate(entry.n))
    at = first_divergence(tr.states, entry.states)
    print(f"{cid}: n={entry.n} {len(entry.flips)} flips, "
          + ("every state matches" if at is None else f"first difference at state {at}"))

# The text form shows each intermediate stack, folded at 15 entries per line.
print()
print("\n".join(render_trace(trace(53, generate(53)), width=15).splitlines()[:6]))
