"""Search for sequences made of wastes first, then greedy improves.

Each candidate is an order in which to split the (n-1)/2 pairs of the
upturned stack. After the splits and a final full flip, the remaining
improves are forced, so a candidate either sorts in (3n+3)/2 flips or not.

Run: python3 demos/waste_prefix_search.py      (about half a minute)
"""
from burnt_pancakes.search import (
    ExtensionSpec,
    SearchConfig,
    cuts_from_waste_phase,
    evaluate_cuts,
    exhaustive_search,
    extension_search,
    randomized_search,
)
from burnt_pancakes.sequences import generate

for n in (13, 15, 17):
    res = exhaustive_search(n)
    print(f"exhaustive n={n}: {res.examined} orders, {len(res.candidates)} successes, {res.elapsed:.1f}s")
    for c in res.candidates:
        print("   waste prefix", c.waste_prefix)

# n=29 has 14! orders, far too many here. The generated sequence still
# corresponds to one of them.
w = generate(29).phase("W")
sigma = cuts_from_waste_phase(29, w)
cand = evaluate_cuts(29, sigma)
print("n=29 order behind the generated sequence:", sigma, "->", cand.completion.outcome.value)

res = randomized_search(15, SearchConfig(mode="randomized", seed=7, sample_count=5000))
print(f"randomized n=15, seed 7: {len(res.candidates)} hits in {res.examined} samples")

# Grow the n=29 waste prefix into n=41 ones by splicing in two triples of wastes.
res = extension_search(ExtensionSpec(29, w))
target = generate(41).phase("W")
print(f"extension 29 -> 41: {len(res.candidates)} successes, "
      f"generated one among them: {any(c.waste_prefix == target for c in res.candidates)}")
