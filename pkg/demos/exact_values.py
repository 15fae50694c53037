"""Exact minimum flip counts for small stacks by graph search.

Run: python3 demos/exact_values.py     (n up to 7 takes a few seconds)
"""
from burnt_pancakes.exact import bfs_T, bidirectional_T, g_of_n, ida_T, t_bounds

for n in range(1, 8):
    r = bfs_T(n)
    print(f"T({n}) = {r.t_value:2d}  bidir={bidirectional_T(n).t_value:2d} "
          f"ida={ida_T(n).t_value:2d}  g({n})={g_of_n(n):2d}  witness={' '.join(map(str, r.witness))}")

for n in (17, 19, 20, 21, 37):
    print(f"bounds({n}) = {t_bounds(n)}")
