"""Explicit permutations realizing equivalences."""
from fkpequiv import apply, build, equal, split_permutations, witness_equivalence

# F_6 -> F_2 x F_3 through the Chinese remainder index maps
w = split_permutations(2, 3)
print("rows:", w.p_row.tolist(), "cols:", w.p_col.tolist())
print("F_2 x F_3 recovered:", equal(apply(w.p_row, build([6]), w.p_col), build([2, 3])))

# a longer chain: split everything into prime powers, sort, merge back
w = witness_equivalence([8, 6], [24, 2])
for step in w.steps:
    print("  ", step)
print("verified:", w.verify())
print(w.to_json()[:120], "...")
