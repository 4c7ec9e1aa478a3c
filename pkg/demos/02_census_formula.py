"""Closed-form row censuses from introduction indices."""
from fkpequiv import build, census_formula, census_formula_pure, census_oracle, introduction_indices

# F_16 x F_8 x F_8 x F_2: built right to left, F_2 first brings orders 1 and 2,
# the first F_8 brings 4 and 8, F_16 brings 16
print("introduction indices:", introduction_indices([4, 3, 3, 1]))
print("census:", census_formula_pure(2, [4, 3, 3, 1]))

# formula and direct row classification agree, also across primes
for factors in ([4, 2], [12, 2], [9, 4], [6, 6]):
    formula, oracle = census_formula(factors), census_oracle(build(factors))
    print(factors, formula, "agree" if formula == oracle else "DISAGREE")
