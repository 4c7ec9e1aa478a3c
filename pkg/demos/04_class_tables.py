"""Equivalence classes of all FKPs of a given size."""
from fkpequiv import class_count, enumerate_classes

for n in (30, 48, 36, 16, 72):
    classes = enumerate_classes(n)
    k = class_count(n)
    print(f"N={n}: {k} class{'es' if k != 1 else ''}")
    for c in classes:
        members = ", ".join("x".join(f"F{f}" for f in m) for m in c.members)
        print(f"  [{c.representative}] {members}")

# the count is a product of partition numbers of the prime exponents
print([class_count(n) for n in (2**10, 2**5 * 3**3, 2 * 3 * 5 * 7)])
