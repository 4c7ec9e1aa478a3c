"""Diagonal phasings of an FKP that keep it flat are just permutations."""
import numpy as np

from fkpequiv import (
    DiagonalPhasing,
    FkpSpec,
    apply,
    dephase_to_flat,
    equal,
    pd_to_p_witness,
    phase,
    phasing_to_permutations,
)

spec = FkpSpec((4, 3))
f = spec.build()

# make row 5 and column 7 flat; the phasing pair is forced
d_row, d_col = dephase_to_flat(f, 5, 7)
print("d_row:", d_row.exponents.tolist())
print("d_col:", d_col.exponents.tolist())

# the same matrix by cyclic shifts of each factor
w = phasing_to_permutations(spec, 5, 7)
print("same as permuting:", equal(phase(d_row, f, d_col), apply(w.p_row, f, w.p_col)))

# a disguise P_r D_r F D_c P_c that lands on F itself is undone by permutations alone
rng = np.random.default_rng(0)
c = int(rng.integers(0, 12))
d_row = DiagonalPhasing(12, d_row.exponents + c)
d_col = DiagonalPhasing(12, d_col.exponents - c)
pw = pd_to_p_witness(w.p_row.inverse(), d_row, spec, d_col, w.p_col.inverse())
print("pure permutation witness verified:", pw.verify())
