"""Exact classification of Kronecker products of Fourier matrices.

The building blocks live in :mod:`fkpequiv.exact` (phase-exponent matrices,
permutations, the brute-force oracle), :mod:`fkpequiv.classifier` (canonical
forms, row censuses, class enumeration) and :mod:`fkpequiv.witness`
(explicit permutation witnesses).
"""
from .classifier import (
    CanonicalForm,
    ClassDescriptor,
    FkpSpec,
    canonicalize,
    census_formula,
    census_formula_pure,
    class_count,
    enumerate_classes,
    introduction_indices,
    p_equivalent,
    parse_spec,
    partition_count,
    pd_equivalent,
)
from .errors import (
    CapacityError,
    DimensionError,
    FkpError,
    InequivalentError,
    InvalidSizeError,
    NotAnFkpError,
    NotCoprimeError,
    NotReducibleError,
    OrderingError,
    ParseError,
)
from .exact import (
    DiagonalPhasing,
    PhaseExpMatrix,
    Permutation,
    apply,
    brute_force_equiv,
    build,
    census_oracle,
    equal,
    fourier,
    kron,
    phase,
    row_phase_order,
)
from .witness import (
    CrtCoefficients,
    WitnessPair,
    crt_coefficients,
    dephase_to_flat,
    embed_witness,
    pd_to_p_witness,
    phasing_to_permutations,
    reorder_permutations,
    split_permutations,
    witness_equivalence,
)

__version__ = "0.1.0"
