"""Explicit permutation witnesses for equivalences between FKPs.

A ``WitnessPair`` ``(p_row, p_col)`` from ``lhs`` to ``rhs`` satisfies
``apply(p_row, lhs.build(), p_col) == rhs.build()`` exactly, with the
convention of :func:`fkpequiv.exact.apply`.  Witnesses compose and invert, so
any equivalence is assembled from three elementary moves on the factor
sequence: permuting factors, splitting a factor ``pq`` (``p``, ``q`` coprime)
into ``p, q``, and the reverse merge.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .classifier import FkpSpec, as_spec, canonicalize, census_formula, class_members, factorize, p_equivalent
from .errors import (
    DimensionError,
    InequivalentError,
    NotCoprimeError,
    NotReducibleError,
)
from .exact import (
    MAX_ENTRIES,
    DiagonalPhasing,
    PhaseExpMatrix,
    Permutation,
    apply,
    equal,
    phase,
)


@dataclass(frozen=True)
class WitnessPair:
    p_row: Permutation
    p_col: Permutation
    lhs: FkpSpec
    rhs: FkpSpec
    steps: tuple = field(default=(), compare=False)

    def __post_init__(self):
        n = self.lhs.size
        if self.rhs.size != n or self.p_row.size != n or self.p_col.size != n:
            raise DimensionError("witness sizes disagree")

    @classmethod
    def identity(cls, spec) -> "WitnessPair":
        spec = as_spec(spec)
        ident = Permutation.identity(spec.size)
        return cls(ident, ident, spec, spec)

    def is_identity(self) -> bool:
        return self.p_row.is_identity() and self.p_col.is_identity()

    def verify(self, max_entries: int = MAX_ENTRIES) -> bool:
        """Exact check ``apply(p_row, F_lhs, p_col) == F_rhs``."""
        return equal(apply(self.p_row, self.lhs.build(max_entries), self.p_col),
                     self.rhs.build(max_entries))

    def then(self, other: "WitnessPair") -> "WitnessPair":
        """Witness for ``self.lhs -> other.rhs`` (``self`` applied first)."""
        if self.rhs.size != other.lhs.size:
            raise DimensionError("witnesses do not chain")
        return WitnessPair(other.p_row * self.p_row, self.p_col * other.p_col,
                           self.lhs, other.rhs, self.steps + other.steps)

    def inverse(self) -> "WitnessPair":
        return WitnessPair(self.p_row.inverse(), self.p_col.inverse(), self.rhs, self.lhs,
                           tuple(_invert_step(s) for s in reversed(self.steps)))

    def to_dict(self, verified=None) -> dict:
        return {
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "rows": self.p_row.tolist(),
            "cols": self.p_col.tolist(),
            "steps": list(self.steps),
            "verified": verified,
        }

    def to_json(self, max_entries: int = MAX_ENTRIES) -> str:
        return json.dumps(self.to_dict(self.verify(max_entries)))


def witness_from_dict(d: dict) -> WitnessPair:
    from .classifier import parse_spec
    return WitnessPair(Permutation(d["rows"]), Permutation(d["cols"]),
                       parse_spec(d["lhs"]), parse_spec(d["rhs"]), tuple(d.get("steps", ())))


def witness_from_json(text: str) -> WitnessPair:
    return witness_from_dict(json.loads(text))


def _invert_step(step: str) -> str:
    kind, _, rest = step.partition(" ")
    if kind == "divide":
        src, _, dst = rest.partition(" -> ")
        return f"merge {dst} -> {src}"
    if kind == "merge":
        src, _, dst = rest.partition(" -> ")
        return f"divide {dst} -> {src}"
    if kind == "permute":
        src, _, dst = rest.partition(" -> ")
        return f"permute {dst} -> {src}"
    return step


# --------------------------------------------------------------------------
# CRT split
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CrtCoefficients:
    """Bezout pairs ``e*p + x*q == 1`` and ``y*p + f*q == 1``."""

    p: int
    q: int
    e: int
    x: int
    y: int
    f: int


def ext_gcd(a: int, b: int):
    """``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b)``."""
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def crt_coefficients(p: int, q: int) -> CrtCoefficients:
    """Bezout coefficients with ``x`` and ``y`` taken as least positive residues."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    g, s, t = ext_gcd(p, q)
    if g != 1:
        raise NotCoprimeError(f"gcd({p}, {q}) = {g}")
    x = t % p or p  # x*q == 1 (mod p)
    y = s % q or q  # y*p == 1 (mod q)
    e = (1 - x * q) // p
    f = (1 - y * p) // q
    return CrtCoefficients(p, q, e, x, y, f)


def split_permutations(p: int, q: int) -> WitnessPair:
    """Witness ``F_{pq} -> F_p (x) F_q`` for coprime ``p``, ``q``.

    Row ``i`` of ``F_{pq}`` goes to multiindex ``(i mod p, i mod q)`` and
    column ``j`` to ``(x*j mod p, y*j mod q)``.
    """
    c = crt_coefficients(p, q)
    n = p * q
    k = np.arange(n, dtype=np.int64)
    row_map = (k % p) * q + (k % q)
    col_map = (c.x * k % p) * q + (c.y * k % q)
    p_row = Permutation(row_map)
    p_col = Permutation(col_map).inverse()
    return WitnessPair(p_row, p_col, FkpSpec((n,)), FkpSpec((p, q)),
                       (f"divide F{n} -> F{p}*F{q}",))


def reorder_permutations(sizes, sigma) -> WitnessPair:
    """Witness ``H_1 (x) ... (x) H_r -> H_{sigma[0]} (x) ... (x) H_{sigma[r-1]}``.

    ``sigma`` is 0-based: position ``k`` of the result holds factor ``sigma[k]``.
    """
    sizes = [int(s) for s in sizes]
    sigma = [int(s) for s in sigma]
    if sorted(sigma) != list(range(len(sizes))):
        raise ValueError(f"{sigma} is not a permutation of {len(sizes)} factor positions")
    n = int(np.prod(sizes, dtype=np.int64)) if sizes else 1
    # gather[dst] = src
    gather = np.transpose(np.arange(n).reshape(sizes or [1]), sigma or [0]).ravel()
    p_col = Permutation(gather)
    p_row = p_col.inverse()
    new_sizes = [sizes[s] for s in sigma]
    lhs, rhs = FkpSpec(tuple(sizes)), FkpSpec(tuple(new_sizes))
    steps = () if sigma == sorted(sigma) else (f"permute {lhs} -> {rhs}",)
    return WitnessPair(p_row, p_col, lhs, rhs, steps)


def embed_witness(inner: WitnessPair, position: int, outer_sizes) -> WitnessPair:
    """Lift a witness on the factor ``outer_sizes[position]`` to the whole product.

    ``position`` is 0-based.  The factor there must have the size of
    ``inner.lhs``; it is replaced by the factors of ``inner.rhs``.
    """
    outer = [int(s) for s in outer_sizes]
    if not 0 <= position < len(outer):
        raise IndexError(f"position {position} out of range for {outer}")
    if outer[position] != inner.lhs.size:
        raise DimensionError(
            f"factor {outer[position]} at position {position} does not match witness size {inner.lhs.size}")
    left = int(np.prod(outer[:position], dtype=np.int64))
    right = int(np.prod(outer[position + 1:], dtype=np.int64))
    il, ir = Permutation.identity(left), Permutation.identity(right)
    p_row = il.kron(inner.p_row).kron(ir)
    p_col = il.kron(inner.p_col).kron(ir)
    rhs = outer[:position] + list(inner.rhs.factors) + outer[position + 1:]
    return WitnessPair(p_row, p_col, FkpSpec(tuple(outer)), FkpSpec(tuple(rhs)), inner.steps)


def _prime_power_sort_key(f: int):
    (p, k), = factorize(f).items()
    return (-p, -k)


def to_canonical_witness(spec) -> WitnessPair:
    """Witness from ``spec`` to its canonical prime-power representative."""
    spec = as_spec(spec)
    w = WitnessPair.identity(spec)
    current = list(spec.factors)
    pos = 0
    while pos < len(current):
        f = current[pos]
        fac = factorize(f)
        if len(fac) > 1:
            p, k = max(fac.items())
            pp = p ** k
            step = embed_witness(split_permutations(pp, f // pp), pos, current)
            w = w.then(step)
            current = list(step.rhs.factors)
        else:
            pos += 1
    sigma = sorted(range(len(current)), key=lambda i: _prime_power_sort_key(current[i]))
    if sigma != list(range(len(current))):
        w = w.then(reorder_permutations(current, sigma))
    return w


def witness_equivalence(a, b) -> WitnessPair:
    """Verified-by-construction witness ``a -> b``, routed through the canonical form."""
    a, b = as_spec(a), as_spec(b)
    if a.factors == b.factors:
        return WitnessPair.identity(a)
    if not p_equivalent(a, b):
        ca, cb = census_formula(a), census_formula(b)
        raise InequivalentError(f"{a} and {b} are not equivalent", ca, cb)
    wa = to_canonical_witness(a)
    wb = to_canonical_witness(b)
    return wa.then(wb.inverse())


# --------------------------------------------------------------------------
# Phasing -> permutation
# --------------------------------------------------------------------------

def dephase_to_flat(a: PhaseExpMatrix, i: int, j: int):
    """The unique ``(D_r, D_c)`` with ``d_c[0] == 0`` flattening row ``i`` and column ``j``.

    The phases are forced one after another: ``d_r[i]`` by entry ``(i, 0)``,
    then all of ``d_c`` by row ``i``, then the remaining ``d_r`` by column ``j``.
    """
    n, m = a.size, a.modulus
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"({i}, {j}) out of range for size {n}")
    e = a.exponents
    d_row_i = -e[i, 0]
    d_col = -e[i, :] - d_row_i
    d_row = -e[:, j] - d_col[j]  # entry i agrees with d_row_i
    return DiagonalPhasing(m, d_row), DiagonalPhasing(m, d_col)


def _shift_permutation(n: int, shift: int) -> Permutation:
    return Permutation((np.arange(n) + shift) % n, check=False)


def phasing_to_permutations(spec, i: int, j: int) -> WitnessPair:
    """Permutations with the same effect as ``dephase_to_flat(F, i, j)``.

    For one factor ``F_n`` the rows are cyclically shifted so that row 0 lands
    at row ``i`` and the columns so that column 0 lands at column ``j``; for a
    product the per-factor shifts are combined factor by factor.  The
    returned pair goes from ``spec`` to ``spec`` and maps ``F`` onto the
    dephased matrix, not onto ``F`` itself.
    """
    spec = as_spec(spec)
    n = spec.size
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"({i}, {j}) out of range for size {n}")
    sizes = spec.factors or (1,)
    ii = np.unravel_index(i, sizes)
    jj = np.unravel_index(j, sizes)
    p_row = Permutation.identity(1)
    p_col = Permutation.identity(1)
    for nk, ik, jk in zip(sizes, ii, jj):
        p_row = p_row.kron(_shift_permutation(nk, int(ik)))
        p_col = p_col.kron(_shift_permutation(nk, -int(jk)))
    return WitnessPair(p_row, p_col, spec, spec, (f"shift rows by {i}, columns by {j}",))


def _identify_fkp(mat: PhaseExpMatrix, spec: FkpSpec, max_entries: int):
    for member in class_members(canonicalize(spec)):
        for order in sorted(set(itertools.permutations(member))):
            cand = FkpSpec(order)
            if equal(mat, cand.build(max_entries)):
                return cand
    return None


def pd_to_p_witness(p_row: Permutation, d_row: DiagonalPhasing, spec, d_col: DiagonalPhasing,
                    p_col: Permutation, target=None, max_entries: int = MAX_ENTRIES) -> WitnessPair:
    """Replace ``apply(p_row, phase(d_row, F, d_col), p_col)`` by pure permutations.

    The composite must be an FKP.  ``target`` names it; when omitted it is
    looked up among the orderings of the members of the class of ``spec``.
    """
    spec = as_spec(spec)
    f = spec.build(max_entries)
    phased = phase(d_row, f, d_col)
    composite = apply(p_row, phased, p_col)
    i = p_row.inverse()[0]
    j = p_col[0]
    e = phased.exponents
    if e[i].any() or e[:, j].any():
        raise NotReducibleError("the phased matrix has no flat row/column mapped to row/column 0")
    if target is None:
        target = _identify_fkp(composite, spec, max_entries)
        if target is None:
            raise NotReducibleError("composite matrix is not an FKP equivalent to the input")
    else:
        target = as_spec(target)
        if not equal(composite, target.build(max_entries)):
            raise NotReducibleError(f"composite matrix is not {target}")
    shift = phasing_to_permutations(spec, i, j)
    return WitnessPair(p_row * shift.p_row, shift.p_col * p_col, spec, target,
                       shift.steps + (f"permute {spec} -> {target}",))
