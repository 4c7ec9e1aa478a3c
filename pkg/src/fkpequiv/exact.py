"""Exact flat-unitary matrices stored as integer phase exponents.

A ``PhaseExpMatrix`` with modulus ``M`` stands for the matrix whose entry
``(i, j)`` is ``exp(2*pi*1j * e[i, j] / M) / sqrt(N)``.  The common amplitude
is never stored, so two matrices are equal exactly when their exponents agree
after rescaling to a common modulus.  No floating point is involved anywhere.

Indices are 0-based throughout; row ``i`` here is row ``i + 1`` in the usual
1-based matrix notation.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Optional

import numpy as np

from .errors import (
    CapacityError,
    DimensionError,
    InvalidSizeError,
    NotAnFkpError,
)

#: default limit on the number of stored entries (N*N) of a built matrix
MAX_ENTRIES = 2**20
#: default size cap of the brute-force equivalence search
ORACLE_CAP = 12

RowCensus = dict  # phase order n -> number of rows of type [n, 1]


def _frozen(arr) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _check_capacity(n: int, max_entries: int) -> None:
    if n * n > max_entries:
        raise CapacityError(f"matrix of size {n} needs {n * n} entries, limit is {max_entries}")


# --------------------------------------------------------------------------
# Permutations
# --------------------------------------------------------------------------

class Permutation:
    """A bijection of ``{0, ..., N-1}`` stored as its image array.

    ``p[k]`` is the image of ``k``.  ``p * q`` is the composition
    ``k -> p[q[k]]`` (apply ``q`` first).
    """

    __slots__ = ("_image",)

    def __init__(self, image, check: bool = True):
        image = _frozen(image)
        if image.ndim != 1:
            raise DimensionError("permutation image must be one-dimensional")
        if check:
            n = len(image)
            seen = np.zeros(n, dtype=bool)
            if n and (image.min() < 0 or image.max() >= n):
                raise ValueError(f"{image.tolist()} is not a permutation")
            seen[image] = True
            if not seen.all():
                raise ValueError(f"{image.tolist()} is not a permutation")
        self._image = image

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n), check=False)

    @property
    def size(self) -> int:
        return len(self._image)

    @property
    def image(self) -> np.ndarray:
        return self._image

    def __len__(self):
        return len(self._image)

    def __getitem__(self, k):
        return int(self._image[k])

    def __iter__(self):
        return iter(self._image.tolist())

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self._image, other._image)

    def __hash__(self):
        return hash(self._image.tobytes())

    def __repr__(self):
        return f"Permutation({self._image.tolist()})"

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.size != other.size:
            raise DimensionError("cannot compose permutations of different sizes")
        return Permutation(self._image[other._image], check=False)

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self._image)
        inv[self._image] = np.arange(self.size)
        return Permutation(inv, check=False)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._image, np.arange(self.size)))

    def kron(self, other: "Permutation") -> "Permutation":
        """The permutation acting as ``self`` on the left Kronecker factor and
        ``other`` on the right one."""
        m = other.size
        img = (self._image[:, None] * m + other._image[None, :]).ravel()
        return Permutation(img, check=False)

    def tolist(self) -> list:
        return self._image.tolist()


# --------------------------------------------------------------------------
# Phase exponent matrices and diagonal phasings
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PhaseExpMatrix:
    modulus: int
    exponents: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidSizeError("modulus must be positive")
        e = np.asarray(self.exponents, dtype=np.int64)
        if e.ndim != 2 or e.shape[0] != e.shape[1] or e.shape[0] == 0:
            raise DimensionError(f"exponents must be a non-empty square array, got {e.shape}")
        object.__setattr__(self, "exponents", _frozen(np.mod(e, self.modulus)))

    @property
    def size(self) -> int:
        return self.exponents.shape[0]

    def __repr__(self):
        return f"PhaseExpMatrix(size={self.size}, modulus={self.modulus})"

    def __eq__(self, other):
        if not isinstance(other, PhaseExpMatrix):
            return NotImplemented
        return equal(self, other)

    __hash__ = None

    def rescaled(self, modulus: int) -> "PhaseExpMatrix":
        """Same matrix written over a multiple of the current modulus."""
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        return PhaseExpMatrix(modulus, self.exponents * (modulus // self.modulus))

    def reduced(self) -> "PhaseExpMatrix":
        """Same matrix over the smallest modulus able to express it."""
        g = gcd(self.modulus, *np.unique(self.exponents).tolist())
        if g == 1:
            return self
        return PhaseExpMatrix(self.modulus // g, self.exponents // g)

    def to_complex(self) -> np.ndarray:
        """Floating point view, for display and sanity checks only."""
        n = self.size
        return np.exp(2j * np.pi * self.exponents / self.modulus) / np.sqrt(n)


@dataclass(frozen=True, eq=False)
class DiagonalPhasing:
    """Unitary diagonal matrix with entries ``exp(2*pi*1j * d[k] / M)``."""

    modulus: int
    exponents: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidSizeError("modulus must be positive")
        d = np.asarray(self.exponents, dtype=np.int64)
        if d.ndim != 1:
            raise DimensionError("phasing exponents must be one-dimensional")
        object.__setattr__(self, "exponents", _frozen(np.mod(d, self.modulus)))

    @classmethod
    def zero(cls, n: int, modulus: int = 1) -> "DiagonalPhasing":
        return cls(modulus, np.zeros(n, dtype=np.int64))

    @property
    def size(self) -> int:
        return len(self.exponents)

    def rescaled(self, modulus: int) -> "DiagonalPhasing":
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        return DiagonalPhasing(modulus, self.exponents * (modulus // self.modulus))

    def __eq__(self, other):
        if not isinstance(other, DiagonalPhasing):
            return NotImplemented
        if self.size != other.size:
            return False
        m = lcm(self.modulus, other.modulus)
        return bool(np.array_equal(self.rescaled(m).exponents, other.rescaled(m).exponents))

    __hash__ = None

    def __repr__(self):
        return f"DiagonalPhasing(modulus={self.modulus}, exponents={self.exponents.tolist()})"


def fourier(n: int, max_entries: int = MAX_ENTRIES) -> PhaseExpMatrix:
    """Unitary Fourier matrix of size ``n``: exponent ``i*j mod n`` over modulus ``n``."""
    if n < 1:
        raise InvalidSizeError(f"Fourier matrix size must be positive, got {n}")
    _check_capacity(n, max_entries)
    k = np.arange(n, dtype=np.int64)
    return PhaseExpMatrix(n, np.outer(k, k) % n)


def kron(a: PhaseExpMatrix, b: PhaseExpMatrix, max_entries: int = MAX_ENTRIES) -> PhaseExpMatrix:
    """Kronecker product ``a (x) b`` with the left factor most significant."""
    n = a.size * b.size
    _check_capacity(n, max_entries)
    m = lcm(a.modulus, b.modulus)
    ea = a.exponents * (m // a.modulus)
    eb = b.exponents * (m // b.modulus)
    e = ea[:, None, :, None] + eb[None, :, None, :]
    return PhaseExpMatrix(m, e.reshape(n, n) % m)


def kron_all(mats, max_entries: int = MAX_ENTRIES) -> PhaseExpMatrix:
    out = PhaseExpMatrix(1, np.zeros((1, 1), dtype=np.int64))
    for m in mats:
        out = kron(out, m, max_entries)
    return out


def build(factors, max_entries: int = MAX_ENTRIES) -> PhaseExpMatrix:
    """``F_{n1} (x) F_{n2} (x) ...`` for the given factor sizes."""
    n = 1
    for f in factors:
        if f < 1:
            raise InvalidSizeError(f"factor sizes must be positive, got {f}")
        n *= f
    _check_capacity(n, max_entries)
    return kron_all((fourier(f, max_entries) for f in factors), max_entries)


def apply(p_row: Permutation, a: PhaseExpMatrix, p_col: Permutation) -> PhaseExpMatrix:
    """Permute rows and columns: ``result[p_row[i], j] == a[i, p_col[j]]``.

    Row ``i`` of ``a`` lands at row ``p_row[i]``; column ``j`` of the result
    is column ``p_col[j]`` of ``a``.
    """
    if p_row.size != a.size or p_col.size != a.size:
        raise DimensionError(
            f"permutation sizes ({p_row.size}, {p_col.size}) do not match matrix size {a.size}")
    out = np.empty_like(a.exponents)
    out[p_row.image] = a.exponents[:, p_col.image]
    return PhaseExpMatrix(a.modulus, out)


def phase(d_row: DiagonalPhasing, a: PhaseExpMatrix, d_col: DiagonalPhasing) -> PhaseExpMatrix:
    """``D_r . a . D_c``: adds ``d_row[i] + d_col[j]`` to exponent ``(i, j)``."""
    if d_row.size != a.size or d_col.size != a.size:
        raise DimensionError(
            f"phasing sizes ({d_row.size}, {d_col.size}) do not match matrix size {a.size}")
    m = lcm(d_row.modulus, a.modulus, d_col.modulus)
    e = (a.exponents * (m // a.modulus)
         + (d_row.exponents * (m // d_row.modulus))[:, None]
         + (d_col.exponents * (m // d_col.modulus))[None, :])
    return PhaseExpMatrix(m, e % m)


def _row_order(row: np.ndarray, modulus: int) -> Optional[int]:
    counts = np.bincount(row, minlength=modulus)
    present = np.flatnonzero(counts)
    n = len(present)
    if modulus % n:
        return None
    step = modulus // n
    if not np.array_equal(present, np.arange(0, modulus, step)):
        return None
    c = counts[present]
    if not (c == c[0]).all():
        return None
    return n


def row_phase_order(a: PhaseExpMatrix, i: int) -> Optional[int]:
    """Phase order ``n`` of row ``i`` (a row of type ``[n, 1]``), or ``None``.

    The row must hold exactly the residues ``0, M/n, 2M/n, ...``, each the
    same number of times.
    """
    if not 0 <= i < a.size:
        raise IndexError(f"row {i} out of range for size {a.size}")
    return _row_order(a.exponents[i], a.modulus)


def census_oracle(a: PhaseExpMatrix) -> RowCensus:
    """Row census by direct classification of every row."""
    counts = Counter()
    for i in range(a.size):
        n = _row_order(a.exponents[i], a.modulus)
        if n is None:
            raise NotAnFkpError(f"row {i} is not of any type [n, 1]")
        counts[n] += 1
    return dict(sorted(counts.items()))


def equal(a: PhaseExpMatrix, b: PhaseExpMatrix) -> bool:
    if a.size != b.size:
        return False
    ra, rb = a.reduced(), b.reduced()
    return ra.modulus == rb.modulus and bool(np.array_equal(ra.exponents, rb.exponents))


# --------------------------------------------------------------------------
# Brute-force permutation equivalence
# --------------------------------------------------------------------------

def brute_force_equiv(a: PhaseExpMatrix, b: PhaseExpMatrix, cap: int = ORACLE_CAP):
    """Search for ``(p_row, p_col)`` with ``apply(p_row, a, p_col) == b``.

    Backtracking over the row assignment: rows of ``b`` are filled in order,
    each from an unused row of ``a`` with the same phase multiset, and a
    branch is cut as soon as the columns restricted to the assigned rows stop
    matching as multisets.  Columns are matched at the end.  Returns ``None``
    when no pair exists.
    """
    if a.size > cap or b.size > cap:
        raise CapacityError(f"brute-force search is capped at N={cap}")
    if a.size != b.size:
        return None
    n = a.size
    m = lcm(a.modulus, b.modulus)
    ea = a.rescaled(m).exponents
    eb = b.rescaled(m).exponents

    def row_key(row):
        return tuple(np.bincount(row, minlength=m).tolist())

    keys_a = [row_key(r) for r in ea]
    keys_b = [row_key(r) for r in eb]
    if Counter(keys_a) != Counter(keys_b):
        return None

    source = [-1] * n  # source[t] = row of a placed at row t of b
    used = [False] * n
    cols_a = [()] * n
    cols_b = [()] * n

    def search(t):
        if t == n:
            return True
        for i in range(n):
            if used[i] or keys_a[i] != keys_b[t]:
                continue
            new_a = [cols_a[j] + (int(ea[i, j]),) for j in range(n)]
            new_b = [cols_b[j] + (int(eb[t, j]),) for j in range(n)]
            if Counter(new_a) != Counter(new_b):
                continue
            old_a, old_b = cols_a[:], cols_b[:]
            cols_a[:], cols_b[:] = new_a, new_b
            used[i] = True
            source[t] = i
            if search(t + 1):
                return True
            used[i] = False
            cols_a[:], cols_b[:] = old_a, old_b
        return False

    if not search(0):
        return None

    p_row = np.empty(n, dtype=np.int64)
    p_row[source] = np.arange(n)
    # match each column of b to an unused equal column of a
    pool = {}
    for j in range(n):
        pool.setdefault(cols_a[j], []).append(j)
    p_col = [pool[cols_b[j]].pop(0) for j in range(n)]
    pr, pc = Permutation(p_row), Permutation(p_col)
    assert equal(apply(pr, a, pc), b)
    return pr, pc
