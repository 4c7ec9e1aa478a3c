"""Canonical forms, census formulas and class enumeration for FKPs.

An FKP ``F_{n1} (x) ... (x) F_{nr}`` is described by its factor sizes.  Its
permutation equivalence class is fixed by the multiset of prime-power
exponents of the factors, grouped by prime.  The canonical representative
lists primes in descending order and, within a prime, exponents in
descending order.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import prod

from .errors import CapacityError, OrderingError, ParseError
from .exact import MAX_ENTRIES, PhaseExpMatrix, RowCensus, build

#: largest N accepted by enumerate_classes / class_count style enumeration
MAX_CLASS_N = 2**20


def factorize(n: int) -> dict:
    """Prime factorization ``{prime: exponent}`` by trial division."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FkpSpec:
    """Factor sizes of ``F_{n1} (x) F_{n2} (x) ...``, in written order."""

    factors: tuple = ()

    def __post_init__(self):
        fs = tuple(int(f) for f in self.factors)
        if any(f < 1 for f in fs):
            raise ValueError(f"factor sizes must be positive: {fs}")
        object.__setattr__(self, "factors", tuple(f for f in fs if f != 1))

    @property
    def size(self) -> int:
        return prod(self.factors)

    def build(self, max_entries: int = MAX_ENTRIES) -> PhaseExpMatrix:
        return build(self.factors, max_entries)

    def __str__(self):
        return "*".join(f"F{f}" for f in self.factors) if self.factors else "F1"

    def __len__(self):
        return len(self.factors)


_SEP = re.compile(r"[*x⊗,]")
_FACTOR = re.compile(r"[Ff]?(\d+)")


def parse_spec(text: str) -> FkpSpec:
    """Parse e.g. ``"F8*F6"``, ``"2,2,3"``, ``"F6 x F5"`` or ``"F2 ⊗ F3"``."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ParseError("empty spec")
    factors = []
    for tok in _SEP.split(compact):
        m = _FACTOR.fullmatch(tok)
        if m is None:
            raise ParseError(f"malformed factor {tok!r} in {text!r}")
        f = int(m.group(1))
        if f == 0:
            raise ParseError(f"factor 0 in {text!r}")
        factors.append(f)
    spec = FkpSpec(tuple(factors))
    if not spec.factors:
        raise ParseError(f"{text!r} is an empty product")
    return spec


def as_spec(obj) -> FkpSpec:
    if isinstance(obj, FkpSpec):
        return obj
    if isinstance(obj, str):
        return parse_spec(obj)
    return FkpSpec(tuple(obj))


# --------------------------------------------------------------------------
# Canonical forms
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    """``((prime, (k_s, ..., k_1)), ...)`` with primes and exponents descending."""

    groups: tuple

    @property
    def size(self) -> int:
        return prod(p ** k for p, ks in self.groups for k in ks)

    def factors(self) -> tuple:
        """The prime-power factor sizes of the representative FFKP, in order."""
        return tuple(p ** k for p, ks in self.groups for k in ks)

    def to_spec(self) -> FkpSpec:
        return FkpSpec(self.factors())

    def __str__(self):
        return str(self.to_spec())


def canonicalize(spec) -> CanonicalForm:
    spec = as_spec(spec)
    per_prime = {}
    for f in spec.factors:
        for p, k in factorize(f).items():
            per_prime.setdefault(p, []).append(k)
    groups = tuple((p, tuple(sorted(per_prime[p], reverse=True)))
                   for p in sorted(per_prime, reverse=True))
    return CanonicalForm(groups)


def p_equivalent(a, b) -> bool:
    """Permutation equivalence of two FKPs."""
    a, b = as_spec(a), as_spec(b)
    return a.size == b.size and canonicalize(a) == canonicalize(b)


def pd_equivalent(a, b) -> bool:
    """Permutation-phasing equivalence; coincides with ``p_equivalent`` on FKPs."""
    return p_equivalent(a, b)


# --------------------------------------------------------------------------
# Row censuses by closed formula
# --------------------------------------------------------------------------

def introduction_indices(exponents) -> tuple:
    """Introduction indices ``(N_0, N_1, ..., N_{k_s})`` of a pure ordered FFKP.

    ``exponents`` is written left to right, ``k_s >= ... >= k_1``.  Factors
    are counted from the RIGHT: factor 1 is the rightmost (smallest), the one
    a left-to-right construction starts from.  ``N_t`` is the first factor
    introducing rows of order ``a**t``.
    """
    ks = [int(k) for k in exponents]
    if not ks:
        raise ValueError("need at least one exponent")
    if any(k < 1 for k in ks):
        raise ValueError(f"exponents must be positive: {ks}")
    if any(x < y for x, y in zip(ks, ks[1:])):
        raise OrderingError(f"exponents must be non-increasing: {ks}")
    ascending = ks[::-1]
    out = [1, 1]
    m = 0
    for t in range(2, ks[0] + 1):
        while ascending[m] < t:
            m += 1
        out.append(m + 1)
    return tuple(out)


def census_formula_pure(a: int, exponents) -> RowCensus:
    """Row census of ``F_{a^{k_s}} (x) ... (x) F_{a^{k_1}}`` from the closed formula."""
    ks = [int(k) for k in exponents]
    nt = introduction_indices(ks)
    s = len(ks)
    census = {1: 1}
    # cumulative[m] = m*s - sum_{l<=m} (N_l - 1): the count of rows of order <= a^m is a**cumulative[m]
    cumulative = [0]
    for m in range(1, ks[0] + 1):
        cumulative.append(cumulative[-1] + s - (nt[m] - 1))
        census[a ** m] = a ** cumulative[m] - a ** cumulative[m - 1]
    return census


def combine_censuses(c1: RowCensus, c2: RowCensus) -> RowCensus:
    """Census of a Kronecker product of two matrices with coprime phase orders."""
    out = {}
    for n1, k1 in c1.items():
        for n2, k2 in c2.items():
            out[n1 * n2] = out.get(n1 * n2, 0) + k1 * k2
    return dict(sorted(out.items()))


def census_formula(spec) -> RowCensus:
    census = {1: 1}
    for p, ks in canonicalize(spec).groups:
        census = combine_censuses(census, census_formula_pure(p, ks))
    return dict(sorted(census.items()))


# --------------------------------------------------------------------------
# Partitions and class enumeration
# --------------------------------------------------------------------------

def partition_count(n: int) -> int:
    """Number of partitions of ``n`` (``p(0) == 1``)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]


def partitions(n: int, largest: int | None = None):
    """Partitions of ``n`` as non-increasing tuples, in descending lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def class_count(n: int) -> int:
    """Number of equivalence classes of FKPs of size ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    return prod(partition_count(b) for b in factorize(n).values())


@dataclass(frozen=True)
class ClassDescriptor:
    representative: CanonicalForm
    members: tuple  # factor multisets, each a descending tuple
    size: int

    def member_specs(self):
        return [FkpSpec(m) for m in self.members]


def class_members(form: CanonicalForm) -> tuple:
    """All factor multisets in the class of ``form``.

    Every member arises by grouping the prime-power factors of the
    representative into blocks, no block holding two powers of one prime,
    and multiplying out each block.
    """
    states = {()}
    for p, ks in form.groups:
        powers = [p ** k for k in ks]
        nxt = set()
        for blocks in states:
            nxt.update(_place_powers(blocks, powers))
        states = nxt
    return tuple(sorted(states, key=lambda m: (-len(m), m)))


def _place_powers(blocks, powers):
    # powers of one prime go into pairwise distinct blocks (existing or new)
    results = set()

    def rec(idx, current, touched):
        if idx == len(powers):
            results.add(tuple(sorted(current, reverse=True)))
            return
        q = powers[idx]
        for b in range(len(blocks)):
            if b not in touched:
                current[b] *= q
                touched.add(b)
                rec(idx + 1, current, touched)
                touched.discard(b)
                current[b] //= q
        current.append(q)
        rec(idx + 1, current, touched)
        current.pop()

    rec(0, list(blocks), set())
    return results


def enumerate_classes(n: int, max_n: int = MAX_CLASS_N) -> list:
    """One ``ClassDescriptor`` per equivalence class of FKPs of size ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > max_n:
        raise CapacityError(f"class enumeration is capped at N={max_n}")
    fac = factorize(n)
    primes = sorted(fac, reverse=True)
    out = []
    for combo in itertools.product(*(partitions(fac[p]) for p in primes)):
        form = CanonicalForm(tuple(zip(primes, combo)))
        out.append(ClassDescriptor(form, class_members(form), n))
    out.sort(key=lambda c: tuple(ks for _, ks in c.representative.groups), reverse=True)
    return out
