import itertools
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fkpequiv.classifier import (
    CanonicalForm,
    FkpSpec,
    canonicalize,
    census_formula,
    census_formula_pure,
    class_count,
    class_members,
    enumerate_classes,
    factorize,
    introduction_indices,
    p_equivalent,
    parse_spec,
    partition_count,
    partitions,
    pd_equivalent,
)
from fkpequiv.errors import CapacityError, OrderingError, ParseError
from fkpequiv.exact import build, census_oracle

from conftest import factor_multisets, factor_sequences


# --- parsing ---------------------------------------------------------------

@pytest.mark.parametrize("text,factors", [
    ("2*3*4", (2, 3, 4)),
    ("F6 x F5", (6, 5)),
    ("1*7", (7,)),
    ("F8*F6", (8, 6)),
    ("2,2,3", (2, 2, 3)),
    ("F2 ⊗ F3", (2, 3)),
    ("  F 1 2 ", (12,)),
    ("f4xf4", (4, 4)),
])
def test_parse_spec(text, factors):
    assert parse_spec(text).factors == factors


@pytest.mark.parametrize("text", ["", "   ", "F0", "2*0", "F", "2**3", "F2-F3", "1", "1*1", "G2", "2.5"])
def test_parse_spec_errors(text):
    with pytest.raises(ParseError):
        parse_spec(text)


def test_spec_str_round_trip():
    for text in ["F8*F6", "F2*F2*F3", "F30"]:
        assert str(parse_spec(text)) == text


# --- canonical forms ---------------------------------------------------------

def test_canonicalize_examples():
    assert canonicalize([72]).groups == ((3, (2,)), (2, (3,)))
    assert canonicalize([6, 5]).groups == ((5, (1,)), (3, (1,)), (2, (1,)))
    assert canonicalize([4, 2, 2]).groups == ((2, (2, 1, 1)),)
    assert str(canonicalize([72])) == "F9*F8"
    assert str(canonicalize([6, 5])) == "F5*F3*F2"


@given(st.lists(st.integers(2, 60), min_size=1, max_size=4))
def test_canonicalize_idempotent_and_size_preserving(factors):
    form = canonicalize(factors)
    assert form.size == prod(factors)
    assert canonicalize(form.to_spec()) == form
    primes = [p for p, _ in form.groups]
    assert primes == sorted(primes, reverse=True) and len(set(primes)) == len(primes)
    for _, ks in form.groups:
        assert list(ks) == sorted(ks, reverse=True) and ks


@given(st.lists(st.integers(2, 60), min_size=1, max_size=4), st.randoms())
def test_canonical_form_order_invariant(factors, rnd):
    shuffled = factors[:]
    rnd.shuffle(shuffled)
    assert canonicalize(factors) == canonicalize(shuffled)


def test_factorize():
    assert factorize(72) == {2: 3, 3: 2}
    assert factorize(97) == {97: 1}
    assert factorize(1) == {}


# --- equivalence -------------------------------------------------------------

@pytest.mark.parametrize("a,b,expected", [
    ([16, 3], [48], True),
    ([4, 4, 3], [12, 4], True),
    ([16], [4, 4], False),
    ([2, 3], [3], False),
])
def test_p_equivalent(a, b, expected):
    assert p_equivalent(a, b) is expected


@pytest.mark.parametrize("a,b,expected", [
    ([9, 4], [36], True),
    ([9, 2, 2], [36], False),
    ([5, 7], [5, 7], True),
])
def test_pd_equivalent(a, b, expected):
    assert pd_equivalent(a, b) is expected


def test_p_equivalence_is_an_equivalence_relation():
    specs = [seq for n in range(2, 37) for seq in factor_sequences(n)]
    for a in specs:
        assert p_equivalent(a, a)
    for a, b in itertools.product(specs, repeat=2):
        assert p_equivalent(a, b) == p_equivalent(b, a)
    # transitivity: equivalence classes from the relation are cliques
    by_n = {}
    for s in specs:
        by_n.setdefault(prod(s), []).append(s)
    for group in by_n.values():
        for a, b, c in itertools.product(group, repeat=3):
            if p_equivalent(a, b) and p_equivalent(b, c):
                assert p_equivalent(a, c)


# --- introduction indices ------------------------------------------------------

def test_introduction_indices_paper_example():
    assert introduction_indices([4, 3, 3, 1]) == (1, 1, 2, 2, 4)


def test_introduction_indices_single_factor():
    for m in range(1, 8):
        assert introduction_indices([m]) == (1,) * (m + 1)


def test_introduction_indices_two_factors():
    assert introduction_indices([2, 1]) == (1, 1, 2)


def test_introduction_indices_rejects_increasing():
    with pytest.raises(OrderingError):
        introduction_indices([1, 2])


@given(st.lists(st.integers(1, 8), min_size=1, max_size=6))
def test_introduction_indices_properties(ks):
    ks = sorted(ks, reverse=True)
    nt = introduction_indices(ks)
    assert len(nt) == ks[0] + 1
    assert nt[0] == nt[1] == 1
    assert all(x <= y for x, y in zip(nt, nt[1:]))
    assert nt[-1] <= len(ks)


def _introduction_by_construction(a, ks):
    """Build the product factor by factor from the right and record when each order first appears."""
    first = {}
    for s in range(1, len(ks) + 1):
        census = census_oracle(build([a**k for k in ks[-s:]]))
        for n in census:
            first.setdefault(n, s)
    return tuple(first[a**t] for t in range(ks[0] + 1))


@pytest.mark.parametrize("ks", [[1], [2, 1], [3, 1], [2, 2], [3, 2, 1], [3, 2, 2, 1], [4, 2, 1], [2, 1, 1], [3, 3]])
def test_introduction_indices_match_construction(ks):
    assert introduction_indices(ks) == _introduction_by_construction(2, ks)


# --- census formulas -------------------------------------------------------------

def test_census_formula_pure_examples():
    assert census_formula_pure(2, [2]) == {1: 1, 2: 1, 4: 2}
    assert census_formula_pure(2, [1, 1]) == {1: 1, 2: 3}
    assert census_formula_pure(2, [2, 1]) == {1: 1, 2: 3, 4: 4}
    assert census_oracle(build([4, 2])) == {1: 1, 2: 3, 4: 4}


def test_census_formula_examples():
    assert census_formula([6]) == {1: 1, 2: 1, 3: 2, 6: 2}
    assert census_formula([2, 2]) == {1: 1, 2: 3}
    assert census_formula([4]) == {1: 1, 2: 1, 4: 2}
    for a, m in [(2, 5), (3, 3), (5, 2), (7, 2)]:
        expected = {1: 1, **{a**r: (a - 1) * a**(r - 1) for r in range(1, m + 1)}}
        assert census_formula([a**m]) == expected


def test_census_formula_matches_recursion():
    # left-multiplication recursion for adding a factor F_{a^k}, k >= current max
    def recurse(a, ks):
        counts = {0: 1}
        for s, k in enumerate(reversed(ks)):
            new = {}
            top = max(counts)
            for t in range(0, k + 1):
                if t == 0:
                    new[0] = counts[0]
                elif t <= top:
                    new[t] = a**(t - 1) * (a - 1) * sum(counts[u] for u in range(t)) + a**t * counts[t]
                else:
                    new[t] = a**(t - 1) * (a - 1) * sum(counts.values())
            counts = new
        return {a**t: c for t, c in counts.items()}

    for a in (2, 3, 5):
        for length in range(1, 5):
            for ks in itertools.combinations_with_replacement(range(1, 6), length):
                ks = sorted(ks, reverse=True)
                assert census_formula_pure(a, ks) == recurse(a, ks)


def test_census_formula_injective_on_pure_binary():
    seen = {}
    for total in range(1, 11):
        for ks in partitions(total):
            key = tuple(sorted(census_formula_pure(2, ks).items()))
            assert key not in seen, (ks, seen.get(key))
            seen[key] = ks


def test_census_is_complete_invariant_upto_64():
    for n in range(2, 65):
        specs = list(factor_sequences(n))
        for a, b in itertools.product(specs, repeat=2):
            assert p_equivalent(a, b) == (census_formula(a) == census_formula(b))


def test_pd_equivalent_coincides_with_p_equivalent():
    for n in range(2, 65):
        specs = list(factor_multisets(n))
        for a, b in itertools.product(specs, repeat=2):
            assert pd_equivalent(a, b) == p_equivalent(a, b)


# --- partitions and classes ------------------------------------------------------

def test_partition_count_small():
    assert [partition_count(n) for n in range(6)] == [1, 1, 2, 3, 5, 7]


def test_partitions_generator():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    for n in range(12):
        assert len(list(partitions(n))) == partition_count(n)


@pytest.mark.parametrize("n,count", [(30, 1), (48, 5), (36, 4), (16, 5), (72, 6), (7, 1), (1, 1)])
def test_class_count(n, count):
    assert class_count(n) == count


def test_enumerate_classes_30():
    (c,) = enumerate_classes(30)
    assert set(c.members) == {(5, 3, 2), (6, 5), (10, 3), (15, 2), (30,)}


def test_enumerate_classes_36_class():
    form = CanonicalForm(((3, (1, 1)), (2, (1, 1))))
    assert set(class_members(form)) == {(3, 3, 2, 2), (6, 3, 2), (6, 6)}


def test_enumerate_classes_prime():
    for p in (2, 3, 13, 97):
        (c,) = enumerate_classes(p)
        assert c.members == ((p,),)


def test_enumerate_classes_capacity():
    with pytest.raises(CapacityError):
        enumerate_classes(4096, max_n=1024)


def test_class_descriptor_invariants():
    for n in range(2, 200):
        classes = enumerate_classes(n)
        all_members = [m for c in classes for m in c.members]
        assert len(all_members) == len(set(all_members))
        assert sorted(all_members) == sorted(tuple(sorted(m, reverse=True)) for m in factor_multisets(n))
        for c in classes:
            assert tuple(sorted(c.representative.factors(), reverse=True)) in c.members
            for m in c.members:
                assert prod(m) == n
                assert canonicalize(m) == c.representative


def test_enumerate_classes_deterministic():
    assert enumerate_classes(144) == enumerate_classes(144)
