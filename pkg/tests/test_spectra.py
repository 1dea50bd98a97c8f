from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoglue.errors import InvalidMonoid
from monoglue.monoid import cyclic_group, enumerate_homs, free
from monoglue.spectra import (
    PrimeIdeal,
    enumerate_primes,
    hom_to_spec_map,
    ideal_generated,
    is_prime,
    localization_at_prime,
    localize,
    primes_by_ideal_search,
    primes_exhaustive,
    spec,
    stalk,
)

words2 = st.tuples(st.integers(0, 3), st.integers(0, 3))


def test_prime_counts(cat):
    assert len(spec(cat["A2"])) == 4
    assert [p.label() for p in enumerate_primes(cat["A2"])] == ["()", "(x)", "(y)", "(x,y)"]
    # (x) alone is not prime in K: x^2 y = y puts y in it
    assert [p.label() for p in enumerate_primes(cat["K"])] == ["()", "(y)", "(x,y)"]
    for g in ("C2", "C3", "C4", "V4", "Lxy", "F1"):
        assert len(spec(cat[g])) == 1


def test_relation_consistency_oracle(cat):
    """A generator set T is a prime trace iff every relation has both sides
    meeting T or neither."""
    for name in ("A2", "K", "KL", "Idem", "A1z", "Lxz", "Lxy"):
        M = cat[name]
        want = []
        for r in range(M.ngens + 1):
            for T in combinations(range(M.ngens), r):
                T = frozenset(T)
                hit = lambda w: any(w[i] for i in T)  # noqa: E731
                if all(hit(l) == hit(rr) for l, rr in M.relations):
                    want.append(T)
        assert sorted(map(sorted, want)) == sorted(sorted(p.trace) for p in enumerate_primes(M))


def test_ideal_search_route_agrees(cat):
    for name in ("A2", "K", "Idem", "A1z", "C2"):
        M = cat[name]
        assert sorted(map(sorted, primes_by_ideal_search(M))) == sorted(
            sorted(p.trace) for p in enumerate_primes(M)
        )


def test_finite_exhaustive_route_agrees(cat):
    for name in ("B", "V4"):
        F = cat[name]
        subsets = sorted(sorted(s) for s in primes_exhaustive(F))
        traced = sorted(sorted(p.members()) for p in enumerate_primes(F))
        assert subsets == traced


def test_ideal_membership(cat):
    K = cat["K"]
    x, y = K.gen(0), K.gen(1)
    assert ideal_generated(K, [x]).contains(y)
    assert not ideal_generated(K, [y]).contains(x)
    assert is_prime(K, ideal_generated(K, [y]))
    # y = x^2 y, so (x) is already the maximal ideal
    assert is_prime(K, ideal_generated(K, [x]))
    A = cat["A2"]
    assert not is_prime(A, ideal_generated(A, [A.mul(A.gen(0), A.gen(1))]))


@given(words2, words2)
def test_basic_opens_multiply(u, v):
    M = free(["x", "y"], bound=16)
    X = spec(M)
    a, b = M.eval_word(u), M.eval_word(v)
    assert X.D(a) & X.D(b) == X.D(M.mul(a, b))
    assert X.is_open(X.D(a))
    assert X.V([a]) == frozenset(range(len(X))) - X.D(a)


def test_topology(cat):
    X = spec(cat["A2"])
    assert X.generic_point() == 0 and X.closed_point() == 3
    assert X.closure(0) == frozenset(range(4))
    assert not X.is_open({3})
    assert X.is_open({0, 1})
    assert sorted(X.cover_edges()) == [(0, 1), (0, 2), (1, 3), (2, 3)]
    assert X.to_dot().startswith('digraph "Spec A2"')


def test_localization_universal_property():
    A = free(["x"])
    C3 = cyclic_group(3)
    L = localize(A, [A.gen(0)])
    homs = list(enumerate_homs(A, C3))
    assert len(homs) == 3
    for h in homs:
        g = L.lift(h)
        assert C3.equal(g(L.canonical(A.gen(0))), h(A.gen(0)))


def test_lift_requires_unit(cat):
    L = localize(cat["A1"], [cat["A1"].gen(0)])
    with pytest.raises(InvalidMonoid):
        L.lift(cat["id_A1"])


def test_localize_absorbing_gives_trivial(cat):
    B = cat["B"]
    assert localize(B, [B.element("z")]).result.is_trivial()


def test_stalks(cat):
    A = cat["A2"]
    X = spec(A)
    assert stalk(A, X.points[0]).is_group()
    assert len(spec(stalk(A, X.points[1]))) == 2
    assert localization_at_prime(A, PrimeIdeal(A, frozenset({0, 1}))).result.ngens == 2


def test_spec_map(cat):
    sm = hom_to_spec_map(cat["loc_x"])
    assert sm.is_open_embedding()
    assert not hom_to_spec_map(cat["diag"]).is_open_embedding()
