import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoglue.errors import InvalidHom, InvalidMonoid
from monoglue.monoid import (
    DISTINCT,
    EQUAL,
    FiniteMonoid,
    MonoidHom,
    PresentedMonoid,
    adjoin_zero,
    boolean_monoid,
    cyclic_group,
    direct_product,
    enumerate_homs,
    find_iso_inverse,
    free,
    identity,
    is_isomorphism,
    is_local_hom,
    polynomial_extension,
    quotient_by_congruence,
    trivial,
    units,
)
from monoglue.smallmonoids import small_monoids

words2 = st.tuples(st.integers(0, 4), st.integers(0, 4))


def k_invariant(w):
    """Independent normal form for F1[x,y]/(x^2 y = y): once y is present
    only the parity of the x exponent survives."""
    a, b = w
    return (a, 0) if b == 0 else (a % 2, b)


def test_normal_form_examples(cat):
    K = cat["K"]
    assert K.compare(K.eval_word((3, 1)), K.eval_word((1, 1))) == EQUAL
    assert K.compare(K.eval_word((1, 0)), K.eval_word((2, 0))) == DISTINCT
    # distinctness that only the bounded closure can vouch for carries the bound
    assert K.compare(K.eval_word((0, 1)), K.eval_word((1, 1))) == "distinct (bound 8)"
    assert K.fmt(K.eval_word((5, 2))) == "x*y^2"


@given(words2, words2)
def test_k_equality_matches_invariant(u, v):
    K = PresentedMonoid("K", ["x", "y"], [((2, 1), (0, 1))])
    assert K.equal(K.eval_word(u), K.eval_word(v)) == (k_invariant(u) == k_invariant(v))


@given(st.integers(0, 12), st.integers(0, 12), st.integers(1, 5))
def test_cyclic_group_words(a, b, n):
    C = cyclic_group(n)
    assert C.equal(C.eval_word((a,)), C.eval_word((b,))) == ((a - b) % n == 0)


@given(words2, words2, words2)
def test_multiplication_laws(u, v, w):
    K = PresentedMonoid("K", ["x", "y"], [((2, 1), (0, 1))], bound=24)
    a, b, c = (K.eval_word(t) for t in (u, v, w))
    assert K.equal(K.mul(a, b), K.mul(b, a))
    assert K.equal(K.mul(K.mul(a, b), c), K.mul(a, K.mul(b, c)))
    assert K.equal(K.mul(a, K.one), a)


def test_finite_realisation(cat):
    assert len(cat["C4"].finite()) == 4
    assert len(cat["Idem"].finite()) == 2
    assert cat["K"].finite() is None
    assert cat["Lx"].finite() is None


def test_finite_table_validation():
    with pytest.raises(InvalidMonoid):
        FiniteMonoid(["1", "a"], [[0, 1], [0, 0]])  # not commutative
    with pytest.raises(InvalidMonoid):
        FiniteMonoid(["1", "a"], [[0, 1], [1, 1]], zero=0)


def test_repeated_generator_rejected():
    with pytest.raises(InvalidMonoid):
        PresentedMonoid("M", ["x", "x"])


def test_small_monoid_counts():
    # commutative monoids of order 1..4 up to isomorphism
    by_order = [sum(1 for M in small_monoids(4) if len(M) == n) for n in (1, 2, 3, 4)]
    assert by_order == [1, 2, 5, 19]


def _brute_count(n):
    """Independent count for tiny orders: all tables with unit 0, up to
    relabelling, compared by the sorted multiset of row signatures of every
    relabelling."""
    from itertools import permutations, product

    found = set()
    others = range(1, n)
    cells = [(a, b) for a in others for b in others if a <= b]
    for vals in product(range(n), repeat=len(cells)):
        t = [[0] * n for _ in range(n)]
        for i in range(n):
            t[0][i] = t[i][0] = i
        for (a, b), v in zip(cells, vals):
            t[a][b] = t[b][a] = v
        if any(t[t[a][b]][c] != t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            continue
        keys = []
        for perm in permutations(others):
            p = (0,) + perm
            inv = {x: i for i, x in enumerate(p)}
            keys.append(tuple(inv[t[p[a]][p[b]]] for a in range(n) for b in range(n)))
        found.add(min(keys))
    return len(found)


def test_small_monoid_oracle():
    assert [_brute_count(n) for n in (1, 2, 3)] == [
        sum(1 for M in small_monoids(3) if len(M) == n) for n in (1, 2, 3)
    ]


def test_hom_counts(cat):
    assert len(enumerate_homs(cat["A2"], cat["C2"])) == 4
    assert len(enumerate_homs(cat["C4"], cat["C2"])) == 2
    # zero-preserving versus all homs {0,1} -> {0,1}
    assert len(enumerate_homs(cat["B"], cat["B"])) == 1
    assert len(enumerate_homs(cat["B"], cat["B"], require_zero=False)) == 2


def test_hom_validation(cat):
    with pytest.raises(InvalidHom):
        MonoidHom(cat["C2"], cat["A1"], [cat["A1"].gen(0)], check=True)


def test_isomorphisms(cat):
    assert is_isomorphism(cat["swap"])
    assert find_iso_inverse(cat["square"]) is None
    f = cat["aut_C3"]
    g = find_iso_inverse(f)
    for u in f.source.gens():
        assert f.source.equal(g(f(u)), u)


def test_units_and_local(cat):
    assert [cat["C4"].fmt(u) for u in units(cat["C4"])] == ["1", "u", "u^2", "u^3"]
    assert len(units(cat["A1z"])) == 1
    assert not is_local_hom(cat["loc_x"])
    assert is_local_hom(cat["incl"])
    assert cat["Lxy"].is_group() and not cat["KL"].is_group()


def test_constructions():
    A = free(["x"])
    A0, inc = adjoin_zero(A)
    assert A0.has_zero and not A.has_zero
    assert len(adjoin_zero(boolean_monoid())[0]) == 3
    P, can = polynomial_extension(cyclic_group(2), ["t"])
    assert P.ngens == 2 and P.equal(P.power(can(P.gen(0)), 2), P.one)
    Q, q = quotient_by_congruence(A, [((2,), (1,))])
    assert len(Q.finite()) == 2
    D, i, j = direct_product(cyclic_group(2), cyclic_group(3))
    assert len(D.finite()) == 6
    assert trivial().is_trivial()
    assert identity(A).same_as(MonoidHom(A, A, [A.gen(0)]))
