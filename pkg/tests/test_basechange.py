import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoglue.basechange import (
    MonoidRing,
    base_change_scheme,
    check_openbc,
    coequalizer_instance,
    compare_base_changes,
    monoid_homs_to_residues,
    ring_functor,
    ring_homs_to_residues,
    ring_localize,
    ring_points,
)
from monoglue.catalog import element
from monoglue.errors import RefinementFailure
from monoglue.monoid import cyclic_group, identity

# closed forms for |X(F_p)|
POINT_FORMULAS = {
    "SpecF1": lambda p: 1,
    "SpecA1": lambda p: p,
    "P1": lambda p: p + 1,
    "P2": lambda p: p * p + p + 1,
    "A1uA1": lambda p: 2 * p,
}

C3 = cyclic_group(3)
R3 = MonoidRing(C3)
elems = st.dictionaries(st.integers(0, 2), st.integers(-4, 4), max_size=3).map(
    lambda d: R3.elem({C3.eval_word((k,)): c for k, c in d.items()})
)


@given(elems, elems, elems)
def test_ring_laws(a, b, c):
    R = R3
    assert R.equal(R.mul(a, b), R.mul(b, a))
    assert R.equal(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c)))
    assert R.equal(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c)))
    assert R.equal(R.mul(a, R.one()), a)
    assert R.equal(R.add(a, R.neg(a)), R.zero())


def test_group_ring_relation():
    R = MonoidRing(cyclic_group(2))
    u = R.basis(R.base.gen(0))
    assert R.equal(R.mul(u, u), R.one())
    assert R.presentation()["relations"] == ["u^2 - 1"]


def test_zero_is_identified(cat):
    R = MonoidRing(cat["B"])
    assert R.equal(R.basis(cat["B"].element("z")), R.zero())
    assert ring_localize(R, cat["B"].element("z")).is_zero_ring()


def test_functoriality(cat):
    f, g = cat["loc_x"], cat["square"]
    Fid = ring_functor(identity(cat["A1"]))
    R = MonoidRing(cat["A1"])
    x = R.basis(cat["A1"].gen(0))
    s = R.add(R.scale(3, x), R.one())
    assert R.equal(Fid(s), s)
    comp = ring_functor(f.compose(g))
    assert ring_functor(f).target.equal(comp(s), ring_functor(f)(ring_functor(g)(s)))


@pytest.mark.parametrize("k", [2, 3, 5])
def test_residue_adjunction(cat, k):
    for name in ("A1", "C2", "K", "B", "Idem"):
        M = cat[name]
        assert ring_homs_to_residues(M, k) == monoid_homs_to_residues(M, k)


def test_openbc(cat):
    for m, a in [("A1", "x"), ("A2", "x*y"), ("A1", "1"), ("C2", "u"), ("K", "y")]:
        assert check_openbc(cat[m], element(cat[m], a))


def test_p1_glued_rings(cat):
    d = base_change_scheme(cat["P1"]).describe()
    assert [c["ring"] for c in d["charts"]] == ["Z[A1]", "Z[Ay]"]
    imgs = {(t["from"], t["to"]): t["images"] for t in d["transitions"]}
    assert imgs == {(1, 0): {"y": "1/x"}, (0, 1): {"x": "1/y"}}


@pytest.mark.parametrize("name", sorted(POINT_FORMULAS))
def test_points_over_finite_fields(cat, name):
    G = base_change_scheme(cat[name])
    for p in (2, 3, 5):
        assert ring_points(G, p) == POINT_FORMULAS[name](p)


def test_coequalizer_instance(cat):
    for name in POINT_FORMULAS:
        a, b = coequalizer_instance(cat[name], 3)
        assert a == b == POINT_FORMULAS[name](3)


def test_covering_independence(cat):
    X = cat["P1"]
    x = X.data.charts[0].gen(0)
    d1 = base_change_scheme(X)
    d2 = base_change_scheme(X, [(0, X.data.charts[0].one), (1, X.data.charts[1].one), (0, x)])
    assert compare_base_changes(d1, d2)
    assert compare_base_changes(d1, d1)
    assert [ring_points(d2, p) for p in (2, 3)] == [3, 4]


def test_refinement_failure(cat):
    X = cat["P1"]
    x = X.data.charts[0].gen(0)
    d1 = base_change_scheme(X)
    d2 = base_change_scheme(X, [(0, x), (1, X.data.charts[1].one)])
    with pytest.raises(RefinementFailure):
        compare_base_changes(d1, d2)
