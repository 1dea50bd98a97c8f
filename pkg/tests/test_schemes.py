import pytest

from monoglue.errors import CocycleViolation, NotACovering
from monoglue.monoid import free
from monoglue.schemes import (
    GluingData,
    adjunction_check,
    affine,
    chart_inclusion,
    check_sheaf_condition,
    evaluate_via_descent,
    fibered_product_affine,
    g_points,
    g_points_bijection,
    glue,
    h_functor,
    hom_schemes,
    is_open_immersion_geometric,
    is_open_immersion_schemes,
    natural_bijection,
    realization,
    representable,
)

# |Hom(Spec N, X)|; N = F1[t] is truncated at degree 2
HOM_COUNTS = {
    "SpecF1": [1, 1, 1, 1, 1],
    "SpecA1": [1, 2, 3, 2, 3],
    "P1": [1, 2, 3, 3, 5],
    "P2": [1, 4, 9, 7, 19],
    "A1uA1": [2, 4, 6, 4, 6],
}


def targets(cat):
    return [cat["F1"], cat["C2"], cat["C3"], cat["B"], free(["t"], name="F1[t]")]


def test_points_and_closed(cat):
    P1, P2 = cat["P1"], cat["P2"]
    assert len(P1) == 3 and len(P1.closed_points()) == 2
    assert len(P2) == 7 and len(P2.closed_points()) == 3
    assert len(cat["A1uA1"]) == 4
    assert P1.stalks_agree() and P2.stalks_agree()


@pytest.mark.parametrize("name", sorted(HOM_COUNTS))
def test_hom_counts(cat, name):
    X = cat[name]
    F = h_functor(X)
    for N, want in zip(targets(cat), HOM_COUNTS[name]):
        A = hom_schemes(N, X)
        B = evaluate_via_descent(F, N)
        assert len(A) == len(B) == want
        assert natural_bijection(A, B) is not None


def test_group_points_oracle(cat):
    # a group has one prime, so its points land in the torus (G^x)^n
    assert len(hom_schemes(cat["C3"], cat["P2"])) == 3**2
    assert len(hom_schemes(cat["C2"], cat["P1"])) == 2**1


def test_g_points(cat):
    assert len(g_points(cat["P1"], cat["C2"])) == 2
    assert g_points_bijection(cat["P1"], cat["C2"])
    assert g_points_bijection(cat["P2"], cat["C3"])


def test_realization(cat):
    for name in HOM_COUNTS:
        X = cat[name]
        assert realization(h_functor(X)).describe() == X.describe()


def test_adjunction(cat):
    assert adjunction_check(free(["t"]), cat["P1"])
    assert adjunction_check(cat["F1"], cat["P1"])


def test_cocycle_violations():
    A, B = free(["x"]), free(["y"])
    with pytest.raises(CocycleViolation):
        GluingData([A, B], {(0, 1): (1,)}, {})  # one-sided overlap
    with pytest.raises(CocycleViolation):
        # y -> x^2 is not invertible on the overlap
        GluingData([A, B], {(0, 1): (1,), (1, 0): (1,)}, {(0, 1): {"y": {"x": 2}}})


def test_three_chart_cocycle_violation():
    A, B, C = free(["a"]), free(["b"]), free(["c"])
    ov = {(0, 1): (1,), (1, 0): (1,), (0, 2): (1,), (2, 0): (1,), (1, 2): (1,), (2, 1): (1,)}
    good = {(0, 1): {"b": {"a": -1}}, (0, 2): {"c": {"a": 1}}, (1, 2): {"c": {"b": -1}}}
    glue(GluingData([A, B, C], ov, good))
    bad = dict(good)
    bad[(1, 2)] = {"c": {"b": 1}}
    with pytest.raises(CocycleViolation):
        GluingData([A, B, C], ov, bad)


def test_open_immersions(cat):
    f = chart_inclusion(cat["P1"], 0)
    assert is_open_immersion_schemes(f)
    assert is_open_immersion_geometric(f)


def test_fibered_product(cat):
    X, P, i, j = fibered_product_affine(cat["incl"], cat["incl"])
    # F1[x,y] (x)_{F1[x]} F1[x,y] is free on x, y, y': 2^3 primes
    assert len(X) == 8
    assert P.equal(i(cat["A2"].gen(0)), j(cat["A2"].gen(0)))
    assert not P.equal(i(cat["A2"].gen(1)), j(cat["A2"].gen(1)))


def test_sheaf_condition(cat):
    A = cat["A2"]
    x, y = A.gen(0), A.gen(1)
    F = representable(cat["P1"])
    assert check_sheaf_condition(A, F, [A.one, x])
    with pytest.raises(NotACovering):
        check_sheaf_condition(A, F, [x, y])


def test_affine(cat):
    X = affine(cat["K"])
    assert len(X) == 3
