import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoglue.errors import InvalidAction
from monoglue.msets import (
    EqualizerDiagram,
    MSet,
    MSetHom,
    ProductDiagram,
    base_change,
    cyclic_msets,
    equalizer_mset,
    extend_equivariant,
    family_for,
    flatness_report,
    homs_between,
    preserves,
    product_mset,
    pushout_algebras,
    rees_truncation,
    tensor,
    terminal,
)

functions = st.integers(1, 5).flatmap(lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n))


def periodic_points(phi):
    n = len(phi)
    out = set()
    for x in range(n):
        y = x
        for _ in range(n):
            y = phi[y]
        out.add(y)  # phi^n(x) lies on a cycle
    cyc = set()
    for y in out:
        z = phi[y]
        cyc.add(y)
        while z != y:
            cyc.add(z)
            z = phi[z]
    return cyc


def naive_tensor_size(S, T):
    """(s, t) pairs glued by (g s, t) ~ (s, g t), by repeated relabelling."""
    label = {(s, t): (s, t) for s in range(S.size) for t in range(T.size)}

    def find(p):
        while label[p] != p:
            p = label[p]
        return p

    changed = True
    while changed:
        changed = False
        for g in range(S.owner.ngens):
            for s in range(S.size):
                for t in range(T.size):
                    a, b = find((S.action[g][s], t)), find((s, T.action[g][t]))
                    if a != b:
                        label[max(a, b)] = min(a, b)
                        changed = True
    return len({find(p) for p in label})


@given(functions)
def test_localization_keeps_periodic_points(phi):
    from monoglue.catalog import load

    f = load()["loc_x"]
    S = MSet(f.source, len(phi), [phi])
    assert len(base_change(f, S).module) == len(periodic_points(phi))


@given(functions, functions)
def test_tensor_matches_naive(phi, psi):
    from monoglue.catalog import load

    A1 = load()["A1"]
    S, T = MSet(A1, len(phi), [phi]), MSet(A1, len(psi), [psi])
    assert len(tensor(S, T).result) == naive_tensor_size(S, T)


@given(functions, functions)
def test_product_sizes(phi, psi):
    from monoglue.catalog import load

    A1 = load()["A1"]
    S, T = MSet(A1, len(phi), [phi]), MSet(A1, len(psi), [psi])
    P = product_mset([S, T])
    assert len(P.obj) == len(S) * len(T)
    assert all(leg.is_equivariant() for leg in P.legs)


@given(functions, functions)
def test_localization_preserves_random_products(phi, psi):
    from monoglue.catalog import load

    f = load()["loc_x"]
    S, T = MSet(f.source, len(phi), [phi]), MSet(f.source, len(psi), [psi])
    assert preserves(f, ProductDiagram(f.source, (S, T)))


def test_base_change_finite_target(cat):
    f = cat["proj_C4"]
    R = MSet(cat["C4"], 4, [[1, 2, 3, 0]])
    C2_over_C4 = MSet(cat["C4"], 2, [[1, 0]])
    assert len(base_change(f, R).module) == naive_tensor_size(R, C2_over_C4) == 2


def test_swap_tensor(cat):
    C2 = cat["C2"]
    swap = MSet(C2, 2, [[1, 0]])
    assert len(tensor(swap, swap).result) == 2


def test_rees_truncation(cat):
    R = rees_truncation(cat["A1"], 2)
    assert R.labels == ("1", "x", ">=2")
    assert len(base_change(cat["loc_x"], R).module) == 1


def test_invalid_action(cat):
    with pytest.raises(InvalidAction):
        MSet(cat["C2"], 3, [[1, 2, 0]])  # u^2 must act as the identity
    with pytest.raises(InvalidAction):
        MSet(cat["A2"], 2, [[1, 0], [0, 0]])  # x and y do not commute


def test_cyclic_counts(cat):
    # one cyclic F1[x]-set per (tail, cycle) shape: 1 + 2 + 3 + 4
    assert len(cyclic_msets(cat["A1"], 4)) == 10
    assert len(cyclic_msets(cat["C2"], 4)) == 2


def test_family_sizes(cat):
    assert len(family_for(cat["A1"])) == 143
    assert len(family_for(cat["K"])) == 1209


def test_homs_and_equalizers(cat):
    A1 = cat["A1"]
    S = MSet(A1, 2, [[1, 1]])
    T = MSet(A1, 2, [[0, 1]])
    hs = homs_between(S, T)
    assert all(h.is_equivariant() for h in hs)
    assert len(hs) == 2  # x fixes both points of T
    E = equalizer_mset(hs[0], hs[1])
    assert len(E.obj) == 0
    assert flatness_report(cat["loc_x"], [EqualizerDiagram(hs[0], hs[1])]).checked == 1


def test_extend_equivariant(cat):
    A1 = cat["A1"]
    S = MSet(A1, 3, [[1, 2, 2]])
    T = terminal(A1)
    m = extend_equivariant(S, [0], T, [0])
    assert m is not None and m.map == (0, 0, 0)
    assert extend_equivariant(S, [0], MSet(A1, 2, [[1, 0]]), [0]) is None


def test_terminal_detects_non_epi(cat):
    rep = flatness_report(cat["unit_C2"], [ProductDiagram(cat["F1"], ())])
    assert rep.refuted


def test_pushout_keeps_zeros_apart(cat):
    f = cat["add_zero"]
    P, i, j = pushout_algebras(f, f)
    z = f.target.gen(1)
    assert not P.equal(i(z), j(z))
    g = cat["loc_x"]
    P, i, j = pushout_algebras(g, g)
    assert all(P.equal(i(h), j(h)) for h in g.target.gens())


def test_msethom_compose(cat):
    A1 = cat["A1"]
    S = MSet(A1, 2, [[1, 1]])
    T = terminal(A1)
    h = MSetHom(S, T, (0, 0))
    assert h.compose(MSetHom(S, S, (0, 1))).map == (0, 0)
