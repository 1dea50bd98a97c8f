import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monoglue.classify import (
    becomes_iso,
    classify,
    collapse_nonunits_probe,
    covering_reflects_isos,
    epi_refuter,
    is_epimorphism,
    largest_prime_avoiding,
    recognize,
    recognize_localization,
    spec_route,
    surjective_on_units,
)
from monoglue.monoid import free
from monoglue.spectra import localize
from monoglue.words import support

# name: (epi, local, flat refuted, witness); hand-derived
EXPECTED = {
    "loc_x": (True, False, False, "x"),
    "loc_K": (True, False, False, "x"),
    "loc_zero": (True, False, False, "x"),
    "loc_B": (True, False, False, "z"),
    "id_A1": (True, True, False, "1"),
    "aut_C3": (True, True, False, "1"),
    "zero_loc_B": (True, True, False, "1"),
    "idem_quot": (True, True, True, None),
    "collapse": (True, False, True, None),
    "kill_y": (True, False, True, None),
    "square": (False, True, True, None),
    "unit_C2": (False, True, True, None),
    "proj_C4": (True, True, True, None),
    "incl_C2": (False, True, True, None),
    "onto_C2": (True, False, True, None),
    "sign": (True, True, True, None),
    "add_zero": (False, True, True, None),
    "to_B": (True, False, True, None),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_verdicts(cat, name):
    f = cat[name]
    v = classify(f)
    epi, local, refuted, witness = EXPECTED[name]
    assert (v.epi, v.local, v.flat_refuted) == (epi, local, refuted)
    got = None if v.open_immersion is None else f.source.fmt(v.open_immersion)
    assert got == witness
    assert v.spec_route == (witness is not None)


def test_inclusion_is_not_epi(cat):
    for name in ("incl", "diag"):
        assert not is_epimorphism(cat[name])
        assert recognize_localization(cat[name]) is None


def test_epi_refuter(cat):
    a, b = epi_refuter(cat["add_zero"])
    assert not a.same_as(b)
    assert epi_refuter(cat["loc_x"]) is None


@settings(max_examples=12)
@given(st.integers(0, 2), st.integers(0, 2))
def test_witness_has_same_support(i, j):
    M = free(["x", "y"])
    a = M.eval_word((i, j))
    rec = recognize(localize(M, [a]).canonical)
    assert support(M.word_of(rec.witness)) == support((i, j))
    assert largest_prime_avoiding(M, rec.witness) == rec.prime.trace


def test_spec_route(cat):
    assert spec_route(cat["loc_xy"])
    assert not spec_route(cat["incl"])


def test_units(cat):
    assert surjective_on_units(cat["proj_C4"])
    assert not surjective_on_units(cat["incl_C2"])
    assert surjective_on_units(cat["sign"])


def test_nonunit_probe(cat):
    M = cat["A2"]
    probe = collapse_nonunits_probe(M)
    assert not probe.is_bijective()
    x, y = M.gen(0), M.gen(1)
    assert becomes_iso(localize(M, [x]).canonical, probe)
    assert not covering_reflects_isos(M, [x, y], [probe])


def test_unit_covers(cat):
    # the family {1} does cover: M_1 = M, so only isos become isos
    M = cat["A1"]
    assert covering_reflects_isos(M, [M.one], [collapse_nonunits_probe(M)])
