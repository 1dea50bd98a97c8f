import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoglue.catalog import catalog_text
from monoglue.dsl import (
    DslSyntaxError,
    DuplicateName,
    HomDecl,
    MonoidDecl,
    UnknownReference,
    build,
    merge,
    parse,
    parse_word,
    render,
)


def test_monoid_block():
    f = parse("monoid M\n gen x y\n rel x^2*y = y\nend")
    (d,) = f.decls
    assert isinstance(d, MonoidDecl)
    assert d.gens == ["x", "y"] and len(d.rels) == 1


def test_hom_block():
    f = parse("monoid M\nend\nmonoid N\n gen u v\nend\nhom f : M -> N\nend\n"
              "monoid P\n gen x\nend\nhom g : P -> N\n x -> u*v^2\nend")
    g = f.get("g")
    assert isinstance(g, HomDecl)
    assert g.images == [("x", (("u", 1), ("v", 2)))]


def test_empty_right_side():
    with pytest.raises(DslSyntaxError) as e:
        parse("monoid M\n gen x\n rel x^2 =\nend")
    assert (e.value.line, e.value.col) == (3, 11)


def test_errors():
    with pytest.raises(DuplicateName):
        parse("monoid M\nend\nmonoid M\nend")
    with pytest.raises(UnknownReference):
        parse("hom f : M -> N\nend")
    with pytest.raises(UnknownReference):
        parse("monoid M\n gen x\n rel y = 1\nend")
    with pytest.raises(DslSyntaxError):
        parse("monoid M\n gen x")  # no end
    with pytest.raises(DslSyntaxError):
        parse("monoid M\n gen x\n rel x^0 = 1\nend")
    with pytest.raises(DslSyntaxError):
        parse("ring R\nend")


def test_base_files():
    base = parse("monoid M\n gen x\nend")
    more = parse("hom f : M -> M\n x -> x^2\nend", base=base)
    env = build(merge(base, more))
    assert env["f"].describe() == {"x": "x^2"}
    with pytest.raises(DuplicateName):
        parse("monoid M\nend", base=base)


def test_words():
    assert parse_word("1") == ()
    assert parse_word(" x ^ 2 * y ") == (("x", 2), ("y", 1))
    assert parse_word("x^-1", signed=True) == (("x", -1),)
    with pytest.raises(DslSyntaxError):
        parse_word("x^-1")


def test_catalog_round_trip():
    f = parse(catalog_text())
    text = render(f)
    assert render(parse(text)) == text
    assert parse(text) == parse(render(parse(text)))


def test_build_scheme():
    env = build(parse(catalog_text()))
    assert len(env["P2"]) == 7
    assert env["sign"].describe() == {"a": "u", "b": "u"}


def test_inconsistent_finite_hom():
    text = catalog_text() + "\nhom bad : V4 -> C2\n a -> u\n b -> u\n c -> u\nend\n"
    with pytest.raises(Exception, match="inconsistent"):
        build(parse(text))


idents = st.sampled_from(["x", "y", "z", "w"])
exps = st.integers(1, 3)


@st.composite
def monoid_files(draw):
    gens = draw(st.lists(idents, min_size=1, max_size=4, unique=True))
    word = st.lists(st.tuples(st.sampled_from(gens), exps), max_size=3).map(tuple)
    rels = draw(st.lists(st.tuples(word, word), max_size=2))
    lines = ["monoid M"]
    lines.append("  gen " + " ".join(gens))
    for l, r in rels:
        fmt = lambda w: "*".join(f"{n}^{e}" for n, e in w) or "1"  # noqa: E731
        lines.append(f"  rel {fmt(l)} = {fmt(r)}")
    lines.append("end")
    return "\n".join(lines) + "\n"


@given(monoid_files())
def test_round_trip_generated(text):
    canon = render(parse(text))
    assert render(parse(canon)) == canon
