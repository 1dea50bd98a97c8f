"""The shipped catalog and the element lists the verification suites sweep."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .dsl import build, parse

# (monoid, element) pairs for localization sweeps
PAIRS = [
    ("F1", "1"),
    ("A1", "1"),
    ("A1", "x"),
    ("A2", "x"),
    ("A2", "x*y"),
    ("K", "x"),
    ("K", "y"),
    ("Idem", "x"),
    ("C2", "u"),
    ("B", "z"),
    ("A1z", "x"),
    ("A1z", "z"),
]

# element triples (M, a, b) for D(a) n D(b) = D(ab)
TRIPLES = [
    ("A2", "x", "y"),
    ("A2", "x", "x*y"),
    ("A2", "y", "1"),
    ("K", "x", "y"),
    ("K", "y", "y"),
    ("A1z", "x", "z"),
    ("B", "z", "1"),
    ("Idem", "x", "x"),
]

# homs that are localizations at one element, with the expected witness
WITNESSES = {
    "loc_x": "x",
    "loc_xy": "x*y",
    "loc_x2": "x",
    "loc_K": "x",
    "loc_zero": "x",
    "loc_B": "z",
    "id_A1": "1",
    "swap": "1",
    "aut_C3": "1",
    "zero_loc_B": "1",
}

SCHEMES = ["SpecF1", "SpecA1", "P1", "P2", "A1uA1"]

# chartwise coverings of P1 for the base-change comparison: the charts, and
# the charts plus the overlap chart
P1_COVERINGS = ([(0, "1"), (1, "1")], [(0, "1"), (1, "1"), (0, "x")])


def catalog_text() -> str:
    return (resources.files("monoglue") / "data" / "catalog.mg").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _load(bound: int | None) -> dict:
    return build(parse(catalog_text()), bound=bound)


def load(bound: int | None = None) -> dict:
    return _load(bound)


def element(M, text: str):
    """Evaluate a word written in the definition-file grammar."""
    from .dsl import evaluate_word, parse_word

    return evaluate_word(M, parse_word(text))
