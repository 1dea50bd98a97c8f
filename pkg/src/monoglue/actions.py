"""Coset-style enumeration of finitely presented actions of a commutative monoid.

Given a presentation (generators, relations) and a finite set of seed points
with some forced identifications, build the universal set with an action that
satisfies the relations. When the enumeration closes it is exact: every merge
was forced, and the final table satisfies all relations at every point. When
it does not close within ``limit`` points, TruncatedEnumeration is raised.

Used for (a) realising finite presented monoids as tables (one seed, the
regular action) and (b) base change S (x)_M N of finite M-sets along M -> N.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .config import DEFAULTS
from .errors import TruncatedEnumeration
from .words import Word

DEFAULT_LIMIT = DEFAULTS.action_limit


@dataclass(frozen=True)
class ActionTable:
    """A closed, complete action: ``table[x][g]`` is generator g applied to x."""

    table: tuple[tuple[int, ...], ...]
    seeds: tuple[int, ...]

    def __len__(self):
        return len(self.table)

    def act(self, x: int, word: Word) -> int:
        for g, e in enumerate(word):
            for _ in range(e):
                x = self.table[x][g]
        return x


class _Enumerator:
    def __init__(self, ngens: int, limit: int):
        self.ngens = ngens
        self.limit = limit
        self.parent: list[int] = []
        self.rows: list[list[int | None]] = []
        self.pending: list[tuple[int, int]] = []
        self.changed = False

    def new(self) -> int:
        if len(self.rows) >= self.limit:
            raise TruncatedEnumeration(f"action enumeration exceeded {self.limit} points")
        self.parent.append(len(self.rows))
        self.rows.append([None] * self.ngens)
        self.changed = True
        return len(self.rows) - 1

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def act(self, x: int, g: int, define: bool = True) -> int | None:
        x = self.find(x)
        y = self.rows[x][g]
        if y is None:
            if not define:
                return None
            y = self.new()
            self.rows[x][g] = y
        return self.find(y)

    def trace(self, x: int, word: Word, define: bool = True) -> int | None:
        for g, e in enumerate(word):
            for _ in range(e):
                x = self.act(x, g, define)
                if x is None:
                    return None
        return self.find(x)

    def coincide(self, a: int, b: int):
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            self.changed = True
            for g in range(self.ngens):
                yb = self.rows[b][g]
                if yb is None:
                    continue
                ya = self.rows[a][g]
                if ya is None:
                    self.rows[a][g] = yb
                else:
                    queue.append((ya, yb))

    def live(self) -> list[int]:
        return [x for x in range(len(self.rows)) if self.parent[x] == x]


def enumerate_action(
    ngens: int,
    relations: Sequence[tuple[Word, Word]],
    nseeds: int = 1,
    identifications: Sequence[tuple[int, Word, int]] = (),
    limit: int = DEFAULT_LIMIT,
) -> ActionTable:
    """Enumerate the action generated by ``nseeds`` points.

    ``identifications`` are triples ``(i, w, j)`` imposing ``w . seed_i = seed_j``.
    Generators are assumed to commute; commutation is imposed pointwise.
    Results are memoised: the same presentation and seeds recur a lot when
    sweeping diagrams.
    """
    return _enumerate(
        ngens,
        tuple((tuple(l), tuple(r)) for l, r in relations),
        nseeds,
        tuple((i, tuple(w), j) for i, w, j in identifications),
        limit,
    )


@lru_cache(maxsize=1 << 16)
def _enumerate(ngens, relations, nseeds, identifications, limit) -> ActionTable:
    en = _Enumerator(ngens, limit)
    seeds = [en.new() for _ in range(nseeds)]
    comm = [(g, h) for g in range(ngens) for h in range(g + 1, ngens)]
    unit = [tuple(1 if i == g else 0 for i in range(ngens)) for g in range(ngens)]

    for i, w, j in identifications:
        en.coincide(en.trace(seeds[i], w), seeds[j])

    while True:
        en.changed = False
        x = 0
        while x < len(en.rows):
            if en.find(x) != x:
                x += 1
                continue
            for g in range(ngens):
                en.act(x, g)
            for lhs, rhs in relations:
                a = en.trace(x, lhs)
                b = en.trace(x, rhs)
                en.coincide(a, b)
            for g, h in comm:
                a = en.trace(x, _pair(unit, g, h))
                b = en.act(en.act(x, h), g)
                en.coincide(a, b)
            x += 1
        for i, w, j in identifications:
            en.coincide(en.trace(seeds[i], w), seeds[j])
        if not en.changed:
            break

    live = en.live()
    index = {x: n for n, x in enumerate(live)}
    table = tuple(
        tuple(index[en.find(en.rows[x][g])] for g in range(ngens)) for x in live
    )
    return ActionTable(table, tuple(index[en.find(s)] for s in seeds))


def _pair(unit, g, h) -> Word:
    # word g then h; generators commute so the exponent vector is enough
    return tuple(a + b for a, b in zip(unit[g], unit[h]))
