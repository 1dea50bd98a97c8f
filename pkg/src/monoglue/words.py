"""Exponent-vector words, deg-lex order and a small union-find."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Sequence

Word = tuple[int, ...]


def unit_word(k: int) -> Word:
    return (0,) * k


def gen_word(k: int, i: int, e: int = 1) -> Word:
    w = [0] * k
    w[i] = e
    return tuple(w)


def add(u: Word, v: Word) -> Word:
    return tuple(a + b for a, b in zip(u, v))


def scale(u: Word, n: int) -> Word:
    return tuple(a * n for a in u)


def degree(u: Word) -> int:
    return sum(u)


def divides(u: Word, v: Word) -> bool:
    """True iff u <= v componentwise."""
    return all(a <= b for a, b in zip(u, v))


def support(u: Word) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(u) if e)


def deglex_key(u: Word) -> tuple:
    # earlier generators are smaller: x < y, x*y < y^2
    return (sum(u), tuple(-e for e in u))


def words_of_degree(k: int, d: int) -> Iterator[Word]:
    """All words of total degree d, in deg-lex order."""
    if k == 0:
        if d == 0:
            yield ()
        return
    out = []
    for combo in combinations_with_replacement(range(k), d):
        w = [0] * k
        for i in combo:
            w[i] += 1
        out.append(tuple(w))
    out.sort(key=deglex_key)
    yield from out


def words_upto(k: int, d: int) -> Iterator[Word]:
    for n in range(d + 1):
        yield from words_of_degree(k, n)


def format_word(u: Word, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, u):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


class UnionFind:
    """Union-find over hashable items; the root of a class is its least member
    under ``key`` so that representatives are deterministic."""

    def __init__(self, items: Iterable = (), key=None):
        self.parent: dict = {}
        self.key = key or (lambda x: x)
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        self.add(x)
        self.add(y)
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.key(ry) < self.key(rx):
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def classes(self) -> list[list]:
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        out = [sorted(g, key=self.key) for g in groups.values()]
        out.sort(key=lambda g: self.key(g[0]))
        return out

    def __len__(self):
        return sum(1 for x in self.parent if self.parent[x] == x)
