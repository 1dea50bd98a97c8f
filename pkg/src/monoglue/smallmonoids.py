"""All commutative monoids of small order, up to isomorphism, by brute force."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from .monoid import FiniteMonoid


def _associative(t, n) -> bool:
    r = range(n)
    return all(t[t[a][b]][c] == t[a][t[b][c]] for a in r for b in r for c in r)


def _canonical(t, n):
    best = None
    for perm in permutations(range(1, n)):
        p = (0,) + perm
        inv = [0] * n
        for i, x in enumerate(p):
            inv[x] = i
        key = tuple(inv[t[p[a]][p[b]]] for a in range(n) for b in range(n))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def _tables(n: int) -> tuple:
    if n == 1:
        return (((0,),),)
    cells = [(a, b) for a in range(1, n) for b in range(a, n)]
    seen = {}
    for values in product(range(n), repeat=len(cells)):
        t = [[0] * n for _ in range(n)]
        for x in range(n):
            t[0][x] = t[x][0] = x
        for (a, b), v in zip(cells, values):
            t[a][b] = t[b][a] = v
        if not _associative(t, n):
            continue
        key = _canonical(t, n)
        if key not in seen:
            seen[key] = tuple(tuple(key[a * n:(a + 1) * n]) for a in range(n))
    return tuple(seen[k] for k in sorted(seen))


def small_monoids(max_order: int = 4) -> list[FiniteMonoid]:
    """One FiniteMonoid per isomorphism class, orders 1..max_order."""
    out = []
    for n in range(1, max_order + 1):
        for i, t in enumerate(_tables(n)):
            labels = ["1"] + [f"e{j}" for j in range(1, n)]
            out.append(FiniteMonoid(labels, t, 0, name=f"T{n}_{i}", check=False))
    return out
