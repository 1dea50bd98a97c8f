"""Commutative monoids: presented (generators + relations) and finite (tables).

Presented monoids decide equality by congruence closure over words of total
degree at most ``bound``: the class of a word is the connected component of
the move graph (apply a relation in either direction) restricted to words of
degree <= bound. Equal-within-bound is definitive. A class whose exploration
never hit the bound is the full congruence class, so distinctness is also
definitive then; otherwise it is reported as ``distinct (bound D)``.

Presented monoids that turn out to be finite are realised exactly as a table
by action enumeration, after which all answers are exact.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct
from typing import Iterable, Sequence

import numpy as np

from .actions import ActionTable, enumerate_action
from .config import DEFAULTS, Settings
from .errors import DegreeExceeded, InvalidHom, InvalidMonoid, TruncatedEnumeration, Unbounded
from .words import (
    Word,
    add,
    deglex_key,
    degree,
    divides,
    format_word,
    gen_word,
    support,
    unit_word,
    words_upto,
)

EQUAL = "equal"
DISTINCT = "distinct"

REALIZE_LIMIT = DEFAULTS.realize_limit


def default_bound() -> int:
    """Saturation degree used when a presentation does not fix one."""
    return Settings.from_env().degree_bound


def distinct_at(bound: int) -> str:
    return f"distinct (bound {bound})"


class Monoid:
    """Shared interface. Elements are plain hashable values owned by the monoid."""

    name: str
    generators: tuple[str, ...]
    bound: int

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def one(self):
        return self.eval_word(unit_word(self.ngens))

    def gen(self, i: int):
        return self.eval_word(gen_word(self.ngens, i))

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.ngens)]

    def gen_index(self, name: str) -> int:
        return self.generators.index(name)

    def mul(self, a, b):
        return self.eval_word(add(self.word_of(a), self.word_of(b)))

    def prod(self, items: Iterable):
        w = unit_word(self.ngens)
        for a in items:
            w = add(w, self.word_of(a))
        return self.eval_word(w)

    def power(self, a, n: int):
        return self.eval_word(tuple(e * n for e in self.word_of(a)))

    def equal(self, a, b) -> bool:
        return a == b

    def fmt(self, a) -> str:
        return format_word(self.word_of(a), self.generators)

    def key(self, a):
        return deglex_key(self.word_of(a))

    def sorted(self, items: Iterable) -> list:
        return sorted(items, key=self.key)

    # -- prime traces -------------------------------------------------------
    # A prime ideal p is the same thing as a hom M -> ({0,1},*) (p = preimage
    # of 0); on a presentation such a hom is a set A of generators sent to 0
    # with every relation side hitting A on both sides or on neither.

    def trace_consistent(self, trace: frozenset[int]) -> bool:
        for lhs, rhs in self.relations:
            if bool(support(lhs) & trace) != bool(support(rhs) & trace):
                return False
        return True

    @cached_property
    def prime_traces(self) -> tuple[frozenset[int], ...]:
        k = self.ngens
        found = []
        for bits in iproduct((0, 1), repeat=k):
            trace = frozenset(i for i, b in enumerate(bits) if b)
            if self.trace_consistent(trace):
                found.append(trace)
        found.sort(key=lambda t: (len(t), sorted(t)))
        return tuple(found)

    @cached_property
    def maximal_trace(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for t in self.prime_traces:
            out |= t
        return out

    @cached_property
    def unit_generators(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.ngens) if i not in self.maximal_trace)

    def is_unit(self, a) -> bool:
        """Exact: a product is a unit iff each factor is, and a generator is a
        non-unit iff it lies in some prime."""
        return not (support(self.word_of(a)) & self.maximal_trace)

    def is_group(self) -> bool:
        return not self.maximal_trace

    def is_trivial(self) -> bool:
        return all(self.equal(g, self.one) for g in self.gens())

    # -- to be provided --------------------------------------------------------
    relations: tuple[tuple[Word, Word], ...]
    zero: object

    def eval_word(self, w: Word):
        raise NotImplementedError

    def word_of(self, a) -> Word:
        raise NotImplementedError

    def elements(self, degree: int | None = None) -> list:
        raise NotImplementedError

    def finite(self) -> "FiniteMonoid | None":
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    @property
    def has_zero(self) -> bool:
        return self.zero is not None

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class PresentedMonoid(Monoid):
    """Generators and relations, with bounded congruence closure."""

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        relations: Iterable[tuple[Word, Word]] = (),
        zero: str | int | None = None,
        bound: int | None = None,
    ):
        self.name = name
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise InvalidMonoid(f"{name}: repeated generator name")
        k = len(self.generators)
        self.bound = bound if bound is not None else default_bound()
        if self.bound < 1:
            raise InvalidMonoid("saturation degree must be positive")
        if isinstance(zero, str):
            zero = self.generators.index(zero)
        self.zero_gen: int | None = zero
        rels: list[tuple[Word, Word]] = []
        for lhs, rhs in relations:
            lhs, rhs = tuple(lhs), tuple(rhs)
            if len(lhs) != k or len(rhs) != k or min(lhs + rhs, default=0) < 0:
                raise InvalidMonoid(f"{name}: relation is not a word over the generators")
            if lhs != rhs:
                rels.append((lhs, rhs))
        if zero is not None:
            z = gen_word(k, zero)
            rels.append((gen_word(k, zero, 2), z))
            for g in range(k):
                if g != zero:
                    rels.append((add(z, gen_word(k, g)), z))
        seen = set()
        self.relations = tuple(r for r in rels if not (r in seen or seen.add(r)))
        self._moves = tuple(self.relations) + tuple((r, l) for l, r in self.relations)
        self._class: dict[Word, int] = {}
        self._inverse_cache: dict[int, Word] = {}
        self._components: list[tuple[frozenset[Word], Word, bool]] = []

    # -- identity ---------------------------------------------------------------
    def signature(self):
        return (self.generators, self.relations, self.zero_gen)

    @property
    def zero(self):
        if self.zero_gen is None:
            return None
        return self.eval_word(gen_word(self.ngens, self.zero_gen))

    # -- finiteness ---------------------------------------------------------------
    @cached_property
    def _weight_infinite(self) -> bool:
        """A nonzero additive weight vanishing on all relations maps M onto an
        infinite subgroup of Z, so M is infinite."""
        k = self.ngens
        if k == 0:
            return False
        if not self.relations:
            return True
        mat = np.array([[a - b for a, b in zip(l, r)] for l, r in self.relations], dtype=float)
        return int(np.linalg.matrix_rank(mat)) < k

    @cached_property
    def _realization(self) -> tuple[ActionTable, list[Word]] | None:
        if self._weight_infinite:
            return None
        try:
            table = enumerate_action(self.ngens, self.relations, 1, limit=REALIZE_LIMIT)
        except TruncatedEnumeration:
            return None
        return table, _least_words(table, self.ngens)

    def is_finite(self) -> bool:
        return self._realization is not None

    def finite(self) -> FiniteMonoid | None:
        return self._finite

    def to_finite(self, a) -> int:
        """Index of ``a`` in the table returned by ``finite()``."""
        table, _ = self._realization
        return self._fpos[table.act(table.seeds[0], self.word_of(a))]

    @cached_property
    def _finite(self) -> FiniteMonoid | None:
        real = self._realization
        if real is None:
            return None
        table, words = real
        n = len(table)
        labels = [format_word(w, self.generators) for w in words]
        order = sorted(range(n), key=lambda i: deglex_key(words[i]))
        pos = {i: p for p, i in enumerate(order)}
        self._fpos = pos
        mult = [[0] * n for _ in range(n)]
        for i in order:
            for j in order:
                mult[pos[i]][pos[j]] = pos[table.act(i, words[j])]
        zero = None
        if self.zero_gen is not None:
            zero = pos[table.act(table.seeds[0], gen_word(self.ngens, self.zero_gen))]
        return FiniteMonoid(
            [labels[i] for i in order], mult, unit=pos[table.seeds[0]], name=self.name, zero=zero,
        )

    # -- normal forms -------------------------------------------------------------
    def _check_word(self, w: Word):
        if len(w) != self.ngens or min(w, default=0) < 0:
            raise InvalidMonoid(f"{self.name}: not a word over {self.generators}: {w}")

    def normal_form(self, w: Word) -> Word:
        """Deg-lex least known representative of the class of ``w``."""
        w = tuple(w)
        self._check_word(w)
        real = self._realization
        if real is not None:
            table, words = real
            return words[table.act(table.seeds[0], w)]
        return self._explore(w)[1]

    def _explore(self, w: Word) -> tuple[frozenset[Word], Word, bool]:
        if w in self._class:
            return self._components[self._class[w]]
        d = degree(w)
        if d > self.bound:
            w = self._shrink(w)
            if w in self._class:
                return self._components[self._class[w]]
            if degree(w) > self.bound:
                raise DegreeExceeded(d, self.bound)
        seen = {w}
        queue = [w]
        pruned = False
        bound = self.bound
        for u in queue:
            du = degree(u)
            for lhs, rhs in self._moves:
                if divides(lhs, u):
                    dv = du - degree(lhs) + degree(rhs)
                    if dv > bound:
                        pruned = True
                        continue
                    v = tuple(a - b + c for a, b, c in zip(u, lhs, rhs))
                    if v not in seen:
                        seen.add(v)
                        queue.append(v)
        comp = (frozenset(seen), min(seen, key=deglex_key), not pruned)
        idx = len(self._components)
        self._components.append(comp)
        for u in seen:
            self._class[u] = idx
        return comp

    def _shrink(self, w: Word) -> Word:
        """Apply degree-lowering moves until w fits under the bound (or none
        applies). Each move is an equality, so the class is unchanged."""
        down = [(l, r) for l, r in self._moves if degree(l) > degree(r)]
        while degree(w) > self.bound:
            for lhs, rhs in down:
                if divides(lhs, w):
                    w = tuple(a - b + c for a, b, c in zip(w, lhs, rhs))
                    break
            else:
                return w
        return w

    def class_members(self, a) -> tuple[frozenset[Word], bool]:
        """Known words equal to ``a`` and whether that set is the full class."""
        if self._realization is not None:
            table, words = self._realization
            target = table.act(table.seeds[0], a)
            top = max(degree(words[target]), 1)
            found = frozenset(
                w for w in words_upto(self.ngens, min(self.bound, top + 2))
                if table.act(table.seeds[0], w) == target
            )
            return found, False
        members, _, exact = self._explore(tuple(a))
        return members, exact

    def eval_word(self, w: Word) -> Word:
        return self.normal_form(w)

    def word_of(self, a) -> Word:
        return tuple(a)

    def compare(self, a, b) -> str:
        """``equal``, ``distinct`` or ``distinct (bound D)``."""
        a, b = self.normal_form(a), self.normal_form(b)
        if a == b:
            return EQUAL
        if self._realization is not None:
            return DISTINCT
        if self._explore(a)[2] and self._explore(b)[2]:
            return DISTINCT
        return distinct_at(self.bound)

    def elements(self, degree: int | None = None) -> list[Word]:
        real = self._realization
        if real is not None:
            return sorted(real[1], key=deglex_key)
        d = self.bound if degree is None else min(degree, self.bound)
        out = {self.normal_form(w) for w in words_upto(self.ngens, d)}
        return sorted(out, key=deglex_key)

    def inverse(self, a) -> Word:
        if not self.is_unit(a):
            raise InvalidMonoid(f"{self.fmt(a)} is not a unit of {self.name}")
        w = unit_word(self.ngens)
        for g, e in enumerate(a):
            if e:
                w = add(w, tuple(x * e for x in self._gen_inverse(g)))
        return self.normal_form(w)

    def _gen_inverse(self, g: int) -> Word:
        if g in self._inverse_cache:
            return self._inverse_cache[g]
        k = self.ngens
        one = self.normal_form(unit_word(k))
        gw = gen_word(k, g)
        real = self._realization
        cands = (
            real[1] if real is not None else words_upto(k, self.bound - 1)
        )
        for v in cands:
            if degree(v) + 1 <= self.bound or real is not None:
                if self.normal_form(add(gw, v)) == one:
                    self._inverse_cache[g] = v
                    return v
        raise Unbounded(f"inverse of {self.generators[g]} not found within degree {self.bound}")

    # -- display -----------------------------------------------------------------
    def describe(self) -> str:
        rels = ", ".join(
            f"{format_word(l, self.generators)}={format_word(r, self.generators)}"
            for l, r in self.relations
        )
        gens = ",".join(self.generators)
        return f"F1[{gens}]/({rels})" if rels else f"F1[{gens}]"


def _least_words(table: ActionTable, k: int) -> list[Word]:
    """Deg-lex least word reaching each point of a regular action.

    Least words extend least words (deg-lex is a monomial order), so a
    Dijkstra sweep over points suffices."""
    n = len(table)
    best: list[Word | None] = [None] * n
    start = table.seeds[0]
    heap = [(deglex_key(unit_word(k)), unit_word(k), start)]
    while heap:
        _, w, x = heapq.heappop(heap)
        if best[x] is not None:
            continue
        best[x] = w
        for g in range(k):
            y = table.table[x][g]
            if best[y] is None:
                v = add(w, gen_word(k, g))
                heapq.heappush(heap, (deglex_key(v), v, y))
    return [w for w in best]  # type: ignore[misc]


class FiniteMonoid(Monoid):
    """A finite commutative monoid given by its full multiplication table."""

    def __init__(
        self,
        elements: Sequence[str],
        table: Sequence[Sequence[int]],
        unit: int = 0,
        name: str = "M",
        zero: int | None = None,
        check: bool = True,
    ):
        self.name = name
        self.labels = tuple(str(e) for e in elements)
        n = len(self.labels)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.unit = unit
        self._zero = zero
        self.bound = n + 1
        if check:
            self._validate()
        self._choose_generators()

    def _validate(self):
        n = len(self.labels)
        t = self.table
        if len(t) != n or any(len(row) != n for row in t):
            raise InvalidMonoid(f"{self.name}: table is not {n}x{n}")
        if any(not 0 <= x < n for row in t for x in row):
            raise InvalidMonoid(f"{self.name}: table entry out of range")
        r = range(n)
        for a in r:
            if t[self.unit][a] != a:
                raise InvalidMonoid(f"{self.name}: unit is not neutral for {self.labels[a]}")
            for b in r:
                if t[a][b] != t[b][a]:
                    raise InvalidMonoid(f"{self.name}: not commutative")
        for a in r:
            for b in r:
                ab = t[a][b]
                for c in r:
                    if t[ab][c] != t[a][t[b][c]]:
                        raise InvalidMonoid(f"{self.name}: not associative")
        if self._zero is not None and any(t[self._zero][a] != self._zero for a in r):
            raise InvalidMonoid(f"{self.name}: declared zero is not absorbing")

    def _choose_generators(self):
        n = len(self.labels)
        gens: list[int] = []
        reached = {self.unit}
        for a in range(n):
            if a in reached:
                continue
            gens.append(a)
            frontier = list(reached)
            while frontier:
                x = frontier.pop()
                for g in gens:
                    y = self.table[x][g]
                    if y not in reached:
                        reached.add(y)
                        frontier.append(y)
        self._gen_elems = tuple(gens)
        self.generators = tuple(self.labels[g] for g in gens)
        k = len(gens)
        rows = tuple(tuple(self.table[x][g] for g in gens) for x in range(n))
        act = ActionTable(rows, (self.unit,))
        self._words = _least_words(act, k)
        self._act = act
        rels = []
        for x in range(n):
            for i, g in enumerate(gens):
                y = self.table[x][g]
                w = add(self._words[x], gen_word(k, i))
                if w != self._words[y]:
                    rels.append((w, self._words[y]))
        self.relations = tuple(rels)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self.unit

    def gen(self, i: int) -> int:
        return self._gen_elems[i]

    def __len__(self):
        return len(self.labels)

    def mul(self, a, b):
        return self.table[a][b]

    def eval_word(self, w: Word) -> int:
        return self._act.act(self.unit, w)

    def word_of(self, a) -> Word:
        return self._words[a]

    def fmt(self, a) -> str:
        return self.labels[a]

    def key(self, a):
        return (deglex_key(self._words[a]), a)

    def compare(self, a, b) -> str:
        return EQUAL if a == b else DISTINCT

    def elements(self, degree: int | None = None) -> list[int]:
        return list(range(len(self.labels)))

    def finite(self) -> FiniteMonoid:
        return self

    def to_finite(self, a) -> int:
        return a

    def is_finite(self) -> bool:
        return True

    def inverse(self, a) -> int:
        for b in range(len(self.labels)):
            if self.table[a][b] == self.unit:
                return b
        raise InvalidMonoid(f"{self.labels[a]} is not a unit of {self.name}")

    def element(self, label: str) -> int:
        return self.labels.index(label)

    def describe(self) -> str:
        return f"{self.name} (order {len(self.labels)})"


# -- homomorphisms --------------------------------------------------------------


class MonoidHom:
    """A homomorphism given by the images of the source generators."""

    def __init__(self, source: Monoid, target: Monoid, images: Sequence, name: str = "", check: bool = False):
        if len(images) != source.ngens:
            raise InvalidHom(f"{name or 'hom'}: expected {source.ngens} generator images")
        self.source = source
        self.target = target
        self.images = tuple(images)
        self.name = name
        self._img_words = tuple(target.word_of(x) for x in self.images)
        if check and not self.check():
            raise InvalidHom(f"{name or 'hom'}: relations of {source.name} are not preserved")

    def apply_word(self, w: Word):
        k = self.target.ngens
        out = [0] * k
        for e, img in zip(w, self._img_words):
            if e:
                for i in range(k):
                    out[i] += e * img[i]
        return self.target.eval_word(tuple(out))

    def __call__(self, a):
        return self.apply_word(self.source.word_of(a))

    def check(self) -> bool:
        """Relations preserved; zero sent to zero when both sides have one."""
        try:
            for lhs, rhs in self.source.relations:
                if not self.target.equal(self.apply_word(lhs), self.apply_word(rhs)):
                    return False
        except DegreeExceeded:
            return False
        if self.source.zero is not None and self.target.zero is not None:
            if not self.target.equal(self(self.source.zero), self.target.zero):
                return False
        return True

    def compose(self, first: "MonoidHom") -> "MonoidHom":
        """self o first."""
        return MonoidHom(first.source, self.target, [self(x) for x in first.images])

    def key(self):
        return tuple(self.target.key(x) for x in self.images)

    def same_as(self, other: "MonoidHom") -> bool:
        return all(self.target.equal(a, b) for a, b in zip(self.images, other.images))

    def describe(self) -> dict:
        return {
            g: self.target.fmt(img) for g, img in zip(self.source.generators, self.images)
        }

    def __repr__(self):
        body = ", ".join(f"{g}->{v}" for g, v in self.describe().items())
        return f"<{self.name or 'hom'} {self.source.name}->{self.target.name}: {body}>"


def identity(M: Monoid) -> MonoidHom:
    return MonoidHom(M, M, M.gens(), name=f"id_{M.name}")


def check_hom(f: MonoidHom) -> bool:
    return f.check()


@dataclass
class HomSet:
    """Enumerated homs; ``truncated`` marks a degree-limited (lower-bound) listing."""

    homs: list[MonoidHom]
    truncated: bool = False

    def __iter__(self):
        return iter(self.homs)

    def __len__(self):
        return len(self.homs)


def enumerate_homs(M: Monoid, N: Monoid, degree: int | None = None, require_zero: bool = True) -> HomSet:
    """All homs M -> N; for infinite N, images are limited to words of degree
    <= ``degree`` (default 2) and the result is flagged truncated."""
    truncated = False
    if N.finite() is not None:
        cands = N.elements()
        target = N
    else:
        d = 2 if degree is None else degree
        cands = N.elements(d)
        target = N
        truncated = True
    k = M.ngens
    rels = list(M.relations)
    # relation j can be tested once generators up to last[j] are assigned
    last = [max((i for i in range(k) if l[i] or r[i]), default=-1) for l, r in rels]
    by_level: dict[int, list[int]] = {}
    for j, lv in enumerate(last):
        by_level.setdefault(lv, []).append(j)
    out: list[MonoidHom] = []
    words = [target.word_of(c) for c in cands]

    def value(assign, w):
        kk = target.ngens
        acc = [0] * kk
        for e, idx in zip(w, assign):
            if e:
                cw = words[idx]
                for i in range(kk):
                    acc[i] += e * cw[i]
        return target.eval_word(tuple(acc))

    def ok(assign, level):
        for j in by_level.get(level, ()):
            l, r = rels[j]
            try:
                if not target.equal(value(assign, l), value(assign, r)):
                    return False
            except DegreeExceeded:
                return False
        return True

    def rec(assign):
        i = len(assign)
        if i == k:
            f = MonoidHom(M, target, [cands[a] for a in assign])
            if require_zero and M.zero is not None and target.zero is not None:
                if not target.equal(f(M.zero), target.zero):
                    return
            out.append(f)
            return
        for a in range(len(cands)):
            assign.append(a)
            if ok(assign, i):
                rec(assign)
            assign.pop()

    if ok([], -1):
        rec([])
    return HomSet(out, truncated)


def find_iso_inverse(f: MonoidHom, degree: int = 4) -> MonoidHom | None:
    """Exhibit g with g o f = id and f o g = id on generators, or None."""
    M, N = f.source, f.target
    fm, fn = M.finite(), N.finite()
    if (fm is None) != (fn is None):
        return None
    if fm is not None and len(fm) != len(fn):
        return None
    if len(M.prime_traces) != len(N.prime_traces):
        return None
    pool = M.elements() if fm is not None else M.elements(min(degree, M.bound))
    images = []
    for n in N.gens():
        found = None
        for m in pool:
            try:
                if N.equal(f(m), n):
                    found = m
                    break
            except DegreeExceeded:
                continue
        if found is None:
            return None
        images.append(found)
    g = MonoidHom(N, M, images)
    try:
        if not g.check():
            return None
        if not all(M.equal(g(f(x)), x) for x in M.gens()):
            return None
        if not all(N.equal(f(g(y)), y) for y in N.gens()):
            return None
    except DegreeExceeded:
        return None
    return g


def is_isomorphism(f: MonoidHom, degree: int = 4) -> bool:
    return find_iso_inverse(f, degree) is not None


# -- constructions ---------------------------------------------------------------


def free(names: Sequence[str], name: str | None = None, bound: int | None = None) -> PresentedMonoid:
    label = name or ("F1[" + ",".join(names) + "]" if names else "F1")
    return PresentedMonoid(label, names, (), bound=bound)


def trivial(name: str = "F1") -> PresentedMonoid:
    return PresentedMonoid(name, (), ())


def cyclic_group(n: int, gen: str = "u", name: str | None = None) -> PresentedMonoid:
    return PresentedMonoid(name or f"C{n}", [gen], [((n,), (0,))])


def cyclic_group_table(n: int, name: str | None = None) -> FiniteMonoid:
    labels = ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
    return FiniteMonoid(labels, [[(i + j) % n for j in range(n)] for i in range(n)], 0, name or f"C{n}t")


def boolean_monoid(name: str = "B") -> FiniteMonoid:
    """({0,1}, *): the free monoid-with-zero on nothing."""
    return FiniteMonoid(["1", "0"], [[0, 1], [1, 1]], unit=0, name=name, zero=1)


def as_presented(M: Monoid) -> PresentedMonoid:
    if isinstance(M, PresentedMonoid):
        return M
    zero = None
    if M.zero is not None and degree(M.word_of(M.zero)) == 1:
        zero = M.word_of(M.zero).index(1)
    return PresentedMonoid(M.name, M.generators, M.relations, zero=zero, bound=max(default_bound(), M.bound))


def presentation_iso(M: Monoid) -> tuple[PresentedMonoid, MonoidHom]:
    """A presentation of M with the comparison hom P -> M."""
    P = as_presented(M)
    return P, MonoidHom(P, M, M.gens())


def _fresh(names: Iterable[str], base: str) -> str:
    taken = set(names)
    cand = base
    i = 1
    while cand in taken:
        i += 1
        cand = f"{base}{i}"
    return cand


def adjoin_zero(M: Monoid, zero_name: str | None = None) -> tuple[Monoid, MonoidHom]:
    """M_0 = M with a new absorbing element, and the inclusion M -> M_0."""
    if isinstance(M, FiniteMonoid):
        n = len(M)
        labels = list(M.labels) + [_fresh(M.labels, "0")]
        table = [list(row) + [n] for row in M.table] + [[n] * (n + 1)]
        M0 = FiniteMonoid(labels, table, M.unit, f"({M.name})_0", zero=n)
        return M0, MonoidHom(M, M0, [M.gen(i) for i in range(M.ngens)])
    z = zero_name or _fresh(M.generators, "z")
    k = M.ngens
    rels = [(l + (0,), r + (0,)) for l, r in M.relations]
    M0 = PresentedMonoid(f"({M.name})_0", M.generators + (z,), rels, zero=k, bound=M.bound)
    return M0, MonoidHom(M, M0, [gen_word(k + 1, i) for i in range(k)])


def polynomial_extension(M: Monoid, names: Sequence[str]) -> tuple[PresentedMonoid, MonoidHom]:
    """M[S] and the canonical M -> M[S]."""
    P = as_presented(M)
    for s in names:
        if s in P.generators:
            raise InvalidMonoid(f"{s} is not a fresh identifier")
    if len(set(names)) != len(names):
        raise InvalidMonoid("repeated identifier")
    r = len(names)
    pad = (0,) * r
    rels = [(l + pad, rr + pad) for l, rr in P.relations if (l, rr) not in _zero_relations(P)]
    zero = P.zero_gen
    ext = PresentedMonoid(
        f"{M.name}[{','.join(names)}]" if names else M.name,
        P.generators + tuple(names), rels, zero=zero, bound=P.bound,
    )
    can = MonoidHom(M, ext, [ext.eval_word(M.word_of(g) + pad) for g in M.gens()])
    return ext, can


def _zero_relations(P: PresentedMonoid) -> set:
    if P.zero_gen is None:
        return set()
    k, z = P.ngens, P.zero_gen
    zw = gen_word(k, z)
    out = {(gen_word(k, z, 2), zw)}
    out |= {(add(zw, gen_word(k, g)), zw) for g in range(k) if g != z}
    return out


def quotient_by_congruence(M: Monoid, pairs: Iterable[tuple[Word, Word]], name: str | None = None) -> tuple[PresentedMonoid, MonoidHom]:
    """M/~ for the congruence generated by ``pairs`` and M's relations."""
    P = as_presented(M)
    base = [r for r in P.relations if r not in _zero_relations(P)]
    Q = PresentedMonoid(
        name or f"{M.name}/~", P.generators, base + [tuple(map(tuple, p)) for p in pairs],
        zero=P.zero_gen, bound=P.bound,
    )
    proj = MonoidHom(M, Q, [Q.eval_word(M.word_of(g)) for g in M.gens()])
    return Q, proj


def direct_product(A: Monoid, B: Monoid, name: str | None = None) -> tuple[PresentedMonoid, MonoidHom, MonoidHom]:
    """A x B presented on the disjoint union of generators, with the two
    inclusions a -> (a,1), b -> (1,b)."""
    PA, PB = as_presented(A), as_presented(B)
    ka, kb = PA.ngens, PB.ngens
    names = [f"{g}" for g in PA.generators]
    for g in PB.generators:
        names.append(g if g not in names else _fresh(names + list(PB.generators), g + "_"))
    rels = [(l + (0,) * kb, r + (0,) * kb) for l, r in PA.relations]
    rels += [((0,) * ka + l, (0,) * ka + r) for l, r in PB.relations]
    C = PresentedMonoid(name or f"{A.name}x{B.name}", names, rels, bound=max(PA.bound, PB.bound))
    ia = MonoidHom(A, C, [C.eval_word(A.word_of(g) + (0,) * kb) for g in A.gens()])
    ib = MonoidHom(B, C, [C.eval_word((0,) * ka + B.word_of(g)) for g in B.gens()])
    return C, ia, ib


def units(M: Monoid) -> list:
    """M^x as a list of elements; raises Unbounded when the unit group is
    not certified finite within the degree bound."""
    if M.finite() is not None:
        F = M.finite()
        if F is not M:
            return M.sorted({M.eval_word(F.word_of(u)) for u in range(len(F)) if F.is_unit(u)})
        return [a for a in M.elements() if M.is_unit(a)]
    ug = M.unit_generators
    k = M.ngens
    found = {M.one}
    for d in range(1, M.bound + 1):
        new = False
        fresh_at_d = set()
        for w in words_upto(len(ug), d):
            if degree(w) != d:
                continue
            full = [0] * k
            for idx, e in zip(ug, w):
                full[idx] = e
            a = M.eval_word(tuple(full))
            if a not in found:
                fresh_at_d.add(a)
                new = True
        found |= fresh_at_d
        if not new:
            return M.sorted(found)
    raise Unbounded(f"unit group of {M.name} not certified finite within degree {M.bound}")


def is_local_hom(f: MonoidHom) -> bool:
    """f^{-1}(N^x) = M^x, decided on generators (exact)."""
    return all(not f.target.is_unit(f(f.source.gen(i))) for i in f.source.maximal_trace)
