"""Finite M-sets: actions, homs, limits, tensor products and base change,
plus the limit-preservation (flatness) oracle."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from math import lcm
from typing import Sequence

from .actions import enumerate_action
from .errors import InvalidAction, TruncatedEnumeration
from .monoid import Monoid, MonoidHom
from .words import UnionFind, Word, degree


class MSet:
    """A finite set with an action of ``owner``; ``action[g][x]`` is the
    g-th generator applied to point x."""

    def __init__(self, owner: Monoid, size: int, action: Sequence[Sequence[int]], labels=None, check: bool = True):
        self.owner = owner
        self.size = size
        self.action = tuple(tuple(row) for row in action)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(size))
        if len(self.action) != owner.ngens or any(len(r) != size for r in self.action):
            raise InvalidAction("action table has the wrong shape")
        if check:
            self.validate()

    def __len__(self):
        return self.size

    def points(self) -> range:
        return range(self.size)

    def act_word(self, w: Word, x: int) -> int:
        for g, e in enumerate(w):
            row = self.action[g]
            for _ in range(e):
                x = row[x]
        return x

    def act(self, a, x: int) -> int:
        return self.act_word(self.owner.word_of(a), x)

    def validate(self):
        k = self.owner.ngens
        for g in range(k):
            for h in range(g + 1, k):
                rg, rh = self.action[g], self.action[h]
                if any(rg[rh[x]] != rh[rg[x]] for x in self.points()):
                    raise InvalidAction("generators do not commute on the carrier")
        for lhs, rhs in self.owner.relations:
            if any(self.act_word(lhs, x) != self.act_word(rhs, x) for x in self.points()):
                raise InvalidAction("a relation of the monoid fails on the carrier")

    def signature(self):
        return (self.size, self.action)

    def __repr__(self):
        return f"<MSet over {self.owner.name}, {self.size} points>"


@dataclass(frozen=True)
class MSetHom:
    source: MSet
    target: MSet
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_equivariant(self) -> bool:
        for g in range(self.source.owner.ngens):
            rs, rt = self.source.action[g], self.target.action[g]
            if any(self.map[rs[x]] != rt[self.map[x]] for x in self.source.points()):
                return False
        return True

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.map)) == self.source.size

    def compose(self, first: "MSetHom") -> "MSetHom":
        return MSetHom(first.source, self.target, tuple(self.map[y] for y in first.map))


# -- standard modules --------------------------------------------------------------


def terminal(M: Monoid) -> MSet:
    return MSet(M, 1, [(0,)] * M.ngens, labels=["*"])


def empty(M: Monoid) -> MSet:
    return MSet(M, 0, [()] * M.ngens)


def regular(M: Monoid) -> MSet:
    """M acting on itself (finite M only)."""
    F = M.finite()
    if F is None:
        raise InvalidAction(f"{M.name} is infinite; use rees_truncation")
    elems = M.elements()
    idx = {e: i for i, e in enumerate(elems)}
    action = [[idx[M.mul(g, e)] for e in elems] for g in M.gens()]
    return MSet(M, len(elems), action, labels=[M.fmt(e) for e in elems])


def rees_truncation(M: Monoid, d: int) -> MSet:
    """M modulo the ideal of words of degree >= d, collapsed to one point."""
    elems = [e for e in M.elements(d) if degree(M.word_of(e)) < d]
    idx = {e: i for i, e in enumerate(elems)}
    top = len(elems)
    action = []
    for g in range(M.ngens):
        row = []
        for e in elems:
            w = M.word_of(e)
            w2 = tuple(x + (1 if i == g else 0) for i, x in enumerate(w))
            if degree(w2) >= d:
                row.append(top)
            else:
                row.append(idx.get(M.eval_word(w2), top))
        row.append(top)
        action.append(row)
    return MSet(M, top + 1, action, labels=[M.fmt(e) for e in elems] + [f">={d}"])


def restrict(f: MonoidHom, T: MSet) -> MSet:
    """T viewed as an M-set through f: M -> N."""
    action = [[T.act(f(g), x) for x in T.points()] for g in f.source.gens()]
    return MSet(f.source, T.size, action, labels=T.labels)


# -- homs, limits, quotients -------------------------------------------------------------


def extend_equivariant(src: MSet, seeds: Sequence[int], tgt: MSet, images: Sequence[int]) -> MSetHom | None:
    """The equivariant map sending seeds[i] to images[i], if it exists.
    Points not reachable from the seeds make the extension undefined."""
    mp: dict[int, int] = {}
    queue = []
    for s, t in zip(seeds, images):
        if s in mp and mp[s] != t:
            return None
        if s not in mp:
            mp[s] = t
            queue.append(s)
    k = src.owner.ngens
    for x in queue:
        for g in range(k):
            y, img = src.action[g][x], tgt.action[g][mp[x]]
            if y in mp:
                if mp[y] != img:
                    return None
            else:
                mp[y] = img
                queue.append(y)
    if len(mp) != src.size:
        return None
    return MSetHom(src, tgt, tuple(mp[x] for x in src.points()))


def homs_between(S: MSet, T: MSet) -> list[MSetHom]:
    """All equivariant maps (backtracking over a generating set of S)."""
    gens = orbit_generators(S)
    out = []
    for imgs in iproduct(T.points(), repeat=len(gens)):
        h = extend_equivariant(S, gens, T, imgs)
        if h is not None:
            out.append(h)
    return out


def orbit_generators(S: MSet) -> list[int]:
    reached: set[int] = set()
    gens = []
    for x in S.points():
        if x in reached:
            continue
        gens.append(x)
        queue = [x]
        reached.add(x)
        for y in queue:
            for row in S.action:
                z = row[y]
                if z not in reached:
                    reached.add(z)
                    queue.append(z)
    # drop seeds reachable from later seeds
    return [g for g in gens if not any(g != h and g in _orbit(S, h) for h in gens)]


def _orbit(S: MSet, x: int) -> set[int]:
    seen = {x}
    queue = [x]
    for y in queue:
        for row in S.action:
            if row[y] not in seen:
                seen.add(row[y])
                queue.append(row[y])
    return seen


@dataclass
class Limit:
    obj: MSet
    legs: tuple  # cone maps obj -> vertex (product) or the inclusion (equalizer)
    index: dict


def product_mset(factors: Sequence[MSet], owner: Monoid | None = None) -> Limit:
    M = owner if owner is not None else factors[0].owner
    tuples = list(iproduct(*[S.points() for S in factors]))
    index = {t: i for i, t in enumerate(tuples)}
    action = [
        [index[tuple(S.action[g][x] for S, x in zip(factors, t))] for t in tuples]
        for g in range(M.ngens)
    ]
    labels = ["(" + ",".join(S.labels[x] for S, x in zip(factors, t)) + ")" for t in tuples]
    P = MSet(M, len(tuples), action, labels=labels, check=False)
    legs = tuple(MSetHom(P, S, tuple(t[i] for t in tuples)) for i, S in enumerate(factors))
    return Limit(P, legs, index)


def equalizer_mset(phi: MSetHom, psi: MSetHom) -> Limit:
    S = phi.source
    pts = [x for x in S.points() if phi(x) == psi(x)]
    index = {x: i for i, x in enumerate(pts)}
    action = [[index[S.action[g][x]] for x in pts] for g in range(S.owner.ngens)]
    E = MSet(S.owner, len(pts), action, labels=[S.labels[x] for x in pts], check=False)
    return Limit(E, (MSetHom(E, S, tuple(pts)),), index)


def limit_msets(kind: str, data) -> MSet:
    """``product`` of a list of M-sets (first element may be the owner when
    the list is empty: ``(M, [])``) or ``equalizer`` of a pair of homs."""
    if kind == "product":
        if isinstance(data, tuple) and len(data) == 2 and isinstance(data[0], Monoid):
            return product_mset(data[1], owner=data[0]).obj
        return product_mset(list(data)).obj
    if kind == "equalizer":
        return equalizer_mset(*data).obj
    raise ValueError(f"unknown limit kind {kind!r}")


def collapse_submodule(S: MSet, P: Sequence[int]) -> tuple[MSet, MSetHom]:
    """S with all of P identified, closed under the action."""
    P = list(P)
    if not P:
        raise InvalidAction("collapse of an empty subset")
    uf = UnionFind(S.points())
    for x in P[1:]:
        uf.union(P[0], x)
    changed = True
    while changed:
        changed = False
        for row in S.action:
            for x in S.points():
                for y in S.points():
                    if x < y and uf.find(x) == uf.find(y) and uf.find(row[x]) != uf.find(row[y]):
                        uf.union(row[x], row[y])
                        changed = True
    classes = uf.classes()
    cls = {x: i for i, c in enumerate(classes) for x in c}
    action = [[cls[row[c[0]]] for c in classes] for row in S.action]
    labels = ["[" + S.labels[c[0]] + "]" for c in classes]
    Q = MSet(S.owner, len(classes), action, labels=labels)
    return Q, MSetHom(S, Q, tuple(cls[x] for x in S.points()))


# -- tensor and base change ---------------------------------------------------------------


@dataclass
class TensorResult:
    result: MSet
    classes: list
    cls: dict

    def factor(self, s: int, t: int) -> int:
        return self.cls[(s, t)]


def tensor(S: MSet, T: MSet) -> TensorResult:
    """S (x)_M T, with M acting through the right factor."""
    M = S.owner
    pairs = list(iproduct(S.points(), T.points()))
    uf = UnionFind(pairs)
    for g in range(M.ngens):
        for s, t in pairs:
            uf.union((S.action[g][s], t), (s, T.action[g][t]))
    classes = uf.classes()
    cls = {p: i for i, c in enumerate(classes) for p in c}
    action = [[cls[(c[0][0], T.action[g][c[0][1]])] for c in classes] for g in range(M.ngens)]
    labels = [f"{S.labels[c[0][0]]}(x){T.labels[c[0][1]]}" for c in classes]
    return TensorResult(MSet(M, len(classes), action, labels=labels), classes, cls)


@dataclass
class BaseChange:
    """S (x)_M N as an N-set; ``unit[s]`` is the point s (x) 1."""

    module: MSet
    unit: tuple[int, ...]


def base_change(f: MonoidHom, S: MSet, limit: int = 2000) -> BaseChange:
    M, N = f.source, f.target
    F = N.finite()
    if F is not None:
        elems = list(range(len(F)))
        fg = [F.eval_word(F.word_of(N.to_finite(f(g)))) for g in M.gens()]
        ng = [N.to_finite(h) for h in N.gens()]
        pairs = list(iproduct(S.points(), elems))
        uf = UnionFind(pairs)
        for i, a in enumerate(fg):
            for s, n in pairs:
                uf.union((S.action[i][s], n), (s, F.mul(a, n)))
        classes = uf.classes()
        cls = {p: i for i, c in enumerate(classes) for p in c}
        action = [[cls[(c[0][0], F.mul(h, c[0][1]))] for c in classes] for h in ng]
        labels = [f"{S.labels[c[0][0]]}(x){F.labels[c[0][1]]}" for c in classes]
        mod = MSet(N, len(classes), action, labels=labels, check=False)
        return BaseChange(mod, tuple(cls[(s, F.unit)] for s in S.points()))
    idents = [
        (s, N.word_of(f(g)), S.action[i][s]) for i, g in enumerate(M.gens()) for s in S.points()
    ]
    if S.size == 0:
        return BaseChange(MSet(N, 0, [()] * N.ngens, check=False), ())
    table = enumerate_action(N.ngens, N.relations, S.size, idents, limit=limit)
    action = [[row[h] for row in table.table] for h in range(N.ngens)]
    mod = MSet(N, len(table), action, check=False)
    return BaseChange(mod, table.seeds)


def base_change_module(f: MonoidHom, S: MSet) -> MSet:
    return base_change(f, S).module


def induced_map(f: MonoidHom, A: MSet, bcA: BaseChange, bcB: BaseChange, h: MSetHom) -> MSetHom:
    """h (x) N : A (x) N -> B (x) N."""
    out = extend_equivariant(bcA.module, bcA.unit, bcB.module, [bcB.unit[h(a)] for a in A.points()])
    if out is None:
        raise InvalidAction("base change of an M-set hom is not well defined")
    return out


def fraction_module(T: MSet, a) -> tuple[MSet, tuple[int, ...], int]:
    """T localized at powers of a as an M-set, with t -> t/1.

    Fractions t/a^k are taken with k <= K where K covers the tail plus a full
    common period of the action of a; larger exponents reduce by that period.
    Returns the module, the map t -> t/1 and K."""
    M = T.owner
    n = T.size
    step = [T.act(a, x) for x in T.points()]
    tail, periods = 0, []
    for x in T.points():
        seen = {}
        y, i = x, 0
        while y not in seen:
            seen[y] = i
            y, i = step[y], i + 1
        tail = max(tail, seen[y])
        periods.append(i - seen[y])
    L = lcm(*periods) if periods else 1
    K = tail + L

    def pw(x, j):
        for _ in range(j):
            x = step[x]
        return x

    fracs = [(t, k) for k in range(K + 1) for t in T.points()]
    uf = UnionFind(fracs)
    horizon = K + L + n
    for t, k in fracs:
        for u, l in fracs:
            if (t, k) < (u, l) and any(pw(t, l + j) == pw(u, k + j) for j in range(horizon)):
                uf.union((t, k), (u, l))
    classes = uf.classes()
    cls = {p: i for i, c in enumerate(classes) for p in c}
    action = [[cls[(T.action[g][c[0][0]], c[0][1])] for c in classes] for g in range(M.ngens)]
    labels = [T.labels[c[0][0]] + (f"/a^{c[0][1]}" if c[0][1] else "") for c in classes]
    mod = MSet(M, len(classes), action, labels=labels)
    mod.divide = tuple(  # type: ignore[attr-defined]
        cls[(c[0][0], c[0][1] + 1)] if c[0][1] < K else cls[(c[0][0], c[0][1] + 1 - L)] for c in classes
    )
    return mod, tuple(cls[(t, 0)] for t in T.points()), K


# -- flatness oracle --------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductDiagram:
    owner: Monoid
    factors: tuple

    def describe(self) -> str:
        return "product(" + ",".join(str(S.size) for S in self.factors) + ")"


@dataclass(frozen=True)
class EqualizerDiagram:
    phi: MSetHom
    psi: MSetHom

    def describe(self) -> str:
        return f"equalizer({self.phi.source.size}->{self.phi.target.size})"


def preserves(f: MonoidHom, diagram, limit: int = 2000, cache: dict | None = None) -> bool:
    """Whether (x)_M N carries the limit of ``diagram`` to the limit of the
    base-changed diagram, via the canonical comparison map."""
    N = f.target
    cache = {} if cache is None else cache

    def bc(S: MSet) -> BaseChange:
        key = S.signature()
        if key not in cache:
            cache[key] = base_change(f, S, limit)
        return cache[key]

    if isinstance(diagram, ProductDiagram):
        lim = product_mset(list(diagram.factors), owner=diagram.owner)
        bcL = bc(lim.obj)
        bcs = [bc(S) for S in diagram.factors]
        plim = product_mset([b.module for b in bcs], owner=N)
        images = [plim.index[tuple(b.unit[leg(p)] for b, leg in zip(bcs, lim.legs))] for p in lim.obj.points()]
        cmp = extend_equivariant(bcL.module, bcL.unit, plim.obj, images)
        return cmp is not None and cmp.is_bijective()
    phi, psi = diagram.phi, diagram.psi
    S = phi.source
    lim = equalizer_mset(phi, psi)
    inc = lim.legs[0]
    bcE = bc(lim.obj)
    bcS = bc(S)
    bcT = bc(phi.target)
    fphi = induced_map(f, S, bcS, bcT, phi)
    fpsi = induced_map(f, S, bcS, bcT, psi)
    cmp = extend_equivariant(bcE.module, bcE.unit, bcS.module, [bcS.unit[inc(e)] for e in lim.obj.points()])
    if cmp is None:
        return False
    eq = {z for z in bcS.module.points() if fphi(z) == fpsi(z)}
    return len(set(cmp.map)) == bcE.module.size and set(cmp.map) == eq


@dataclass
class FlatnessReport:
    refuter: object | None
    checked: int
    inconclusive: int

    @property
    def refuted(self) -> bool:
        return self.refuter is not None


def flatness_report(f: MonoidHom, family: Sequence, stop_at_first: bool = True) -> FlatnessReport:
    checked = inconclusive = 0
    refuter = None
    cache: dict = {}
    for d in family:
        try:
            ok = preserves(f, d, cache=cache)
        except TruncatedEnumeration:
            inconclusive += 1
            continue
        checked += 1
        if not ok and refuter is None:
            refuter = d
            if stop_at_first:
                break
    return FlatnessReport(refuter, checked, inconclusive)


def is_flat_on_family(f: MonoidHom, family: Sequence) -> bool:
    """False is a definitive refutation; True only means no member refutes."""
    return not flatness_report(f, family).refuted


# -- the standard family ------------------------------------------------------------------------


def cyclic_msets(M: Monoid, max_size: int = 4) -> list[MSet]:
    """Cyclic M-sets with at most ``max_size`` points, one per isomorphism class.

    Points are labelled in BFS order from the generating point, so every
    (set, generator) pair is produced once; duplicates from different
    generating points are removed by canonical form."""
    k = M.ngens
    rels = M.relations
    found: dict = {}

    def consistent(rows, n, complete):
        for g in range(k):
            for h in range(g + 1, k):
                for x in range(n):
                    a, b = rows[g][x], rows[h][x]
                    if a is None or b is None:
                        continue
                    c, d = rows[h][a], rows[g][b]
                    if c is not None and d is not None and c != d:
                        return False
        if complete:
            for lhs, rhs in rels:
                for x in range(n):
                    if _act(rows, lhs, x) != _act(rows, rhs, x):
                        return False
        return True

    def rec(rows, n, slot):
        # slot enumerates (x, g) in BFS order
        if slot == n * k:
            if consistent(rows, n, True):
                S = MSet(M, n, [list(r[:n]) for r in rows], check=False)
                key = _canonical_cyclic(S)
                if key not in found:
                    found[key] = S
            return
        x, g = divmod(slot, k)
        for y in range(min(n + 1, max_size)):
            new_n = n + 1 if y == n else n
            rows[g][x] = y
            if consistent(rows, new_n, False):
                rec(rows, new_n, slot + 1)
            rows[g][x] = None

    if k == 0:
        return [terminal(M)]
    rows = [[None] * max_size for _ in range(k)]
    rec(rows, 1, 0)
    out = list(found.values())
    out.sort(key=lambda S: (S.size, S.action))
    return [MSet(M, S.size, S.action) for S in out]


def _act(rows, w, x):
    for g, e in enumerate(w):
        for _ in range(e):
            x = rows[g][x]
    return x


def _canonical_cyclic(S: MSet):
    best = None
    for start in S.points():
        order = [start]
        pos = {start: 0}
        for y in order:
            for row in S.action:
                z = row[y]
                if z not in pos:
                    pos[z] = len(order)
                    order.append(z)
        if len(order) != S.size:
            continue
        key = tuple(tuple(pos[row[y]] for y in order) for row in S.action)
        if best is None or key < best:
            best = key
    return (S.size, best)


def standard_family(M: Monoid, max_size: int = 4, pair_products: bool = True) -> list:
    """Terminal object (empty product), products of pairs and equalizers of
    pairs of distinct homs, built from the cyclic M-sets of size <= max_size."""
    base = cyclic_msets(M, max_size)
    fam: list = [ProductDiagram(M, ())]
    fam += [ProductDiagram(M, (S,)) for S in base]
    if pair_products:
        for i, S in enumerate(base):
            for T in base[i:]:
                fam.append(ProductDiagram(M, (S, T)))
    for S in base:
        for T in base:
            hs = homs_between(S, T)
            for i, phi in enumerate(hs):
                for psi in hs[i + 1:]:
                    fam.append(EqualizerDiagram(phi, psi))
    return fam


_FAMILIES: dict = {}


def family_for(M: Monoid, max_size: int = 4) -> list:
    """standard_family, memoised per presentation."""
    key = (type(M).__name__, M.generators, M.relations, M.zero is not None, max_size)
    if key not in _FAMILIES:
        _FAMILIES[key] = standard_family(M, max_size)
    return _FAMILIES[key]


# -- pushouts of algebras --------------------------------------------------------------------


def pushout_algebras(f: MonoidHom, g: MonoidHom, name: str | None = None):
    """B (x)_A C for f: A -> B, g: A -> C, presented on the disjoint union of
    generators with f(a) = g(a) for the generators a of A. Returns the
    monoid and the two canonical homs from B and C."""
    from .monoid import PresentedMonoid, as_presented

    A = f.source
    B, C = as_presented(f.target), as_presented(g.target)
    kb, kc = B.ngens, C.ngens
    names = list(B.generators)
    for c in C.generators:
        cand = c
        while cand in names or (cand != c and cand in C.generators):
            cand += "'"
        names.append(cand)
    pb, pc = (0,) * kc, (0,) * kb
    rels = [(l + pb, r + pb) for l, r in B.relations]
    rels += [(pc + l, pc + r) for l, r in C.relations]
    Bt, Ct = f.target, g.target
    for a in A.gens():
        rels.append((Bt.word_of(f(a)) + pb, pc + Ct.word_of(g(a))))
    # each zero stays absorbing only for its own factor, which the copied
    # relations already say
    P = PresentedMonoid(name or f"{B.name}(x){C.name}", names, rels, bound=max(B.bound, C.bound))
    iB = MonoidHom(Bt, P, [P.eval_word(Bt.word_of(b) + pb) for b in Bt.gens()])
    iC = MonoidHom(Ct, P, [P.eval_word(pc + Ct.word_of(c)) for c in Ct.gens()])
    return P, iB, iC
