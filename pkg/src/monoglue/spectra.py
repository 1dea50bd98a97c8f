"""Ideals, prime spectra with their Zariski topology, localizations and
structure-sheaf sections and stalks."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .errors import DegreeExceeded, InvalidMonoid, Unbounded
from .monoid import (
    FiniteMonoid,
    Monoid,
    MonoidHom,
    PresentedMonoid,
    as_presented,
    identity,
    is_local_hom,
)
from .words import UnionFind, Word, add, divides, support, unit_word

# -- ideals ------------------------------------------------------------------------


@dataclass
class Ideal:
    """The ideal generated by ``generators`` (closure under multiplication by M)."""

    owner: Monoid
    generators: tuple

    def contains(self, a) -> bool:
        M = self.owner
        if not self.generators:
            return False
        if isinstance(M, FiniteMonoid):
            return any(M.mul(g, m) == a for g in self.generators for m in M.elements())
        F = M.finite()
        if F is not None:
            fa = F.eval_word(M.word_of(a))
            return any(F.mul(F.eval_word(M.word_of(g)), m) == fa for g in self.generators for m in F.elements())
        # a is in the ideal iff some word of its class is divisible by some word of a generator's class
        members, _ = M.class_members(M.word_of(a))
        for g in self.generators:
            gmembers, _ = M.class_members(M.word_of(g))
            for u in members:
                if any(divides(v, u) for v in gmembers):
                    return True
        return False

    def __contains__(self, a) -> bool:
        return self.contains(a)


def ideal_generated(M: Monoid, A: Iterable) -> Ideal:
    return Ideal(M, tuple(A))


def _test_range(M: Monoid) -> list:
    if M.finite() is not None and isinstance(M, FiniteMonoid):
        return M.elements()
    return M.elements(max(1, M.bound // 2))


def is_prime(M: Monoid, I) -> bool:
    """Complement contains 1 and is closed under multiplication.

    Exhaustive for finite monoids; for presented monoids the check runs over
    elements of degree <= bound/2 so that products stay within the bound."""
    contains = I.contains if hasattr(I, "contains") else (lambda a: a in I)
    if contains(M.one):
        return False
    outside = [a for a in _test_range(M) if not contains(a)]
    for i, a in enumerate(outside):
        for b in outside[i:]:
            try:
                if contains(M.mul(a, b)):
                    return False
            except DegreeExceeded:
                continue
    return True


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime, recorded by the set of generators it contains.

    Membership of a word is decided by whether it involves a generator of the
    trace; this is well defined because the trace is a hom to ({0,1},*)."""

    owner: Monoid = field(compare=False, hash=False)
    trace: frozenset[int]

    def contains(self, a) -> bool:
        return bool(support(self.owner.word_of(a)) & self.trace)

    def __contains__(self, a) -> bool:
        return self.contains(a)

    def __le__(self, other: "PrimeIdeal") -> bool:
        return self.trace <= other.trace

    def label(self) -> str:
        names = [self.owner.generators[i] for i in sorted(self.trace)]
        return "(" + ",".join(names) + ")" if names else "()"

    def members(self) -> list:
        M = self.owner
        if M.finite() is None:
            raise Unbounded("members of a prime of an infinite monoid")
        return [a for a in M.elements() if self.contains(a)]


def enumerate_primes(M: Monoid) -> list[PrimeIdeal]:
    """All primes, ordered by size of trace then generator order."""
    return [PrimeIdeal(M, t) for t in M.prime_traces]


def primes_by_ideal_search(M: Monoid) -> list[frozenset[int]]:
    """Independent route: for each set A of generators form the ideal (A) and
    keep it when it is prime with trace exactly A."""
    k = M.ngens
    found = []
    for r in range(k + 1):
        for A in combinations(range(k), r):
            I = ideal_generated(M, [M.gen(i) for i in A])
            trace = frozenset(i for i in range(k) if I.contains(M.gen(i)))
            if trace == frozenset(A) and is_prime(M, I):
                found.append(trace)
    return found


def primes_exhaustive(F: FiniteMonoid) -> list[frozenset[int]]:
    """Oracle for finite monoids: test every subset of elements."""
    n = len(F)
    found = []
    elems = range(n)
    for bits in range(1 << n):
        I = {a for a in elems if bits >> a & 1}
        if F.unit in I:
            continue
        if any(F.mul(a, m) not in I for a in I for m in elems):
            continue
        if any(F.mul(a, b) in I for a in elems if a not in I for b in elems if b not in I):
            continue
        found.append(frozenset(I))
    return found


# -- spectrum -------------------------------------------------------------------------


class SpecSpace:
    """Finite Zariski spectrum: points, basis opens D(a), closures V(.)."""

    def __init__(self, owner: Monoid, points: Sequence[PrimeIdeal]):
        self.owner = owner
        self.points = list(points)

    def __len__(self):
        return len(self.points)

    def index(self, trace: frozenset[int]) -> int:
        for i, p in enumerate(self.points):
            if p.trace == trace:
                return i
        raise KeyError(trace)

    def D(self, a) -> frozenset[int]:
        return frozenset(i for i, p in enumerate(self.points) if not p.contains(a))

    def V(self, subset: Iterable) -> frozenset[int]:
        subset = list(subset)
        return frozenset(i for i, p in enumerate(self.points) if all(p.contains(a) for a in subset))

    def closure(self, i: int) -> frozenset[int]:
        p = self.points[i]
        return frozenset(j for j, q in enumerate(self.points) if p.trace <= q.trace)

    def is_open(self, pts: Iterable[int]) -> bool:
        """Opens of a finite spectrum are exactly the generization-closed sets."""
        pts = set(pts)
        return all(
            j in pts
            for i in pts
            for j, q in enumerate(self.points)
            if q.trace <= self.points[i].trace
        )

    def open_as_union(self, pts: Iterable[int]) -> list:
        """Elements a with the given open equal to the union of the D(a)."""
        out = []
        for i in sorted(set(pts)):
            outside = [g for g in range(self.owner.ngens) if g not in self.points[i].trace]
            w = tuple(1 if g in outside else 0 for g in range(self.owner.ngens))
            out.append(self.owner.eval_word(w))
        return out

    def generic_point(self) -> int:
        return self.index(frozenset())

    def closed_point(self) -> int:
        return self.index(self.owner.maximal_trace)

    def cover_edges(self) -> list[tuple[int, int]]:
        edges = []
        for i, p in enumerate(self.points):
            for j, q in enumerate(self.points):
                if p.trace < q.trace and not any(
                    p.trace < r.trace < q.trace for r in self.points
                ):
                    edges.append((i, j))
        return edges

    def to_dot(self, name: str | None = None) -> str:
        lines = [f'digraph "{name or "Spec " + self.owner.name}" {{']
        for i, p in enumerate(self.points):
            lines.append(f'  p{i} [label="{p.label()}"];')
        for i, j in self.cover_edges():
            lines.append(f"  p{i} -> p{j};")
        lines.append("}")
        return "\n".join(lines)

    def describe(self) -> list[dict]:
        return [
            {"prime": p.label(), "trace": [self.owner.generators[g] for g in sorted(p.trace)]}
            for p in self.points
        ]


def spec(M: Monoid) -> SpecSpace:
    return SpecSpace(M, enumerate_primes(M))


# -- localization ---------------------------------------------------------------------


@dataclass
class LocalizationResult:
    """S^{-1}M with its canonical map and the fraction attached to each element."""

    source: Monoid
    result: Monoid
    canonical: MonoidHom
    denominators: tuple
    fraction_of: Callable

    def lift(self, h: MonoidHom, name: str = "") -> MonoidHom:
        """The unique hom S^{-1}M -> T through which ``h`` factors."""
        T = h.target
        for s in self.denominators:
            if not T.is_unit(h(s)):
                raise InvalidMonoid(f"{self.source.fmt(s)} is not sent to a unit")
        images = []
        for r in self.result.gens():
            num, den = self.fraction_of(r)
            images.append(T.mul(h(num), T.inverse(h(den))))
        return MonoidHom(self.result, T, images, name=name)


def _inverse_name(M: Monoid, s) -> str:
    w = M.word_of(s)
    stem = "".join(
        (g if e == 1 else f"{g}{e}") for g, e in zip(M.generators, w) if e
    ) or "one"
    base = f"{stem}_inv"
    name = base
    i = 1
    while name in M.generators:
        i += 1
        name = f"{base}{i}"
    return name


def localize(M: Monoid, S: Iterable, name: str | None = None) -> LocalizationResult:
    """S^{-1}M. Finite monoids use the explicit fraction construction;
    presented monoids adjoin an inverse generator t_s with s*t_s = 1."""
    S = list(S)
    if isinstance(M, FiniteMonoid):
        return _localize_finite(M, S, name)
    P = M if isinstance(M, PresentedMonoid) else as_presented(M)
    dens: list = []
    seen = set()
    for s in S:
        s = P.eval_word(P.word_of(s))
        if s in seen or P.is_unit(s):
            continue
        seen.add(s)
        dens.append(s)
    k, r = P.ngens, len(dens)
    if r == 0:
        return LocalizationResult(M, M, identity(M), (), lambda a: (a, M.one))
    names = list(P.generators)
    for s in dens:
        nm = _inverse_name(P, s)
        while nm in names:
            nm += "_"
        names.append(nm)
    base_rels = [(l + (0,) * r, rr + (0,) * r) for l, rr in P.relations]
    rels = list(base_rels)
    for i, s in enumerate(dens):
        lhs = P.word_of(s) + tuple(1 if j == i else 0 for j in range(r))
        rels.append((lhs, (0,) * (k + r)))
    label = name or (f"{M.name}_" + "".join(P.fmt(s) for s in dens) if r == 1 else f"{M.name}_S")
    L = PresentedMonoid(label, names, rels, zero=P.zero_gen, bound=P.bound)
    can = MonoidHom(M, L, [L.eval_word(M.word_of(g) + (0,) * r) for g in M.gens()], name="can")

    def fraction_of(a, _k=k, _dens=tuple(dens)):
        w = L.word_of(a)
        den_w = unit_word(_k)
        for e, s in zip(w[_k:], _dens):
            if e:
                den_w = add(den_w, tuple(e * x for x in P.word_of(s)))
        return _settle(P, w[:_k]), _settle(P, den_w)

    return LocalizationResult(M, L, can, tuple(dens), fraction_of)


def _settle(P: PresentedMonoid, w: Word):
    # normal form when within the bound; the raw word is still a valid name
    try:
        return P.eval_word(w)
    except DegreeExceeded:
        return w


def _localize_finite(M: FiniteMonoid, S: list, name: str | None) -> LocalizationResult:
    closure = {M.unit}
    frontier = [M.unit]
    while frontier:
        x = frontier.pop()
        for s in S:
            y = M.mul(x, s)
            if y not in closure:
                closure.add(y)
                frontier.append(y)
    Ssub = sorted(closure, key=M.key)
    pairs = [(a, x) for a in M.elements() for x in Ssub]
    order = {p: i for i, p in enumerate(pairs)}
    uf = UnionFind(pairs, key=lambda p: order[p])
    for i, (a, x) in enumerate(pairs):
        for b, y in pairs[i + 1:]:
            if any(M.mul(M.mul(a, y), t) == M.mul(M.mul(b, x), t) for t in Ssub):
                uf.union((a, x), (b, y))
    classes = uf.classes()
    cls_of = {p: ci for ci, cl in enumerate(classes) for p in cl}
    reps = [cl[0] for cl in classes]

    def lab(p):
        a, x = p
        return M.labels[a] if x == M.unit else f"{M.labels[a]}/{M.labels[x]}"

    n = len(classes)
    table = [
        [cls_of[(M.mul(reps[i][0], reps[j][0]), M.mul(reps[i][1], reps[j][1]))] for j in range(n)]
        for i in range(n)
    ]
    unit = cls_of[(M.unit, M.unit)]
    zero = cls_of[(M.zero, M.unit)] if M.zero is not None else None
    L = FiniteMonoid([lab(p) for p in reps], table, unit, name or (f"{M.name}_{M.fmt(S[0])}" if len(S) == 1 else f"{M.name}_S"), zero=zero)
    can = MonoidHom(M, L, [cls_of[(M.gen(i), M.unit)] for i in range(M.ngens)], name="can")
    dens = tuple(s for s in dict.fromkeys(S) if not M.is_unit(s))
    return LocalizationResult(M, L, can, dens, lambda c: reps[c])


def fractions_equal(M: Monoid, S: Sequence, first: tuple, second: tuple, max_factors: int = 4) -> bool:
    """a/x ~ b/y iff a*y*t = b*x*t for some t in the submonoid generated by S
    (t searched over products of at most ``max_factors`` elements of S)."""
    a, x = first
    b, y = second
    ts = {M.one}
    frontier = {M.one}
    for _ in range(max_factors):
        nxt = set()
        for t in frontier:
            for s in S:
                try:
                    nxt.add(M.mul(t, s))
                except DegreeExceeded:
                    continue
        frontier = nxt - ts
        ts |= nxt
    for t in M.sorted(ts):
        try:
            if M.equal(M.prod([a, y, t]), M.prod([b, x, t])):
                return True
        except DegreeExceeded:
            continue
    return False


def localization_at_prime(M: Monoid, p: PrimeIdeal) -> LocalizationResult:
    """M_p = (M \\ p)^{-1} M."""
    if isinstance(M, FiniteMonoid):
        S = [a for a in M.elements() if not p.contains(a)]
    else:
        # the complement of a prime is generated by the generators outside it
        S = [M.gen(i) for i in range(M.ngens) if i not in p.trace]
    return localize(M, S, name=f"{M.name}_{p.label()}")


def structure_sheaf_section(M: Monoid, a) -> Monoid:
    """Sections over D(a): M_a."""
    return localize(M, [a]).result


def stalk(M: Monoid, p: PrimeIdeal) -> Monoid:
    return localization_at_prime(M, p).result


def stalk_colimit(M: Monoid, p: PrimeIdeal) -> LocalizationResult:
    """Colimit of M_a over a outside p. The system is directed with a final
    term: the product of all generators outside p (all such elements when M
    is a finite table), so the colimit is that single localization."""
    if isinstance(M, FiniteMonoid):
        a = M.prod(a for a in M.elements() if not p.contains(a))
    else:
        a = M.eval_word(tuple(0 if i in p.trace else 1 for i in range(M.ngens)))
    return localize(M, [a])


# -- maps of spectra ----------------------------------------------------------------------


def pullback_trace(f: MonoidHom, q_trace: frozenset[int]) -> frozenset[int]:
    """Trace of f^{-1}(q) for a prime q of the target."""
    N = f.target
    return frozenset(
        i for i in range(f.source.ngens) if support(N.word_of(f(f.source.gen(i)))) & q_trace
    )


def induced_localization_hom(f: MonoidHom, A: LocalizationResult, B: LocalizationResult) -> MonoidHom:
    """S^{-1}M -> T^{-1}N induced by f when f(S) lands in units of T^{-1}N."""
    return A.lift(B.canonical.compose(f))


@dataclass
class SpecMap:
    """Spec N -> Spec M induced by f: M -> N."""

    hom: MonoidHom
    source: SpecSpace  # Spec N
    target: SpecSpace  # Spec M
    mapping: tuple[int, ...]

    def is_continuous(self) -> bool:
        # order preserving maps between finite Alexandrov spectra are continuous
        pts = self.source.points
        for i, p in enumerate(pts):
            for j, q in enumerate(pts):
                if p.trace <= q.trace:
                    if not self.target.points[self.mapping[i]].trace <= self.target.points[self.mapping[j]].trace:
                        return False
        return True

    def preimage(self, pts: Iterable[int]) -> frozenset[int]:
        pts = set(pts)
        return frozenset(i for i, j in enumerate(self.mapping) if j in pts)

    def image(self) -> frozenset[int]:
        return frozenset(self.mapping)

    def is_open_embedding(self) -> bool:
        """Injective, order embedding, open image."""
        if len(set(self.mapping)) != len(self.mapping):
            return False
        src, tgt = self.source.points, self.target.points
        for i, p in enumerate(src):
            for j, q in enumerate(src):
                if (p.trace <= q.trace) != (tgt[self.mapping[i]].trace <= tgt[self.mapping[j]].trace):
                    return False
        return self.target.is_open(self.image())

    def stalk_hom(self, i: int) -> MonoidHom:
        """M_{f^{-1}(q)} -> N_q at the point i of Spec N."""
        q = self.source.points[i]
        p = self.target.points[self.mapping[i]]
        A = localization_at_prime(self.hom.source, p)
        B = localization_at_prime(self.hom.target, q)
        return induced_localization_hom(self.hom, A, B)

    def stalk_homs_local(self) -> bool:
        return all(is_local_hom(self.stalk_hom(i)) for i in range(len(self.source)))


def hom_to_spec_map(f: MonoidHom) -> SpecMap:
    src = spec(f.target)
    tgt = spec(f.source)
    mapping = tuple(tgt.index(pullback_trace(f, q.trace)) for q in src.points)
    return SpecMap(f, src, tgt, mapping)


def adjunction_check(M: Monoid, X, degree: int = 2) -> bool:
    """Hom_Mon(M, Gamma(X)) -> Hom_MS(X, Spec M) is a bijection (see schemes)."""
    from .schemes import adjunction_check as _check

    return _check(M, X, degree)


def g_points(X, G):
    from .schemes import g_points as _g

    return _g(X, G)
