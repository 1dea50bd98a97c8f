"""Schemes over F1 glued from affine charts, their points and stalks, and
the functor of points computed two ways.

Overlaps are single basic opens: U_ij = D(a_ij) in Spec M_i (or empty).
The transition theta_ij : (M_j)_{a_ji} -> (M_i)_{a_ij} is the ring-of-sections
side of the identification U_ij = U_ji.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Callable, Mapping, Sequence

from .errors import CocycleViolation, InvalidHom, NotACovering
from .monoid import (
    Monoid,
    MonoidHom,
    enumerate_homs,
    find_iso_inverse,
    is_isomorphism,
)
from .msets import pushout_algebras
from .spectra import (
    LocalizationResult,
    PrimeIdeal,
    hom_to_spec_map,
    localization_at_prime,
    localize,
    pullback_trace,
)
from .words import UnionFind, support

Laurent = Mapping[str, int]


def laurent(L: LocalizationResult, exps: Laurent):
    """Evaluate a Laurent monomial in the generators of L.source inside L.result."""
    M = L.source
    pos = [0] * M.ngens
    neg = [0] * M.ngens
    for name, e in exps.items():
        i = M.gen_index(name)
        if e >= 0:
            pos[i] += e
        else:
            neg[i] -= e
    R = L.result
    num = L.canonical(M.eval_word(tuple(pos)))
    if not any(neg):
        return num
    den = L.canonical(M.eval_word(tuple(neg)))
    if not R.is_unit(den):
        raise InvalidHom(f"{M.fmt(M.eval_word(tuple(neg)))} is not invertible in {R.name}")
    return R.mul(num, R.inverse(den))


# -- gluing data ----------------------------------------------------------------------


class GluingData:
    """Charts, overlap elements and transitions, validated on construction."""

    def __init__(
        self,
        charts: Sequence[Monoid],
        overlaps: Mapping[tuple[int, int], object] | None = None,
        transitions: Mapping[tuple[int, int], object] | None = None,
        names: Sequence[str] | None = None,
        name: str = "X",
    ):
        self.name = name
        self.charts = list(charts)
        self.names = list(names) if names else [f"U{i}" for i in range(len(self.charts))]
        n = len(self.charts)
        overlaps = dict(overlaps or {})
        self.overlap: dict[tuple[int, int], object] = {}
        for i in range(n):
            self.overlap[(i, i)] = self.charts[i].one
        for (i, j), a in overlaps.items():
            self.overlap[(i, j)] = a
        for i in range(n):
            for j in range(n):
                if ((i, j) in self.overlap) != ((j, i) in self.overlap):
                    raise CocycleViolation(f"overlap ({i},{j}) given on one side only")
        for i in range(n):
            for j in range(n):
                self.overlap.setdefault((i, j), None)
        self.loc: dict[tuple[int, int], LocalizationResult] = {}
        for (i, j), a in self.overlap.items():
            if a is not None:
                self.loc[(i, j)] = localize(self.charts[i], [a])
        self.theta: dict[tuple[int, int], MonoidHom] = {}
        for (i, j), data in (transitions or {}).items():
            self.theta[(i, j)] = self._as_transition(i, j, data)
        for i in range(n):
            self.theta[(i, i)] = self.loc[(i, i)].lift(self.loc[(i, i)].canonical)
        for (i, j) in list(self.loc):
            if (i, j) in self.theta and (j, i) not in self.theta:
                inv = find_iso_inverse(self.theta[(i, j)])
                if inv is None:
                    raise CocycleViolation(f"transition ({i},{j}) is not invertible")
                self.theta[(j, i)] = inv
        for (i, j) in self.loc:
            if (i, j) not in self.theta:
                raise CocycleViolation(f"missing transition for overlap ({i},{j})")
        self._check_inverse_pairs()
        self.check_cocycle()

    def _as_transition(self, i: int, j: int, data) -> MonoidHom:
        if isinstance(data, MonoidHom):
            return data
        Li, Lj = self.loc[(i, j)], self.loc[(j, i)]
        Mj = self.charts[j]
        images = [laurent(Li, data[g]) for g in Mj.generators]
        h = MonoidHom(Mj, Li.result, images, name=f"theta{i}{j}")
        if not h.check():
            raise CocycleViolation(f"transition ({i},{j}) does not respect relations")
        return Lj.lift(h, name=f"theta{i}{j}")

    def _check_inverse_pairs(self):
        for (i, j) in self.loc:
            if i >= j:
                continue
            t_ij, t_ji = self.theta[(i, j)], self.theta[(j, i)]
            Li, Lj = self.loc[(i, j)].result, self.loc[(j, i)].result
            if not all(Lj.equal(t_ji(t_ij(y)), y) for y in Lj.gens()):
                raise CocycleViolation(f"transitions ({i},{j}) and ({j},{i}) are not inverse")
            if not all(Li.equal(t_ij(t_ji(x)), x) for x in Li.gens()):
                raise CocycleViolation(f"transitions ({i},{j}) and ({j},{i}) are not inverse")

    # sections of chart j, pushed into chart i and then into (M_i)_{a_ij a_ik}
    def push(self, i: int, j: int, target: LocalizationResult, x):
        """Image in ``target`` (a localization of M_i at a multiple of a_ij)
        of an element x of M_j lying over U_ji."""
        y = self.theta[(i, j)](self.loc[(j, i)].canonical(x))
        return self.loc[(i, j)].lift(target.canonical)(y)

    def check_cocycle(self):
        n = len(self.charts)
        for i, j, k in iproduct(range(n), repeat=3):
            if len({i, j, k}) < 3:
                continue
            oij, oik, ojk = self.overlap[(i, j)], self.overlap[(i, k)], self.overlap[(j, k)]
            if oij is None or oik is None:
                continue
            if ojk is None:
                raise CocycleViolation(f"U_{i}{j} and U_{i}{k} meet but U_{j}{k} is empty")
            Mi = self.charts[i]
            D = localize(Mi, [Mi.mul(oij, oik)])
            Lj_k = self.loc[(j, k)]
            for g in self.charts[k].gens():
                direct = self.push(i, k, D, g)
                # route through chart j: theta_jk(g) = num/den in M_j
                y = self.theta[(j, k)](self.loc[(k, j)].canonical(g))
                num, den = Lj_k.fraction_of(y)
                pn = self.push(i, j, D, num)
                pd = self.push(i, j, D, den)
                if not D.result.is_unit(pd):
                    raise CocycleViolation(f"a_{j}{k} is not invertible on U_{i}{j} cap U_{i}{k}")
                via = D.result.mul(pn, D.result.inverse(pd))
                if not D.result.equal(direct, via):
                    raise CocycleViolation(
                        f"cocycle fails on ({i},{j},{k}) at generator {self.charts[k].fmt(g)}"
                    )
        return True


# -- glued schemes ----------------------------------------------------------------------------


@dataclass
class Point:
    chart: int
    trace: frozenset
    members: tuple  # (chart, trace) pairs representing this point

    def label(self, X: "GeomScheme") -> str:
        M = X.data.charts[self.chart]
        names = ",".join(M.generators[g] for g in sorted(self.trace))
        return f"{X.data.names[self.chart]}:({names})"


class GeomScheme:
    """The monoidal space obtained by gluing."""

    def __init__(self, data: GluingData):
        self.data = data
        self.name = data.name
        charts = data.charts
        items = [(i, t) for i, M in enumerate(charts) for t in M.prime_traces]
        uf = UnionFind(items, key=lambda it: (it[0], len(it[1]), sorted(it[1])))
        for (i, j), L in data.loc.items():
            if i == j:
                continue
            a = data.overlap[(i, j)]
            Mi = charts[i]
            for t in Mi.prime_traces:
                if support(Mi.word_of(a)) & t:
                    continue
                uf.union((i, t), (j, self.transport_trace(i, j, t)))
        self.points: list[Point] = []
        self._where: dict = {}
        for cls in uf.classes():
            rep = min(cls, key=lambda it: (it[0], len(it[1]), sorted(it[1])))
            p = Point(rep[0], rep[1], tuple(cls))
            for it in cls:
                self._where[it] = len(self.points)
            self.points.append(p)

    def transport_trace(self, i: int, j: int, t: frozenset) -> frozenset:
        """The point of U_ji matching the point t of U_ij: pull the prime of
        (M_i)_{a_ij} back along theta_ij and restrict to M_j."""
        d = self.data
        Mi, Mj = d.charts[i], d.charts[j]
        Li = d.loc[(i, j)]
        out = set()
        for g in range(Mj.ngens):
            img = d.theta[(i, j)](d.loc[(j, i)].canonical(Mj.gen(g)))
            num, _ = Li.fraction_of(img)
            if support(Mi.word_of(num)) & t:
                out.add(g)
        return frozenset(out)

    def __len__(self):
        return len(self.points)

    def point_of(self, chart: int, trace: frozenset) -> int:
        return self._where[(chart, frozenset(trace))]

    def chart_points(self, i: int) -> list[int]:
        return sorted({self._where[(i, t)] for t in self.data.charts[i].prime_traces})

    def specializes(self, x: int, y: int) -> bool:
        """y lies in the closure of x."""
        for (i, t) in self.points[y].members:
            for (j, s) in self.points[x].members:
                if i == j and s <= t:
                    return True
        return False

    def is_open(self, pts) -> bool:
        pts = set(pts)
        return all(x in pts for y in pts for x in range(len(self)) if self.specializes(x, y))

    def closed_points(self) -> list[int]:
        return [y for y in range(len(self)) if not any(y != z and self.specializes(y, z) for z in range(len(self)))]

    def stalk(self, x: int) -> Monoid:
        p = self.points[x]
        return localization_at_prime(self.data.charts[p.chart], PrimeIdeal(self.data.charts[p.chart], p.trace)).result

    def stalks_agree(self) -> bool:
        """Stalks computed in every chart containing a point are isomorphic
        via the transition maps."""
        for p in self.points:
            for (i, t) in p.members:
                for (j, s) in p.members:
                    if i >= j:
                        continue
                    Mi, Mj = self.data.charts[i], self.data.charts[j]
                    Si = localization_at_prime(Mi, PrimeIdeal(Mi, t))
                    Sj = localization_at_prime(Mj, PrimeIdeal(Mj, s))
                    # M_j -> (M_i)_{a_ij} -> stalk of M_i, then extend to the stalk of M_j
                    to_i = self.data.loc[(i, j)].lift(Si.canonical)
                    h = MonoidHom(Mj, Si.result, [to_i(self.data.theta[(i, j)](self.data.loc[(j, i)].canonical(g))) for g in Mj.gens()])
                    if not is_isomorphism(Sj.lift(h)):
                        return False
        return True

    def describe(self) -> dict:
        return {
            "points": [
                {
                    "point": p.label(self),
                    "closed": i in self.closed_points(),
                    "stalk": self.stalk(i).describe(),
                }
                for i, p in enumerate(self.points)
            ],
            "specializations": [
                [self.points[x].label(self), self.points[y].label(self)]
                for x in range(len(self)) for y in range(len(self))
                if x != y and self.specializes(x, y)
            ],
        }

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name}" {{']
        for i, p in enumerate(self.points):
            lines.append(f'  p{i} [label="{p.label(self)}"];')
        for x in range(len(self)):
            for y in range(len(self)):
                if x != y and self.specializes(x, y) and not any(
                    z not in (x, y) and self.specializes(x, z) and self.specializes(z, y) for z in range(len(self))
                ):
                    lines.append(f"  p{x} -> p{y};")
        lines.append("}")
        return "\n".join(lines)


def glue(data: GluingData) -> GeomScheme:
    return GeomScheme(data)


def affine(M: Monoid, name: str | None = None) -> GeomScheme:
    return glue(GluingData([M], name=name or f"Spec {M.name}", names=[M.name]))


# -- functor of points: geometric route ----------------------------------------------------------


@dataclass
class PointSet:
    """Morphisms Spec N -> X as classes of chart homs. ``truncated`` marks a
    degree-limited enumeration (a lower bound)."""

    base: list  # (chart, hom)
    classes: list  # lists of indices into base
    truncated: bool

    def __len__(self):
        return len(self.classes)

    def partition(self) -> frozenset:
        return frozenset(frozenset(c) for c in self.classes)

    def class_of(self, idx: int) -> int:
        for n, c in enumerate(self.classes):
            if idx in c:
                return n
        raise KeyError(idx)


def _chart_homs(X: GeomScheme, N: Monoid, degree: int) -> tuple[list, dict, bool]:
    base = []
    index = {}
    truncated = False
    for i, M in enumerate(X.data.charts):
        hs = enumerate_homs(M, N, degree=degree)
        truncated |= hs.truncated
        for h in hs:
            index[(i, h.key())] = len(base)
            base.append((i, h))
    return base, index, truncated


def hom_schemes(N: Monoid, X: GeomScheme, degree: int = 2) -> PointSet:
    """Hom(Spec N, X): chart homs M_i -> N, with phi on chart i identified
    with phi_ext o theta_ij on chart j whenever phi(a_ij) is a unit."""
    base, index, truncated = _chart_homs(X, N, degree)
    uf = UnionFind(range(len(base)))
    data = X.data
    for n, (i, phi) in enumerate(base):
        for j in range(len(data.charts)):
            a = data.overlap[(i, j)]
            if i == j or a is None or not N.is_unit(phi(a)):
                continue
            ext = data.loc[(i, j)].lift(phi)
            Mj = data.charts[j]
            psi = MonoidHom(Mj, N, [ext(data.theta[(i, j)](data.loc[(j, i)].canonical(g))) for g in Mj.gens()])
            m = index.get((j, psi.key()))
            if m is not None:
                uf.union(n, m)
    return PointSet(base, uf.classes(), truncated)


def closed_point_image(X: GeomScheme, chart: int, phi: MonoidHom) -> int:
    """Image of the closed point of Spec N under the morphism given by phi."""
    return X.point_of(chart, pullback_trace(phi, phi.target.maximal_trace))


# -- functor of points: descent route ------------------------------------------------------------


@dataclass
class SheafPresentation:
    """The coequalizer presentation: charts h_{Spec M_i}, overlaps
    h_{U_ij}, and the two arrow families U_ij -> Spec M_i, U_ij -> Spec M_j."""

    data: GluingData
    left: dict = field(default_factory=dict)  # (i,j) -> canonical M_i -> O(U_ij)
    right: dict = field(default_factory=dict)  # (i,j) -> M_j -> O(U_ij) through theta_ij

    @property
    def charts(self):
        return self.data.charts

    def arrows(self):
        return sorted(self.left)


def h_functor(X: GeomScheme) -> SheafPresentation:
    d = X.data
    F = SheafPresentation(d)
    for (i, j), L in d.loc.items():
        F.left[(i, j)] = L.canonical
        Mj = d.charts[j]
        F.right[(i, j)] = MonoidHom(Mj, L.result, [d.theta[(i, j)](d.loc[(j, i)].canonical(g)) for g in Mj.gens()])
    return F


def realization(F: SheafPresentation) -> GeomScheme:
    d = F.data
    transitions = {k: v for k, v in d.theta.items() if k[0] != k[1]}
    overlaps = {k: v for k, v in d.overlap.items() if v is not None and k[0] != k[1]}
    return glue(GluingData(d.charts, overlaps, transitions, names=d.names, name=d.name))


def evaluate_via_descent(F: SheafPresentation, N: Monoid, degree: int = 2) -> PointSet:
    """Coequalizer of the two maps  coprod Hom(O(U_ij), N) => coprod Hom(M_i, N)."""
    d = F.data
    base = []
    index = {}
    truncated = False
    for i, M in enumerate(d.charts):
        hs = enumerate_homs(M, N, degree=degree)
        truncated |= hs.truncated
        for h in hs:
            index[(i, h.key())] = len(base)
            base.append((i, h))
    uf = UnionFind(range(len(base)))
    for (i, j) in F.arrows():
        if i == j:
            continue
        L = d.loc[(i, j)].result
        hs = enumerate_homs(L, N, degree=degree)
        truncated |= hs.truncated
        for chi in hs:
            a = index.get((i, chi.compose(F.left[(i, j)]).key()))
            b = index.get((j, chi.compose(F.right[(i, j)]).key()))
            if a is not None and b is not None:
                uf.union(a, b)
    return PointSet(base, uf.classes(), truncated)


def natural_bijection(A: PointSet, B: PointSet) -> dict | None:
    """Class-to-class bijection induced by the common base, or None."""
    if [(i, h.key()) for i, h in A.base] != [(i, h.key()) for i, h in B.base]:
        return None
    if A.partition() != B.partition():
        return None
    return {n: B.class_of(c[0]) for n, c in enumerate(A.classes)}


def pushforward(P: PointSet, g: MonoidHom, Q: PointSet) -> dict | None:
    """The map P(N) -> Q(N') induced by g: N -> N' (None if not well defined
    or if an image falls outside the truncated enumeration of Q)."""
    qindex = {(i, h.key()): n for n, (i, h) in enumerate(Q.base)}
    out: dict = {}
    for c, members in enumerate(P.classes):
        targets = set()
        for m in members:
            i, h = P.base[m]
            k = qindex.get((i, g.compose(h).key()))
            if k is None:
                return None
            targets.add(Q.class_of(k))
        if len(targets) != 1:
            return None
        out[c] = targets.pop()
    return out


# -- G-points and the adjunction ---------------------------------------------------------------------


def g_points(X: GeomScheme, G: Monoid) -> list[tuple[int, MonoidHom]]:
    """Pairs (x, O_{X,x} -> G) over the points whose stalk is a group."""
    out = []
    for x in range(len(X)):
        S = X.stalk(x)
        if not S.is_group():
            continue
        for h in enumerate_homs(S, G):
            out.append((x, h))
    return out


def g_points_bijection(X: GeomScheme, G: Monoid) -> bool:
    """hom_schemes(G, X) -> g_points(X, G): send phi on chart i to the image
    of the closed point and the extension of phi to its stalk."""
    P = hom_schemes(G, X)
    pts = {(x, h.key()) for x, h in g_points(X, G)}
    images = set()
    for members in P.classes:
        found = set()
        for m in members:
            i, phi = P.base[m]
            x = closed_point_image(X, i, phi)
            pt = X.points[x]
            if pt.chart != i:
                continue
            M = X.data.charts[i]
            ext = localization_at_prime(M, PrimeIdeal(M, pt.trace)).lift(phi)
            found.add((x, ext.key()))
        if len(found) != 1:
            return False
        images |= found
    return len(images) == len(P) and images == pts


def global_sections(X: GeomScheme, degree: int = 2) -> list[tuple]:
    """Gamma(X, O) truncated: compatible tuples of chart elements of degree <= ``degree``."""
    d = X.data
    pools = [M.elements(degree) for M in d.charts]
    out = []
    for tup in iproduct(*pools):
        if all(
            d.loc[(i, j)].result.equal(
                d.loc[(i, j)].canonical(tup[i]), d.theta[(i, j)](d.loc[(j, i)].canonical(tup[j]))
            )
            for (i, j) in d.loc
            if i != j
        ):
            out.append(tup)
    return out


def adjunction_check(M: Monoid, X: GeomScheme, degree: int = 2) -> bool:
    """Hom(M, Gamma(X)) against Hom(X, Spec M).

    Left: homs into the truncated section monoid (generator images among
    compatible tuples). Right: families of chart homs M -> M_i whose induced
    maps of spectra have local stalk maps and which agree on overlaps."""
    d = X.data
    gamma = global_sections(X, degree)
    left = []
    for imgs in iproduct(gamma, repeat=M.ngens):
        homs = [MonoidHom(M, Mi, [t[i] for t in imgs]) for i, Mi in enumerate(d.charts)]
        if all(h.check() for h in homs):
            left.append(tuple(h.key() for h in homs))
    chart_homs = []
    for Mi in d.charts:
        hs = [h for h in enumerate_homs(M, Mi, degree=degree) if hom_to_spec_map(h).stalk_homs_local()]
        chart_homs.append(hs)
    right = []
    for fam in iproduct(*chart_homs):
        ok = True
        for (i, j) in d.loc:
            if i == j:
                continue
            Li = d.loc[(i, j)]
            for g in M.gens():
                lhs = Li.canonical(fam[i](g))
                rhs = d.theta[(i, j)](d.loc[(j, i)].canonical(fam[j](g)))
                if not Li.result.equal(lhs, rhs):
                    ok = False
        if ok:
            right.append(tuple(h.key() for h in fam))
    return sorted(left) == sorted(right) and len(set(left)) == len(left)


# -- morphisms of schemes ----------------------------------------------------------------------------


@dataclass
class SchemeMorphism:
    """Each source chart i maps into target chart ``charts[i]`` through
    ``homs[i]``: M^Y_{charts[i]} -> M^X_i."""

    source: GeomScheme
    target: GeomScheme
    charts: tuple
    homs: tuple

    def point_map(self) -> list[int]:
        out = [None] * len(self.source)
        for i, (j, h) in enumerate(zip(self.charts, self.homs)):
            for t in self.source.data.charts[i].prime_traces:
                x = self.source.point_of(i, t)
                y = self.target.point_of(j, pullback_trace(h, t))
                if out[x] is not None and out[x] != y:
                    raise InvalidHom("chart maps disagree on a shared point")
                out[x] = y
        return out  # type: ignore[return-value]


def chart_inclusion(X: GeomScheme, i: int) -> SchemeMorphism:
    M = X.data.charts[i]
    return SchemeMorphism(affine(M), X, (i,), (MonoidHom(M, M, M.gens()),))


def is_open_immersion_schemes(f: SchemeMorphism) -> bool:
    """Chartwise: every chart hom is a localization at one element (decided
    by the classifier's certificate route) and the map of points is injective."""
    from .classify import recognize_localization

    for h in f.homs:
        if recognize_localization(h) is None:
            return False
    pm = f.point_map()
    return len(set(pm)) == len(pm)


def is_open_immersion_geometric(f: SchemeMorphism) -> bool:
    """Topological route: injective, open image, generizations lift, and
    every stalk map is an isomorphism."""
    pm = f.point_map()
    if len(set(pm)) != len(pm):
        return False
    X, Y = f.source, f.target
    img = set(pm)
    if not Y.is_open(img):
        return False
    for x in range(len(X)):
        for z in range(len(X)):
            if X.specializes(x, z) != Y.specializes(pm[x], pm[z]):
                return False
    for i, h in enumerate(f.homs):
        sm = hom_to_spec_map(h)
        if not all(is_isomorphism(sm.stalk_hom(q)) for q in range(len(sm.source))):
            return False
    return True


def fibered_product_affine(f: MonoidHom, g: MonoidHom):
    """Spec B x_{Spec A} Spec C = Spec(B (x)_A C) for f: A -> B, g: A -> C."""
    P, iB, iC = pushout_algebras(f, g)
    return affine(P, name=f"Spec {P.name}"), P, iB, iC


# -- sheaf condition ------------------------------------------------------------------------------------


@dataclass
class SectionsFunctor:
    """A presheaf on affines given by a section set and restriction along homs."""

    sections: Callable  # N -> list of hashable sections
    restrict: Callable  # (g: N -> N', section of N) -> section of N'


def representable(Y: GeomScheme, degree: int = 2) -> SectionsFunctor:
    """h_Y with sections = classes of Hom(Spec N, Y), keyed canonically."""

    def sections(N):
        P = hom_schemes(N, Y, degree)
        return [_class_key(P, c) for c in P.classes]

    def restrict(g, s):
        i, key = s[0]
        P = hom_schemes(g.source, Y, degree)
        for c in P.classes:
            if _class_key(P, c) == s:
                m = c[0]
                j, h = P.base[m]
                Q = hom_schemes(g.target, Y, degree)
                target_key = (j, g.compose(h).key())
                for c2 in Q.classes:
                    if any((Q.base[n][0], Q.base[n][1].key()) == target_key for n in c2):
                        return _class_key(Q, c2)
                return None
        return None

    return SectionsFunctor(sections, restrict)


def _class_key(P: PointSet, members) -> tuple:
    return tuple(sorted((P.base[n][0], P.base[n][1].key()) for n in members))


def check_sheaf_condition(M: Monoid, F: SectionsFunctor, covering: Sequence) -> bool:
    """Sections over M biject with matching families over the D(a_i)."""
    from .classify import collapse_nonunits_probe, covering_reflects_isos

    covering = list(covering)
    if not any(M.is_unit(a) for a in covering):
        if not covering_reflects_isos(M, covering, [collapse_nonunits_probe(M)]):
            raise NotACovering("the family does not reflect isomorphisms")
    locs = [localize(M, [a]) for a in covering]
    pair = {}
    for i, a in enumerate(covering):
        for j, b in enumerate(covering):
            D = localize(M, [M.mul(a, b)])
            pair[(i, j)] = (locs[i].lift(D.canonical), locs[j].lift(D.canonical))
    local_sections = [F.sections(L.result) for L in locs]
    families = []
    for fam in iproduct(*local_sections):
        if all(
            F.restrict(pair[(i, j)][0], fam[i]) == F.restrict(pair[(i, j)][1], fam[j])
            for i in range(len(covering)) for j in range(len(covering))
        ):
            families.append(fam)
    restricted = [tuple(F.restrict(L.canonical, s) for L in locs) for s in F.sections(M)]
    return len(set(restricted)) == len(restricted) and sorted(map(repr, restricted)) == sorted(map(repr, families))
