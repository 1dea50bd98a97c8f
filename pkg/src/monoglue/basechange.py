"""Monoid rings Z[M], their localizations at monomials, and base change of
glued schemes to the integers.

Ring elements are sparse maps from monoid elements (normal forms) to
nonzero integers. When M has a zero, the basis element [0] is the ring's
zero and is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Mapping, Sequence

from .errors import CocycleViolation, DegreeExceeded, RefinementFailure
from .monoid import FiniteMonoid, Monoid, MonoidHom, enumerate_homs
from .spectra import LocalizationResult, localize
from .words import UnionFind

# -- monoid rings ---------------------------------------------------------------------


class MonoidRing:
    def __init__(self, M: Monoid):
        self.base = M
        self.name = f"Z[{M.name}]"

    def _clean(self, d: Mapping) -> dict:
        z = self.base.zero
        return {k: v for k, v in d.items() if v and not (z is not None and k == z)}

    def elem(self, d: Mapping) -> dict:
        return self._clean({self.base.eval_word(self.base.word_of(k)): v for k, v in d.items()})

    def basis(self, a) -> dict:
        return self._clean({a: 1})

    def one(self) -> dict:
        return self.basis(self.base.one)

    def zero(self) -> dict:
        return {}

    def add(self, x: Mapping, y: Mapping) -> dict:
        out = dict(x)
        for k, v in y.items():
            out[k] = out.get(k, 0) + v
        return self._clean(out)

    def neg(self, x: Mapping) -> dict:
        return {k: -v for k, v in x.items()}

    def scale(self, c: int, x: Mapping) -> dict:
        return self._clean({k: c * v for k, v in x.items()})

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        M = self.base
        for a, u in x.items():
            for b, v in y.items():
                c = M.mul(a, b)
                out[c] = out.get(c, 0) + u * v
        return self._clean(out)

    def power(self, x: Mapping, n: int) -> dict:
        out = self.one()
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def equal(self, x: Mapping, y: Mapping) -> bool:
        return self._clean(x) == self._clean(y)

    def fmt(self, x: Mapping) -> str:
        if not x:
            return "0"
        parts = []
        for k in self.base.sorted(x):
            c, m = x[k], self.base.fmt(k)
            if m == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(m)
            elif c == -1:
                parts.append("-" + m)
            else:
                parts.append(f"{c}{m}")
        return " + ".join(parts).replace("+ -", "- ")

    def presentation(self) -> dict:
        M = self.base
        rels = [f"{_word(M, l)} - {_word(M, r)}" for l, r in M.relations]
        return {"ring": self.name, "variables": list(M.generators), "relations": rels}

    def samples(self, degree: int = 2) -> list:
        return [self.basis(a) for a in self.base.elements(degree) if self.basis(a)]


def _word(M: Monoid, w) -> str:
    from .words import format_word

    return format_word(w, M.generators)


def monoid_ring(M: Monoid) -> MonoidRing:
    return MonoidRing(M)


@dataclass
class RingHom:
    """Z[M] -> target determined by the images of the generators of M
    (multiplicative, so it is the linear extension of a monoid map)."""

    source: MonoidRing
    target: object  # MonoidRing or LocRing
    images: tuple

    def basis_image(self, a):
        T = self.target
        out = T.one()
        for e, img in zip(self.source.base.word_of(a), self.images):
            for _ in range(e):
                out = T.mul(out, img)
        return out

    def __call__(self, x: Mapping):
        T = self.target
        out = T.zero()
        for a, c in x.items():
            out = T.add(out, T.scale(c, self.basis_image(a)))
        return out


def ring_functor(f: MonoidHom) -> RingHom:
    """Z[f] : Z[M] -> Z[N]."""
    R, S = MonoidRing(f.source), MonoidRing(f.target)
    return RingHom(R, S, tuple(S.basis(f(g)) for g in f.source.gens()))


# -- rings mod k as adjunction test targets -------------------------------------------------


def residue_monoid(k: int) -> FiniteMonoid:
    """(Z/k, *) as a monoid with zero."""
    labels = [str(i) for i in range(k)]
    order = [1] + [i for i in range(k) if i != 1]
    pos = {v: n for n, v in enumerate(order)}
    table = [[pos[(a * b) % k] for b in order] for a in order]
    return FiniteMonoid([labels[v] for v in order], table, unit=0, name=f"(Z/{k},*)", zero=pos[0])


def ring_homs_to_residues(M: Monoid, k: int, degree: int = 2) -> list[tuple[int, ...]]:
    """Assignments of generator images in Z/k that define ring homs
    Z[M] -> Z/k, checked on sums and products of sample basis elements."""
    R = MonoidRing(M)
    samples = R.samples(degree)
    out = []
    for imgs in iproduct(range(k), repeat=M.ngens):
        def ev(x):
            tot = 0
            for a, c in x.items():
                v = 1
                for e, i in zip(M.word_of(a), imgs):
                    v = v * pow(i, e, k) % k
                tot += c * v
            return tot % k

        ok = ev(R.one()) == 1 % k and ev(R.zero()) == 0
        if M.zero is not None:
            ok = ok and ev({M.zero: 1}) == 0
        for x in samples:
            for y in samples:
                if ev(R.mul(x, y)) != ev(x) * ev(y) % k or ev(R.add(x, y)) != (ev(x) + ev(y)) % k:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(imgs)
    return out


def monoid_homs_to_residues(M: Monoid, k: int) -> list[tuple[int, ...]]:
    T = residue_monoid(k)
    return sorted(tuple(int(T.labels[x]) for x in h.images) for h in enumerate_homs(M, T))


# -- localization of monoid rings at a monomial ------------------------------------------------------


class LocRing:
    """Z[M]_s: fractions x / s^k."""

    def __init__(self, R: MonoidRing, s, horizon: int = 3):
        self.ring = R
        self.s = s
        self.horizon = horizon
        self.name = f"{R.name}_{R.base.fmt(s)}"

    def frac(self, x: Mapping, k: int = 0) -> tuple:
        return (self.ring._clean(dict(x)), k)

    def one(self):
        return (self.ring.one(), 0)

    def zero(self):
        return ({}, 0)

    def _spow(self, n):
        return self.ring.power(self.ring.basis(self.s), n)

    def add(self, x, y):
        (a, k), (b, l) = x, y
        R = self.ring
        return (R.add(R.mul(a, self._spow(l)), R.mul(b, self._spow(k))), k + l)

    def mul(self, x, y):
        return (self.ring.mul(x[0], y[0]), x[1] + y[1])

    def scale(self, c, x):
        return (self.ring.scale(c, x[0]), x[1])

    def equal(self, x, y) -> bool:
        R = self.ring
        (a, k), (b, l) = x, y
        for j in range(self.horizon + 1):
            try:
                if R.equal(R.mul(a, self._spow(l + j)), R.mul(b, self._spow(k + j))):
                    return True
            except DegreeExceeded:
                break
        return False

    def is_zero_ring(self) -> bool:
        return self.equal(self.one(), self.zero())

    def canonical(self, x):
        return (self.ring._clean(dict(x)), 0)

    def fmt(self, x) -> str:
        num, k = x
        if k == 0:
            return self.ring.fmt(num)
        den = self.ring.base.fmt(self.ring.base.power(self.s, k))
        top = self.ring.fmt(num)
        return f"{top}/{den}" if len(num) == 1 and not top.startswith("-") else f"({top})/{den}"


def ring_localize(R: MonoidRing, a) -> LocRing:
    return LocRing(R, a)


def _power_of(M: Monoid, s, den) -> int:
    """k with den = s^k."""
    for k in range(M.bound + 1):
        try:
            if M.equal(M.power(s, k), den):
                return k
        except DegreeExceeded:
            break
    raise RefinementFailure(f"{M.fmt(den)} is not a power of {M.fmt(s)}")


def as_fraction(L: LocalizationResult, s, r) -> tuple:
    """Element r of M_s as a monomial fraction (m, k) with r = m / s^k."""
    M = L.source
    num, den = L.fraction_of(r)
    if M.equal(den, M.one):
        return num, 0
    return num, _power_of(M, s, den)


def check_openbc(M: Monoid, a, degree: int = 2) -> bool:
    """Z[M_a] and Z[M]_a are inverse to each other via the two canonical
    maps [m/a^k] -> [m]/a^k and [m]/a^k -> [m/1][1/a]^k."""
    L = localize(M, [a])
    R, LR = MonoidRing(M), LocRing(MonoidRing(M), a)
    RL = MonoidRing(L.result)
    inv_a = L.result.inverse(L.canonical(a))

    def alpha(x):  # Z[M_a] -> Z[M]_a
        out = LR.zero()
        for r, c in x.items():
            m, k = as_fraction(L, a, r)
            out = LR.add(out, LR.scale(c, (R.basis(m), k)))
        return out

    def beta(y):  # Z[M]_a -> Z[M_a]
        num, k = y
        img: dict = {}
        for m, c in num.items():
            img = RL.add(img, RL.scale(c, RL.basis(L.canonical(m))))
        return RL.mul(img, RL.power(RL.basis(inv_a), k))

    # beta o alpha = id on generators and samples of Z[M_a]
    for x in RL.samples(degree) + [RL.basis(g) for g in L.result.gens()]:
        if not RL.equal(beta(alpha(x)), x):
            return False
    # alpha o beta = id on the generators [g]/1 and on 1/a, and on samples
    gens = [(R.basis(g), 0) for g in M.gens()] + [(R.one(), 1)]
    gens += [(x, 0) for x in R.samples(degree)]
    for y in gens:
        if not LR.equal(alpha(beta(y)), y):
            return False
    # both maps are multiplicative on samples
    xs = RL.samples(1)
    for x in xs:
        for z in xs:
            if not LR.equal(alpha(RL.mul(x, z)), LR.mul(alpha(x), alpha(z))):
                return False
    return True


# -- glued ring data -----------------------------------------------------------------------------------


@dataclass
class Piece:
    chart: int
    element: object


@dataclass
class GluedRingData:
    """Ring charts Z[M_i]_b for the pieces (i, b) of a covering, overlap
    denominators, and transition images of chart generators as fractions."""

    scheme: object
    pieces: list
    rings: list
    overlap: dict = field(default_factory=dict)  # (p,q) -> monoid element s_pq of chart of p
    transitions: dict = field(default_factory=dict)  # (p,q) -> list of fractions in Z[M_i]_{s_pq}

    def loc_ring(self, p: int, q: int) -> LocRing:
        return LocRing(self.rings[p].ring, self.overlap[(p, q)])

    def describe(self) -> dict:
        X = self.scheme
        out = {"charts": [], "transitions": []}
        for n, pc in enumerate(self.pieces):
            M = X.data.charts[pc.chart]
            out["charts"].append({
                "piece": n,
                "chart": X.data.names[pc.chart],
                "inverted": M.fmt(pc.element),
                **MonoidRing(M).presentation(),
            })
        for (p, q), imgs in sorted(self.transitions.items()):
            if p == q:
                continue
            Mq = X.data.charts[self.pieces[q].chart]
            L = self.loc_ring(p, q)
            out["transitions"].append({
                "from": q,
                "to": p,
                "inverting": X.data.charts[self.pieces[p].chart].fmt(self.overlap[(p, q)]),
                "images": {g: L.fmt(v) for g, v in zip(Mq.generators, imgs)},
            })
        return out


def _monomial_inverse(M: Monoid, s, m) -> tuple:
    """(m', r) with m * m' = s^r, i.e. 1/m = m'/s^r in M_s."""
    L = localize(M, [s])
    inv = L.result.inverse(L.canonical(m))
    return as_fraction(L, s, inv)


def base_change_scheme(X, covering: Sequence[tuple[int, object]] | None = None) -> GluedRingData:
    """Glue Z[M_i]_b over the pieces (i, b) of a covering of X (default:
    the charts). Overlaps and transitions are transported from the monoid
    gluing; the cocycle is then checked at ring level."""
    d = X.data
    if covering is None:
        covering = [(i, M.one) for i, M in enumerate(d.charts)]
    pieces = [Piece(i, d.charts[i].eval_word(d.charts[i].word_of(b))) for i, b in covering]
    rings = [LocRing(MonoidRing(d.charts[pc.chart]), pc.element) for pc in pieces]
    G = GluedRingData(X, pieces, rings)
    for p, P in enumerate(pieces):
        for q, Q in enumerate(pieces):
            i, j = P.chart, Q.chart
            a = d.overlap[(i, j)]
            if a is None:
                continue
            Mi = d.charts[i]
            Lij = d.loc[(i, j)]
            # D(c) of chart j seen in chart i: the numerator of theta_ij(c)
            c_img = d.theta[(i, j)](d.loc[(j, i)].canonical(Q.element))
            n_c, _ = as_fraction(Lij, a, c_img)
            s = Mi.prod([P.element, a, n_c])
            G.overlap[(p, q)] = s
    for (p, q), s in G.overlap.items():
        G.transitions[(p, q)] = _ring_transition(G, p, q)
    _ring_cocycle(G)
    return G


def _ring_transition(G: GluedRingData, p: int, q: int) -> list:
    """Images of the generators of chart(q) in Z[M_i]_{s_pq}."""
    X = G.scheme
    d = X.data
    i, j = G.pieces[p].chart, G.pieces[q].chart
    a = d.overlap[(i, j)]
    Mi, Mj = d.charts[i], d.charts[j]
    s = G.overlap[(p, q)]
    Lij = d.loc[(i, j)]
    L = LocRing(MonoidRing(Mi), s)
    # s = a * rest, so 1/a^k = rest^k / s^k
    rest = _cofactor(Mi, s, a)
    out = []
    for g in Mj.gens():
        img = d.theta[(i, j)](d.loc[(j, i)].canonical(g))
        m, k = as_fraction(Lij, a, img)
        out.append(L.frac(L.ring.basis(Mi.mul(m, Mi.power(rest, k))), k))
    return out


def _cofactor(M: Monoid, s, a):
    for r in M.elements():
        try:
            if M.equal(M.mul(a, r), s):
                return r
        except DegreeExceeded:
            continue
    raise RefinementFailure(f"{M.fmt(a)} does not divide {M.fmt(s)}")


def _push_generator(G: GluedRingData, p: int, q: int, g_index: int, target: LocRing) -> tuple:
    """Transition image of generator g of chart(q), moved into ``target``."""
    Mi = G.scheme.data.charts[G.pieces[p].chart]
    gm, ge = G.transitions[(p, q)][g_index]
    cof = _cofactor(Mi, target.s, G.overlap[(p, q)])
    R = target.ring
    num = {}
    for mm, cc in gm.items():
        num = R.add(num, R.scale(cc, R.basis(Mi.mul(mm, Mi.power(cof, ge)))))
    return (num, ge)


def _push_monomial(G: GluedRingData, p: int, q: int, m, target: LocRing) -> tuple:
    Mj = G.scheme.data.charts[G.pieces[q].chart]
    out = target.one()
    for gi, e in enumerate(Mj.word_of(m)):
        for _ in range(e):
            out = target.mul(out, _push_generator(G, p, q, gi, target))
    return out


def _ring_cocycle(G: GluedRingData):
    """For pieces p, q, r meeting pairwise: T_pr = T_pq o T_qr on the
    generators of chart(r), compared in Z[M_i] localized at s_pq * s_pr."""
    d = G.scheme.data
    n = len(G.pieces)
    for p, q, r in iproduct(range(n), repeat=3):
        if len({p, q, r}) < 3:
            continue
        if (p, q) not in G.overlap or (p, r) not in G.overlap:
            continue
        if (q, r) not in G.overlap:
            raise CocycleViolation(f"pieces {p},{q},{r}: pairwise overlaps are inconsistent")
        i = G.pieces[p].chart
        Mi = d.charts[i]
        t = Mi.mul(G.overlap[(p, q)], G.overlap[(p, r)])
        target = LocRing(MonoidRing(Mi), t)
        Mr = d.charts[G.pieces[r].chart]
        for gi in range(Mr.ngens):
            direct = _push_generator(G, p, r, gi, target)
            # T_qr(g) = m / s_qr^e in chart(q); push m and s_qr through T_pq
            m_dict, e = G.transitions[(q, r)][gi]
            (m, coeff), = m_dict.items()
            pm = _push_monomial(G, p, q, m, target)
            ps = _push_monomial(G, p, q, G.overlap[(q, r)], target)
            # divide by ps^e: ps = u / t^f with u a monomial invertible in Mi_t
            (u, _), = ps[0].items()
            u_inv, rr = _monomial_inverse(Mi, t, u)
            inv_ps = (MonoidRing(Mi).basis(Mi.mul(u_inv, Mi.power(t, ps[1]))), rr)
            via = target.mul(target.scale(coeff, pm), _lpow(target, inv_ps, e))
            if not target.equal(direct, via):
                raise CocycleViolation(f"ring cocycle fails on pieces ({p},{q},{r})")
    return True


def _lpow(L: LocRing, x, n):
    out = L.one()
    for _ in range(n):
        out = L.mul(out, x)
    return out


def compare_base_changes(d1: GluedRingData, d2: GluedRingData) -> bool:
    """Both coverings come from one scheme. Glue over their union (cocycle
    checked there) and exhibit, for each piece of either covering, a piece
    of the other containing it whose transition is an iso of the whole piece
    ring. Pieces not contained in a single piece raise RefinementFailure."""
    X = d1.scheme
    if d2.scheme is not X:
        raise RefinementFailure("glued ring data come from different schemes")
    cov1 = [(pc.chart, pc.element) for pc in d1.pieces]
    cov2 = [(pc.chart, pc.element) for pc in d2.pieces]
    union = list(cov1) + [c for c in cov2 if c not in cov1]
    U = base_change_scheme(X, union)
    idx = {c: n for n, c in enumerate(union)}
    for mine, other in ((cov1, cov2), (cov2, cov1)):
        for c in mine:
            q = idx[c]
            if not any(_piece_inside(U, q, idx[o]) for o in other):
                raise RefinementFailure(f"piece {c} is not inside a single piece of the other covering")
    return True


def _piece_inside(G: GluedRingData, q: int, p: int) -> bool:
    """Piece q lies inside piece p, and the transition Z[piece p]|_{q} -> Z[piece q]
    is an isomorphism onto the ring of q (its inverse is the reverse transition)."""
    if (q, p) not in G.overlap:
        return False
    if G.rings[q].is_zero_ring():
        return True  # the empty piece
    X = G.scheme
    j = G.pieces[q].chart
    Mj = X.data.charts[j]
    s_qp = G.overlap[(q, p)]
    Lq = localize(Mj, [G.pieces[q].element])
    if not Lq.result.is_unit(Lq.canonical(s_qp)):
        return False
    # transitions q<-p and p<-q compose to the identity on generators of chart(q)
    target = LocRing(MonoidRing(Mj), Mj.mul(s_qp, s_qp))
    for gi in range(Mj.ngens):
        gm, ge = G.transitions[(p, q)][gi]
        ps = _push_monomial(G, q, p, G.overlap[(p, q)], target)
        (u, _), = ps[0].items()
        u_inv, rr = _monomial_inverse(Mj, target.s, u)
        inv_ps = (MonoidRing(Mj).basis(Mj.mul(u_inv, Mj.power(target.s, ps[1]))), rr)
        back = target.zero()
        for m, coeff in gm.items():
            back = target.add(back, target.scale(coeff, _push_monomial(G, q, p, m, target)))
        val = target.mul(back, _lpow(target, inv_ps, ge))
        if not target.equal(val, (MonoidRing(Mj).basis(Mj.gen(gi)), 0)):
            return False
    return True


# -- points over finite fields ---------------------------------------------------------------------------


def ring_points(G: GluedRingData, p: int) -> int:
    """|X_Z(F_p)| for the glued ring data: ring homs Z[M_i]_b -> F_p (a
    multiplicative assignment with b not sent to 0) modulo the transitions."""
    X = G.scheme
    d = X.data
    base = []
    index = {}
    for n, pc in enumerate(G.pieces):
        M = d.charts[pc.chart]
        for imgs in ring_homs_to_residues(M, p):
            if _eval_monomial(M, pc.element, imgs, p) == 0:
                continue
            index[(n, imgs)] = len(base)
            base.append((n, imgs))
    uf = UnionFind(range(len(base)))
    for k, (n, imgs) in enumerate(base):
        Mi = d.charts[G.pieces[n].chart]
        for (a, b), s in G.overlap.items():
            if a != n or a == b:
                continue
            sval = _eval_monomial(Mi, s, imgs, p)
            if sval == 0:
                continue
            inv_s = pow(sval, p - 2, p)
            new = []
            for gm, ge in G.transitions[(a, b)]:
                v = 0
                for mm, cc in gm.items():
                    v += cc * _eval_monomial(Mi, mm, imgs, p)
                new.append(v * pow(inv_s, ge, p) % p)
            m = index.get((b, tuple(new)))
            if m is not None:
                uf.union(k, m)
    return len(uf.classes())


def _eval_monomial(M: Monoid, a, imgs, p) -> int:
    v = 1
    for e, x in zip(M.word_of(a), imgs):
        v = v * pow(x, e, p) % p
    return v


def coequalizer_instance(X, p: int) -> tuple[int, int]:
    """F_p-points two ways: monoid homs into (F_p, *) glued over X (base
    change first, then the coequalizer) and ring homs out of the glued ring
    data (the coequalizer first). A left adjoint makes them agree."""
    from .schemes import hom_schemes

    return len(hom_schemes(residue_monoid(p), X)), ring_points(base_change_scheme(X), p)
