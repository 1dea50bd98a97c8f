"""Classes of monoid homs: epimorphism, local, flat (refutable only),
finite presentation by certificate, open immersion.

Open immersions are decided three ways and cross-checked: a localization
certificate, the epi/flatness pair, and the induced map of spectra together
with its stalk maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import DegreeExceeded, InconsistencyError, Unbounded
from .monoid import (
    DISTINCT,
    EQUAL,
    Monoid,
    MonoidHom,
    enumerate_homs,
    find_iso_inverse,
    is_isomorphism,
    is_local_hom,
    units,
)
from .msets import (
    MSet,
    MSetHom,
    base_change,
    extend_equivariant,
    family_for,
    flatness_report,
    pushout_algebras,
    terminal,
)
from .smallmonoids import small_monoids
from .spectra import PrimeIdeal, hom_to_spec_map, localization_at_prime, localize
from .words import support, words_upto

# -- epimorphisms ------------------------------------------------------------------


def cokernel_pair(f: MonoidHom):
    """N (x)_M N with its two coprojections."""
    return pushout_algebras(f, f, name=f"{f.target.name}+{f.target.name}")


def epi_refuter(f: MonoidHom, targets=None) -> tuple[MonoidHom, MonoidHom] | None:
    """Two distinct homs N -> T agreeing on f(M), T among small monoids."""
    M, N = f.source, f.target
    for T in targets if targets is not None else small_monoids(4):
        homs = list(enumerate_homs(N, T, require_zero=False))
        seen: dict = {}
        for h in homs:
            key = tuple(h(f(g)) for g in M.gens())
            for other in seen.get(key, []):
                if not other.same_as(h):
                    return other, h
            seen.setdefault(key, []).append(h)
    return None


def is_epimorphism(f: MonoidHom) -> bool:
    """Both coprojections N -> N (x)_M N are isomorphisms, i.e. they agree
    on the generators of N."""
    P, i1, i2 = cokernel_pair(f)
    inconclusive = False
    for h in f.target.gens():
        try:
            verdict = P.compare(i1(h), i2(h))
        except DegreeExceeded:
            inconclusive = True
            continue
        if verdict == EQUAL:
            continue
        if verdict == DISTINCT:
            return False
        inconclusive = True
    if not inconclusive:
        return True
    if epi_refuter(f) is not None:
        return False
    raise Unbounded(f"epimorphism test for {f.name or 'hom'} inconclusive at bound {P.bound}")


def surjective_on_units(f: MonoidHom) -> bool:
    """f(M^x) = N^x. N^x is generated by the unit generators of N, so it is
    enough to hit each of those."""
    M, N = f.source, f.target
    try:
        pool = units(M)
        exact = True
    except Unbounded:
        ug = M.unit_generators
        pool = []
        for w in words_upto(len(ug), M.bound):
            full = [0] * M.ngens
            for i, e in zip(ug, w):
                full[i] = e
            pool.append(M.eval_word(tuple(full)))
        exact = False
    for i in N.unit_generators:
        h = N.gen(i)
        if not any(N.equal(f(m), h) for m in pool):
            if exact:
                return False
            raise Unbounded("unit preimage search exhausted the degree bound")
    return True


# -- localizations -------------------------------------------------------------------


def nonunit_preimage(f: MonoidHom) -> PrimeIdeal:
    M, N = f.source, f.target
    trace = frozenset(i for i in range(M.ngens) if not N.is_unit(f(M.gen(i))))
    return PrimeIdeal(M, trace)


def largest_prime_avoiding(M: Monoid, a) -> frozenset[int]:
    s = support(M.word_of(a))
    out: frozenset[int] = frozenset()
    for t in M.prime_traces:
        if not t & s:
            out |= t
    return out


@dataclass
class Recognition:
    prime: PrimeIdeal
    at_prime_iso: bool
    witness: object | None
    inverse: MonoidHom | None = None


def recognize(f: MonoidHom) -> Recognition:
    M = f.source
    p = nonunit_preimage(f)
    Lp = localization_at_prime(M, p)
    phi = Lp.lift(f)
    if find_iso_inverse(phi) is None:
        return Recognition(p, False, None)
    cands = M.elements() if M.finite() is not None else [
        M.eval_word(w) for w in words_upto(M.ngens, max(1, M.ngens - len(p.trace)))
    ]
    for a in M.sorted(dict.fromkeys(cands)):
        if support(M.word_of(a)) & p.trace:
            continue
        if largest_prime_avoiding(M, a) != p.trace:
            continue
        La = localize(M, [a])
        g = find_iso_inverse(La.lift(f))
        if g is not None:
            return Recognition(p, True, a, g)
    raise Unbounded("no localization witness found although M_p -> N is an isomorphism")


def recognize_localization(f: MonoidHom):
    """A witness a with M_a -> N an isomorphism of M-algebras, or None."""
    return recognize(f).witness


# -- verdicts -------------------------------------------------------------------------


@dataclass
class MorphismVerdict:
    epi: bool
    local: bool
    flat_refuted: bool
    fp_certificate: str | None
    open_immersion: object | None
    spec_route: bool
    at_prime_iso: bool
    reasons: list = field(default_factory=list)
    flat_refuter: str | None = None

    def as_dict(self, fmt=str) -> dict:
        return {
            "epi": self.epi,
            "local": self.local,
            "flat_refuted": self.flat_refuted,
            "flat_refuter": self.flat_refuter,
            "fp_certificate": self.fp_certificate,
            "open_immersion": None if self.open_immersion is None else fmt(self.open_immersion),
            "spec_open_embedding_with_iso_stalks": self.spec_route,
            "at_prime_iso": self.at_prime_iso,
            "reasons": list(self.reasons),
        }


def spec_route(f: MonoidHom) -> bool:
    """Spec N -> Spec M is an open embedding and every stalk map is an iso."""
    sm = hom_to_spec_map(f)
    if not sm.is_open_embedding():
        return False
    return all(is_isomorphism(sm.stalk_hom(i)) for i in range(len(sm.source)))


def classify(f: MonoidHom, family=None) -> MorphismVerdict:
    M = f.source
    epi = is_epimorphism(f)
    local = is_local_hom(f)
    fam = family if family is not None else family_for(M)
    rep = flatness_report(f, fam)
    rec = recognize(f)
    geo = spec_route(f)
    a = rec.witness
    reasons = []
    if not epi:
        reasons.append("not an epimorphism")
    if rep.refuted:
        reasons.append("tensor product fails to preserve " + rep.refuter.describe())
    if not rec.at_prime_iso:
        reasons.append("M_p -> N is not an isomorphism")
    verdict = MorphismVerdict(
        epi=epi,
        local=local,
        flat_refuted=rep.refuted,
        fp_certificate=None if a is None else f"localization at {M.fmt(a)}",
        open_immersion=a,
        spec_route=geo,
        at_prime_iso=rec.at_prime_iso,
        reasons=reasons,
        flat_refuter=rep.refuter.describe() if rep.refuted else None,
    )
    if a is not None and (not epi or rep.refuted):
        raise InconsistencyError(f"{f.name}: localization witness contradicted by a refutation")
    if (a is not None) != geo:
        raise InconsistencyError(f"{f.name}: certificate route and spectrum route disagree")
    if a is None and not reasons:
        raise InconsistencyError(f"{f.name}: not a localization but nothing refutes it")
    return verdict


def local_flat_epi_check(f: MonoidHom) -> bool:
    return is_isomorphism(f)


# -- iso reflection -----------------------------------------------------------------------


def collapse_nonunits_probe(M: Monoid) -> MSetHom:
    """M/~ (all nonunits identified) -> point. Needs a finite unit group."""
    U = units(M)
    idx = {u: i for i, u in enumerate(U)}
    star = len(U)
    action = []
    for g in M.gens():
        row = []
        for u in U:
            v = M.mul(g, u)
            row.append(idx[v] if M.is_unit(g) else star)
        row.append(star)
        action.append(row)
    S = MSet(M, star + 1, action, labels=[M.fmt(u) for u in U] + ["*"])
    T = terminal(M)
    return MSetHom(S, T, (0,) * S.size)


def becomes_iso(f: MonoidHom, h: MSetHom) -> bool:
    A = base_change(f, h.source)
    B = base_change(f, h.target)
    m = extend_equivariant(A.module, A.unit, B.module, [B.unit[h(x)] for x in h.source.points()])
    return m is not None and m.is_bijective()


def covering_reflects_isos(M: Monoid, elements, probes) -> bool:
    """Every probe that becomes bijective over each M_{a_j} is bijective."""
    cans = [localize(M, [a]).canonical for a in elements]
    for h in probes:
        if all(becomes_iso(c, h) for c in cans) and not h.is_bijective():
            return False
    return True


def nonunit_families(M: Monoid, max_len: int = 2) -> list[list]:
    nonunits = [g for g in M.gens() if not M.is_unit(g)]
    nonunits += [a for a in M.elements(2) if not M.is_unit(a) and a not in nonunits]
    nonunits = M.sorted(dict.fromkeys(nonunits))
    out = []
    for r in range(1, max_len + 1):
        out += [list(c) for c in combinations(nonunits, r)]
    return out
