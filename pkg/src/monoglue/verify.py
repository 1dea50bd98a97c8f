"""Acceptance suites over the shipped catalog.

Each suite returns a plain dict with keys ``suite``, ``title``, ``passed``,
``checked`` and ``failures`` (plus suite-specific ``details``). Everything is
sorted so that two runs give byte-identical JSON.
"""

from __future__ import annotations

import json
from . import catalog
from .basechange import (
    base_change_scheme,
    check_openbc,
    coequalizer_instance,
    compare_base_changes,
)
from .classify import (
    classify,
    collapse_nonunits_probe,
    covering_reflects_isos,
    is_epimorphism,
    largest_prime_avoiding,
    nonunit_families,
    surjective_on_units,
)
from .errors import MonoglueError, Unbounded
from .monoid import (
    FiniteMonoid,
    Monoid,
    MonoidHom,
    as_presented,
    enumerate_homs,
    find_iso_inverse,
    free,
    is_isomorphism,
    is_local_hom,
    units,
)
from .msets import family_for, flatness_report
from .schemes import (
    affine,
    evaluate_via_descent,
    g_points,
    h_functor,
    hom_schemes,
    natural_bijection,
    realization,
)
from .smallmonoids import small_monoids
from .spectra import localization_at_prime, localize, spec, stalk_colimit

SUITES = {}


def suite(key: str, title: str):
    def deco(fn):
        SUITES[key] = (title, fn)
        return fn

    return deco


def _result(key, checked, failures, details=None) -> dict:
    out = {
        "suite": key,
        "title": SUITES[key][0],
        "passed": not failures,
        "checked": checked,
        "failures": sorted(failures),
    }
    if details is not None:
        out["details"] = details
    return out


class Context:
    """Catalog objects plus verdicts shared between suites."""

    def __init__(self, bound: int | None = None):
        self.bound = bound
        self.env = catalog.load(bound)
        self._verdicts: dict = {}

    def monoids(self) -> list:
        return [(k, v) for k, v in self.env.items() if isinstance(v, Monoid)]

    def homs(self) -> list:
        return [(k, v) for k, v in self.env.items() if isinstance(v, MonoidHom)]

    def pairs(self) -> list:
        return [(m, a, self.env[m], catalog.element(self.env[m], a)) for m, a in catalog.PAIRS]

    def verdict(self, name: str):
        if name not in self._verdicts:
            self._verdicts[name] = classify(self.env[name])
        return self._verdicts[name]


def _isos_both_ways(f: MonoidHom) -> bool:
    g = find_iso_inverse(f)
    return g is not None


# -- 1 ---------------------------------------------------------------------------------------


@suite("1", "spectrum basics")
def spectrum_basics(ctx: Context) -> dict:
    failures, checked = [], 0
    n = len(spec(ctx.env["A2"]))
    checked += 1
    if n != 4:
        failures.append(f"Spec A2 has {n} primes, expected 4")
    groups = []
    for name, M in ctx.monoids():
        if M.is_group():
            checked += 1
            groups.append(name)
            k = len(spec(M))
            if k != 1:
                failures.append(f"group {name} has {k} primes")
    for m, a, b in catalog.TRIPLES:
        M = ctx.env[m]
        X = spec(M)
        ea, eb = catalog.element(M, a), catalog.element(M, b)
        checked += 1
        if X.D(ea) & X.D(eb) != X.D(M.mul(ea, eb)):
            failures.append(f"D({a}) n D({b}) != D({a}*{b}) in {m}")
    return _result("1", checked, failures, {"groups": sorted(groups), "primes_A2": n})


# -- 2 ---------------------------------------------------------------------------------------


def _saturated_denominators(M: Monoid, a) -> list:
    """Elements invertible on all of D(a): those outside every prime avoiding a."""
    q = largest_prime_avoiding(M, a)
    if isinstance(M, FiniteMonoid):
        return [s for s in M.elements() if not set(i for i, e in enumerate(M.word_of(s)) if e) & q]
    return [M.gen(i) for i in range(M.ngens) if i not in q] + [a]


def _count_homs(M, T, pred=None) -> int:
    return sum(1 for h in enumerate_homs(M, T, require_zero=False) if pred is None or pred(h))


@suite("2", "structure sheaf: sections, stalks and the fraction oracle")
def structure_sheaf(ctx: Context) -> dict:
    failures, checked = [], 0
    targets = [T for T in small_monoids(3)]
    for m, a, M, ea in ctx.pairs():
        La = localize(M, [ea])
        # sections over D(a), computed from the open set, against M_a
        S = localize(M, _saturated_denominators(M, ea))
        checked += 1
        if not _isos_both_ways(La.lift(S.canonical)):
            failures.append(f"O(D({a})) is not M_{a} for {m}")
        # fraction construction against the universal property
        for T in targets:
            checked += 1
            want = _count_homs(M, T, lambda h: T.is_unit(h(ea)))
            if _count_homs(La.result, T) != want:
                failures.append(f"{m}_{a}: homs to {T.name} disagree with the universal property")
        if isinstance(M, FiniteMonoid):
            P = as_presented(M)
            Lp = localize(P, [P.eval_word(M.word_of(ea))])
            comp = Lp.lift(MonoidHom(P, La.result, [La.canonical(g) for g in M.gens()]))
            checked += 1
            if not _isos_both_ways(comp):
                failures.append(f"{m}_{a}: fraction table and presentation differ")
    for name, M in ctx.monoids():
        if name not in {m for m, _ in catalog.PAIRS}:
            continue
        for p in spec(M).points:
            checked += 1
            Lp = localization_at_prime(M, p)
            C = stalk_colimit(M, p)
            if not _isos_both_ways(Lp.lift(C.canonical)):
                failures.append(f"stalk of {name} at {p.label()} is not M_p")
    return _result("2", checked, failures)


# -- 3 ---------------------------------------------------------------------------------------


@suite("3", "localizations preserve the standard finite limits")
def localization_flatness(ctx: Context) -> dict:
    failures, checked, rows = [], 0, []
    for m, a, M, ea in ctx.pairs():
        fam = family_for(M)
        rep = flatness_report(localize(M, [ea]).canonical, fam)
        checked += rep.checked
        rows.append([m, a, len(fam), rep.checked, rep.inconclusive])
        if rep.refuted:
            failures.append(f"{m} at {a}: {rep.refuter.describe()}")
    return _result("3", checked, failures, {"diagrams": rows})


# -- 4, 5 ------------------------------------------------------------------------------------------


@suite("4", "local epimorphisms are surjective on units")
def local_epi_units(ctx: Context) -> dict:
    failures, checked, swept = [], 0, []
    for name, f in ctx.homs():
        if is_local_hom(f) and is_epimorphism(f):
            checked += 1
            swept.append(name)
            if not surjective_on_units(f):
                failures.append(name)
    return _result("4", checked, failures, {"local_epis": sorted(swept)})


@suite("5", "local flat epimorphisms are isomorphisms")
def local_flat_epi(ctx: Context) -> dict:
    failures, checked, swept = [], 0, []
    for name, f in ctx.homs():
        v = ctx.verdict(name)
        if v.local and v.epi and not v.flat_refuted:
            checked += 1
            swept.append(name)
            if not is_isomorphism(f):
                failures.append(name)
    return _result("5", checked, failures, {"swept": sorted(swept)})


# -- 6 -------------------------------------------------------------------------------------------------


@suite("6", "open immersions: three routes agree")
def open_immersions(ctx: Context) -> dict:
    failures, rows = [], {}
    homs = ctx.homs()
    for name, f in homs:
        try:
            v = ctx.verdict(name)
        except MonoglueError as e:
            failures.append(f"{name}: {type(e).__name__}: {e}")
            continue
        rows[name] = v.as_dict(f.source.fmt)
        want = catalog.WITNESSES.get(name)
        got = rows[name]["open_immersion"]
        if want is not None:
            if got is None or not f.source.equal(v.open_immersion, catalog.element(f.source, want)):
                failures.append(f"{name}: witness {got}, expected {want}")
        elif got is not None:
            failures.append(f"{name}: unexpected witness {got}")
        elif not (not v.epi or v.flat_refuted or not v.at_prime_iso):
            failures.append(f"{name}: not refuted")
    if len(homs) < 20:
        failures.append(f"only {len(homs)} morphisms in the catalog")
    return _result("6", len(homs), failures, {"verdicts": rows})


# -- 7 -------------------------------------------------------------------------------------------------


@suite("7", "nonunit families never cover")
def trivial_cover(ctx: Context) -> dict:
    failures, checked, skipped = [], 0, []
    for name, M in ctx.monoids():
        if M.is_group():
            skipped.append([name, "group"])
            continue
        try:
            units(M)
        except Unbounded:
            skipped.append([name, "infinite unit group"])
            continue
        probe = collapse_nonunits_probe(M)
        for fam in nonunit_families(M, 2):
            checked += 1
            if covering_reflects_isos(M, fam, [probe]):
                failures.append(f"{name}: {{{', '.join(M.fmt(a) for a in fam)}}} reflects the probe")
    return _result("7", checked, failures, {"skipped": sorted(skipped)})


# -- 8, 9 ----------------------------------------------------------------------------------------------


def _test_targets(ctx: Context) -> list:
    env = ctx.env
    return [env["F1"], env["C2"], env["C3"], env["B"], free(["t"], name="F1[t]")]


@suite("8", "points of schemes against descent data")
def points_vs_descent(ctx: Context) -> dict:
    failures, cells = [], []
    for sname in catalog.SCHEMES:
        X = ctx.env[sname]
        F = h_functor(X)
        for N in _test_targets(ctx):
            A = hom_schemes(N, X)
            B = evaluate_via_descent(F, N)
            ok = len(A) == len(B) and natural_bijection(A, B) is not None
            cells.append([sname, N.name, len(A), len(B), A.truncated])
            if not ok:
                failures.append(f"{sname}({N.name}): {len(A)} vs {len(B)}")
        R = realization(F)
        if R.describe() != X.describe():
            failures.append(f"realization of {sname} differs")
    return _result("8", len(cells), failures, {"cells": cells})


@suite("9", "G-points of the projective line")
def g_points_p1(ctx: Context) -> dict:
    X, G = ctx.env["P1"], ctx.env["C2"]
    a, b = len(hom_schemes(G, X)), len(g_points(X, G))
    failures = [] if a == b == 2 else [f"hom_schemes {a}, g_points {b}, expected 2"]
    return _result("9", 1, failures, {"hom_schemes": a, "g_points": b})


# -- 10 ------------------------------------------------------------------------------------------------


@suite("10", "base change to rings")
def base_change_suite(ctx: Context) -> dict:
    failures, checked = [], 0
    for m, a, M, ea in ctx.pairs():
        checked += 1
        if not check_openbc(M, ea):
            failures.append(f"openbc fails for {m} at {a}")
    X = ctx.env["P1"]
    G = base_change_scheme(X)
    desc = G.describe()
    checked += 1
    trans = {(t["from"], t["to"]): t["images"] for t in desc["transitions"]}
    # chart generators x, y with y = 1/x on the overlap, and x = 1/y back
    if trans.get((1, 0)) != {"y": "1/x"} or trans.get((0, 1)) != {"x": "1/y"}:
        failures.append(f"P1 transitions {trans}")
    covs = []
    for cov in catalog.P1_COVERINGS:
        covs.append(base_change_scheme(X, [(i, catalog.element(X.data.charts[i], w)) for i, w in cov]))
    for d1, d2 in [(covs[0], covs[1]), (covs[0], covs[0])]:
        checked += 1
        try:
            if not compare_base_changes(d1, d2):
                failures.append("P1 coverings disagree")
        except MonoglueError as e:
            failures.append(f"P1 coverings: {e}")
    for m, a, M, ea in ctx.pairs():
        A = affine(M, name=f"Spec {m}")
        checked += 1
        try:
            ok = compare_base_changes(base_change_scheme(A), base_change_scheme(A, [(0, M.one), (0, ea)]))
        except MonoglueError as e:
            ok = False
            failures.append(f"Spec {m} with {{1, {a}}}: {e}")
            continue
        if not ok:
            failures.append(f"Spec {m} with {{1, {a}}}")
    counts = []
    for sname in catalog.SCHEMES:
        for p in (2, 3):
            checked += 1
            mono, ring = coequalizer_instance(ctx.env[sname], p)
            counts.append([sname, p, mono, ring])
            if mono != ring:
                failures.append(f"{sname} over F_{p}: {mono} vs {ring}")
    return _result("10", checked, failures, {"P1": desc, "points": counts})


# -- 11 ------------------------------------------------------------------------------------------------


@suite("11", "reproducibility")
def reproducibility(ctx: Context) -> dict:
    """Cheap in-process spot check on fresh contexts. The full two-run
    comparison of ``verify all`` lives in the acceptance test."""
    runs = [dumps(run(["1", "9"], Context(ctx.bound))) for _ in range(2)]
    failures = [] if runs[0] == runs[1] else ["suites 1 and 9 differ between runs"]
    return _result("11", 2, failures)


# -- driver --------------------------------------------------------------------------------------------


def run(keys=None, ctx: Context | None = None) -> dict:
    ctx = ctx or Context()
    keys = list(SUITES) if keys in (None, ["all"], "all") else list(keys)
    unknown = [k for k in keys if k not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite {', '.join(unknown)}")
    results = [SUITES[k][1](ctx) for k in keys]
    return {"suites": results, "passed": all(r["passed"] for r in results)}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1, default=str)
