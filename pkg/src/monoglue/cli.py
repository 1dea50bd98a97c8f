"""Command-line front end.

    monoglue [--degree-bound N] [-f FILE ...] COMMAND ARGS

Objects are looked up in the shipped catalog and in any definition files
given with ``-f``. A monoid argument may also be written ``F1[x,y]`` for a
free monoid. Reports go to standard output as JSON with keys ``object``,
``bound``, ``result`` and ``flags``; diagnostics go to standard error.

Exit codes: 0 success, 1 a property was refuted or a computation was
inconclusive, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .config import ENV_BOUND
from .errors import MonoglueError, Unbounded

USAGE, REFUTED = 2, 1


class UsageError(Exception):
    pass


def _env(args):
    from . import catalog
    from .dsl import DslError, build, merge, parse

    defs = parse(catalog.catalog_text())
    for path in args.file or []:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}")
        try:
            defs = merge(defs, parse(text, base=defs))
        except DslError as e:
            e.args = (f"{path}: {e}",)
            raise
    return build(defs, bound=args.degree_bound)


def _lookup(env, name, kind):
    from .monoid import Monoid, MonoidHom, free
    from .schemes import GeomScheme

    m = re.fullmatch(r"F1\[([A-Za-z0-9_, ]*)\]", name)
    if kind is Monoid and m:
        gens = [g.strip() for g in m.group(1).split(",") if g.strip()]
        return free(gens, name=name)
    obj = env.get(name)
    want = {Monoid: "monoid", MonoidHom: "hom", GeomScheme: "scheme"}[kind]
    if obj is None:
        raise UsageError(f"unknown {want} {name!r}")
    if kind is GeomScheme and isinstance(obj, Monoid):
        from .schemes import affine

        return affine(obj, name=f"Spec {name}")
    if not isinstance(obj, kind):
        raise UsageError(f"{name!r} is not a {want}")
    return obj


def _report(obj, bound, result, flags=None) -> dict:
    return {"object": obj, "bound": bound, "result": result, "flags": flags or {}}


def _points(P, X) -> list:
    out = []
    for cls in P.classes:
        chart, h = P.base[min(cls)]
        out.append({"chart": X.data.names[chart], "images": h.describe(), "representatives": len(cls)})
    return sorted(out, key=lambda r: (r["chart"], json.dumps(r["images"], sort_keys=True)))


# -- commands ---------------------------------------------------------------------------------


def cmd_spec(args, env):
    from .monoid import Monoid
    from .spectra import spec

    M = _lookup(env, args.monoid, Monoid)
    X = spec(M)
    return _report(M.describe(), M.bound, {"points": X.describe(), "dot": X.to_dot(M.name)})


def cmd_primes(args, env):
    from .monoid import Monoid
    from .spectra import enumerate_primes

    M = _lookup(env, args.monoid, Monoid)
    primes = [
        {"label": p.label(), "trace": sorted(M.generators[i] for i in p.trace)}
        for p in enumerate_primes(M)
    ]
    return _report(M.describe(), M.bound, primes, {"count": len(primes)})


def cmd_localize(args, env):
    from .catalog import element
    from .monoid import Monoid
    from .spectra import localize

    M = _lookup(env, args.monoid, Monoid)
    a = element(M, args.element)
    L = localize(M, [a])
    R = L.result
    return _report(
        M.describe(),
        M.bound,
        {"localization": R.describe(), "canonical": L.canonical.describe()},
        {"trivial": R.is_trivial(), "is_group": R.is_group()},
    )


def cmd_classify(args, env):
    from .classify import classify
    from .monoid import MonoidHom

    f = _lookup(env, args.hom, MonoidHom)
    v = classify(f)
    return _report(
        f"{args.hom} : {f.source.name} -> {f.target.name}",
        f.source.bound,
        v.as_dict(f.source.fmt),
        {"open_immersion": v.open_immersion is not None},
    )


def cmd_glue(args, env):
    from .schemes import GeomScheme

    X = _lookup(env, args.scheme, GeomScheme)
    d = X.data
    overlaps = {
        f"{d.names[i]}|{d.names[j]}": d.charts[i].fmt(a)
        for (i, j), a in sorted(d.overlap.items())
        if a is not None and i != j
    }
    return _report(
        X.name,
        max(M.bound for M in d.charts),
        {"charts": {n: M.describe() for n, M in zip(d.names, d.charts)}, "overlaps": overlaps},
        {"cocycle": True},
    )


def cmd_points(args, env):
    from .schemes import GeomScheme

    X = _lookup(env, args.scheme, GeomScheme)
    return _report(
        X.name,
        max(M.bound for M in X.data.charts),
        {**X.describe(), "dot": X.to_dot()},
        {"count": len(X), "closed": len(X.closed_points())},
    )


def cmd_hom(args, env):
    from .monoid import Monoid
    from .schemes import GeomScheme, hom_schemes

    N = _lookup(env, args.monoid, Monoid)
    X = _lookup(env, args.scheme, GeomScheme)
    P = hom_schemes(N, X, degree=args.hom_degree)
    return _report(
        f"Hom(Spec {N.name}, {X.name})",
        args.hom_degree,
        _points(P, X),
        {"count": len(P), "truncated": P.truncated},
    )


def cmd_evaluate(args, env):
    from .monoid import Monoid
    from .schemes import GeomScheme, evaluate_via_descent, h_functor, hom_schemes, natural_bijection

    X = _lookup(env, args.scheme, GeomScheme)
    N = _lookup(env, args.monoid, Monoid)
    P = evaluate_via_descent(h_functor(X), N, degree=args.hom_degree)
    Q = hom_schemes(N, X, degree=args.hom_degree)
    agree = len(P) == len(Q) and natural_bijection(Q, P) is not None
    return _report(
        f"h_{X.name}({N.name})",
        args.hom_degree,
        _points(P, X),
        {"count": len(P), "truncated": P.truncated, "matches_geometric": agree},
    )


def cmd_base_change(args, env):
    from .basechange import base_change_scheme
    from .schemes import GeomScheme

    X = _lookup(env, args.scheme, GeomScheme)
    G = base_change_scheme(X)
    return _report(X.name, max(M.bound for M in X.data.charts), G.describe(), {"cocycle": True})


def cmd_verify(args, env):
    from . import verify

    keys = args.suites or ["all"]
    try:
        report = verify.run(keys, verify.Context(args.degree_bound))
    except KeyError as e:
        raise UsageError(str(e.args[0]))
    return _report(
        "catalog",
        args.degree_bound,
        report["suites"],
        {"passed": report["passed"]},
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monoglue", description="Monoid schemes: spectra, gluing, base change.")
    p.add_argument("--degree-bound", type=int, default=None, help="saturation degree for presented monoids")
    p.add_argument("-f", "--file", action="append", help="extra definition file (repeatable)")
    p.add_argument("--dot", action="store_true", help="print only the DOT graph (spec, points)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *params, hom_degree=False):
        sp = sub.add_parser(name)
        for prm in params:
            sp.add_argument(prm)
        if hom_degree:
            sp.add_argument("--hom-degree", type=int, default=2, help="truncation for infinite test monoids")
        sp.set_defaults(func=fn)
        return sp

    add("spec", cmd_spec, "monoid")
    add("primes", cmd_primes, "monoid")
    add("localize", cmd_localize, "monoid", "element")
    add("classify-hom", cmd_classify, "hom")
    add("glue", cmd_glue, "scheme")
    add("points", cmd_points, "scheme")
    add("hom", cmd_hom, "monoid", "scheme", hom_degree=True)
    add("evaluate", cmd_evaluate, "scheme", "monoid", hom_degree=True)
    add("base-change", cmd_base_change, "scheme")
    v = sub.add_parser("verify")
    v.add_argument("suites", nargs="*", help="suite numbers, or 'all'")
    v.set_defaults(func=cmd_verify)
    return p


def _diagnostic(kind: str, message: str, **extra):
    print(json.dumps({"error": kind, "message": message, **extra}, sort_keys=True), file=sys.stderr)


def main(argv=None) -> int:
    from .dsl import DslError, DuplicateName, UnknownReference

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else 0
    if args.degree_bound is not None:
        if args.degree_bound < 1:
            _diagnostic("UsageError", "--degree-bound must be positive")
            return USAGE
        os.environ[ENV_BOUND] = str(args.degree_bound)
    try:
        env = _env(args)
        report = args.func(args, env)
    except (UsageError, UnknownReference, DuplicateName) as e:
        _diagnostic(type(e).__name__, str(e))
        return USAGE
    except DslError as e:
        _diagnostic(type(e).__name__, str(e), line=e.line, column=e.col)
        return USAGE
    except Unbounded as e:
        _diagnostic(type(e).__name__, str(e), inconclusive=True)
        return REFUTED
    except MonoglueError as e:
        _diagnostic(type(e).__name__, str(e))
        return REFUTED
    if report["bound"] is None:
        from .monoid import default_bound

        report["bound"] = default_bound()
    if args.dot and isinstance(report["result"], dict) and "dot" in report["result"]:
        print(report["result"]["dot"])
    else:
        print(json.dumps(report, sort_keys=True, indent=1, default=str))
    if args.command == "verify" and not report["flags"]["passed"]:
        return REFUTED
    return 0


if __name__ == "__main__":
    sys.exit(main())
