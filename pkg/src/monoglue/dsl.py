"""Definition files: monoids, finite monoids, homs and glued schemes.

    monoid A2
      gen x y
      rel x^2*y = y
    end
    finite B
      elements 1 0
      zero 0
      row 1 : 1 0
      row 0 : 0 0
    end
    hom f : A2 -> B
      x -> 0
      y -> 1
    end
    scheme P1
      chart U0 = A1
      chart U1 = B1
      glue U0 U1 on x | y : y -> x^-1
    end

Words: ``1`` or factors ``name`` / ``name^n`` joined by ``*``. Glue images
may use negative exponents. ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import MonoglueError

IDENT = r"[A-Za-z_][A-Za-z0-9_']*"
_IDENT_RE = re.compile(IDENT + r"$")


class DslError(MonoglueError):
    kind = "error"

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        super().__init__(f"{self.kind} at {line}:{col}: {message}" if line else message)


class DslSyntaxError(DslError):
    kind = "syntax error"


class UnknownReference(DslError):
    kind = "unknown reference"


class DuplicateName(DslError):
    kind = "duplicate name"


Word = tuple  # tuple of (name, exponent) pairs in written order


@dataclass
class MonoidDecl:
    name: str
    gens: list
    rels: list = field(default_factory=list)  # pairs of Word
    zero: str | None = None
    bound: int | None = None


@dataclass
class FiniteDecl:
    name: str
    elements: list
    unit: str | None = None
    zero: str | None = None
    rows: dict = field(default_factory=dict)  # label -> list of labels


@dataclass
class HomDecl:
    name: str
    source: str
    target: str
    images: list = field(default_factory=list)  # (gen, Word)


@dataclass
class GlueDecl:
    first: str
    second: str
    a_first: Word
    a_second: Word
    images: list  # (gen of second chart, Word with integer exponents over first chart)


@dataclass
class SchemeDecl:
    name: str
    charts: list = field(default_factory=list)  # (chart name, monoid name)
    glues: list = field(default_factory=list)


@dataclass
class DefinitionFile:
    decls: list = field(default_factory=list)

    def names(self) -> list:
        return [d.name for d in self.decls]

    def get(self, name: str):
        for d in self.decls:
            if d.name == name:
                return d
        raise UnknownReference(name)


# -- words -------------------------------------------------------------------------------


def parse_word(text: str, line: int = 0, col: int = 0, signed: bool = False) -> Word:
    text = text.strip()
    if not text:
        raise DslSyntaxError("empty word", line, col)
    if text == "1":
        return ()
    out = []
    for part in text.split("*"):
        part = part.strip()
        m = re.fullmatch(rf"({IDENT})(?:\s*\^\s*(-?\d+))?", part)
        if not m:
            raise DslSyntaxError(f"bad factor {part!r}", line, col)
        e = int(m.group(2)) if m.group(2) is not None else 1
        if e == 0 or (e < 0 and not signed):
            raise DslSyntaxError(f"exponent must be a positive integer in {part!r}", line, col)
        out.append((m.group(1), e))
    return tuple(out)


def render_word(w: Word, order: list | None = None) -> str:
    if not w:
        return "1"
    items = _collect(w)
    if order is not None:
        items = sorted(items, key=lambda it: order.index(it[0]) if it[0] in order else len(order))
    return "*".join(n if e == 1 else f"{n}^{e}" for n, e in items)


def _collect(w: Word) -> list:
    acc: dict = {}
    for n, e in w:
        acc[n] = acc.get(n, 0) + e
    return [(n, e) for n, e in acc.items() if e]


def word_vector(w: Word, gens: list, line: int = 0) -> tuple:
    vec = [0] * len(gens)
    for n, e in w:
        if n not in gens:
            raise UnknownReference(f"generator {n!r}", line)
        vec[gens.index(n)] += e
    return tuple(vec)


# -- parsing --------------------------------------------------------------------------------


def parse(text: str, base: DefinitionFile | None = None) -> DefinitionFile:
    """Parse one file. Names declared in ``base`` may be referenced but not
    redeclared; the result holds only this file's declarations."""
    lines = text.splitlines()
    out = DefinitionFile()
    seen: set = set(base.names()) if base else set()
    i = 0

    def body(start):
        nonlocal i
        rows = []
        while i < len(lines):
            raw = lines[i].split("#", 1)[0]
            i += 1
            if not raw.strip():
                continue
            if raw.strip() == "end":
                return rows
            rows.append((i, raw))
        raise DslSyntaxError("block is missing 'end'", start, 1)

    while i < len(lines):
        raw = lines[i].split("#", 1)[0]
        i += 1
        ln = i
        if not raw.strip():
            continue
        head = raw.split()
        kw = head[0]
        col = raw.index(kw) + 1
        if kw == "monoid":
            m = re.fullmatch(rf"\s*monoid\s+({IDENT})(?:\s+bound\s+(\d+))?\s*", raw)
            if not m:
                raise DslSyntaxError("expected 'monoid NAME [bound N]'", ln, col)
            decl = MonoidDecl(m.group(1), [], bound=int(m.group(2)) if m.group(2) else None)
            for n, row in body(ln):
                toks = row.split()
                c = row.index(toks[0]) + 1
                if toks[0] == "gen":
                    for g in toks[1:]:
                        if not _IDENT_RE.match(g):
                            raise DslSyntaxError(f"bad generator name {g!r}", n, c)
                        if g in decl.gens:
                            raise DuplicateName(f"generator {g!r}", n, c)
                        decl.gens.append(g)
                elif toks[0] == "rel":
                    rest = row.split("rel", 1)[1]
                    if rest.count("=") != 1:
                        raise DslSyntaxError("expected 'rel LHS = RHS'", n, c)
                    lhs, rhs = rest.split("=")
                    eq = row.index("=") + 1
                    decl.rels.append((parse_word(lhs, n, c + 4), parse_word(rhs, n, eq + 1)))
                elif toks[0] == "zero":
                    if len(toks) != 2:
                        raise DslSyntaxError("expected 'zero NAME'", n, c)
                    decl.zero = toks[1]
                else:
                    raise DslSyntaxError(f"unexpected {toks[0]!r} in monoid block", n, c)
            _check_monoid(decl, ln)
        elif kw == "finite":
            m = re.fullmatch(rf"\s*finite\s+({IDENT})\s*", raw)
            if not m:
                raise DslSyntaxError("expected 'finite NAME'", ln, col)
            decl = FiniteDecl(m.group(1), [])
            for n, row in body(ln):
                toks = row.split()
                c = row.index(toks[0]) + 1
                if toks[0] == "elements":
                    decl.elements = toks[1:]
                elif toks[0] in ("unit", "zero") and len(toks) == 2:
                    setattr(decl, toks[0], toks[1])
                elif toks[0] == "row" and ":" in toks:
                    k = toks.index(":")
                    if k != 2:
                        raise DslSyntaxError("expected 'row LABEL : ...'", n, c)
                    decl.rows[toks[1]] = toks[3:]
                else:
                    raise DslSyntaxError(f"unexpected {toks[0]!r} in finite block", n, c)
            _check_finite(decl, ln)
        elif kw == "hom":
            m = re.fullmatch(rf"\s*hom\s+({IDENT})\s*:\s*({IDENT})\s*->\s*({IDENT})\s*", raw)
            if not m:
                raise DslSyntaxError("expected 'hom NAME : SOURCE -> TARGET'", ln, col)
            decl = HomDecl(m.group(1), m.group(2), m.group(3))
            for n, row in body(ln):
                mm = re.fullmatch(rf"\s*({IDENT})\s*->\s*(.*?)\s*", row)
                if not mm:
                    raise DslSyntaxError("expected 'GEN -> WORD'", n, 1)
                decl.images.append((mm.group(1), parse_word(mm.group(2), n, row.index("->") + 3)))
        elif kw == "scheme":
            m = re.fullmatch(rf"\s*scheme\s+({IDENT})\s*", raw)
            if not m:
                raise DslSyntaxError("expected 'scheme NAME'", ln, col)
            decl = SchemeDecl(m.group(1))
            for n, row in body(ln):
                toks = row.split()
                c = row.index(toks[0]) + 1
                if toks[0] == "chart":
                    mm = re.fullmatch(rf"\s*chart\s+({IDENT})\s*=\s*({IDENT})\s*", row)
                    if not mm:
                        raise DslSyntaxError("expected 'chart NAME = MONOID'", n, c)
                    if mm.group(1) in [x for x, _ in decl.charts]:
                        raise DuplicateName(f"chart {mm.group(1)!r}", n, c)
                    decl.charts.append((mm.group(1), mm.group(2)))
                elif toks[0] == "glue":
                    mm = re.fullmatch(
                        rf"\s*glue\s+({IDENT})\s+({IDENT})\s+on\s+(.+?)\s*\|\s*(.+?)\s*:\s*(.*)", row
                    )
                    if not mm:
                        raise DslSyntaxError("expected 'glue U V on a | b : g -> word, ...'", n, c)
                    imgs = []
                    for piece in mm.group(5).split(","):
                        pm = re.fullmatch(rf"\s*({IDENT})\s*->\s*(.*?)\s*", piece)
                        if not pm:
                            raise DslSyntaxError(f"bad transition image {piece.strip()!r}", n, c)
                        imgs.append((pm.group(1), parse_word(pm.group(2), n, c, signed=True)))
                    decl.glues.append(GlueDecl(
                        mm.group(1), mm.group(2),
                        parse_word(mm.group(3), n, c), parse_word(mm.group(4), n, c), imgs,
                    ))
                else:
                    raise DslSyntaxError(f"unexpected {toks[0]!r} in scheme block", n, c)
        else:
            raise DslSyntaxError(f"unknown declaration {kw!r}", ln, col)
        if decl.name in seen:
            raise DuplicateName(decl.name, ln, col)
        seen.add(decl.name)
        out.decls.append(decl)
    _check_references(out, base)
    return out


def merge(*files: DefinitionFile) -> DefinitionFile:
    return DefinitionFile([d for f in files for d in f.decls])


def _check_monoid(d: MonoidDecl, line: int):
    for lhs, rhs in d.rels:
        for n, _ in lhs + rhs:
            if n not in d.gens:
                raise UnknownReference(f"generator {n!r} in {d.name}", line)
    if d.zero is not None and d.zero not in d.gens:
        raise UnknownReference(f"zero {d.zero!r} is not a generator of {d.name}", line)


def _check_finite(d: FiniteDecl, line: int):
    if not d.elements:
        raise DslSyntaxError(f"{d.name}: no elements", line, 1)
    for lab in d.elements:
        if lab != "1" and not _IDENT_RE.match(lab):
            raise DslSyntaxError(f"{d.name}: element label {lab!r} is not an identifier", line, 1)
    if len(set(d.elements)) != len(d.elements):
        raise DuplicateName(f"element label in {d.name}", line)
    for lab in [d.unit, d.zero] + list(d.rows):
        if lab is not None and lab not in d.elements:
            raise UnknownReference(f"element {lab!r} in {d.name}", line)
    if set(d.rows) != set(d.elements):
        raise DslSyntaxError(f"{d.name}: need one row per element", line, 1)
    for lab, row in d.rows.items():
        if len(row) != len(d.elements) or any(x not in d.elements for x in row):
            raise DslSyntaxError(f"{d.name}: malformed row {lab!r}", line, 1)


def _check_references(f: DefinitionFile, base: DefinitionFile | None = None):
    kinds = {d.name: d for d in (base.decls if base else []) + f.decls}
    for d in f.decls:
        if isinstance(d, HomDecl):
            for ref in (d.source, d.target):
                if ref not in kinds or not isinstance(kinds[ref], (MonoidDecl, FiniteDecl)):
                    raise UnknownReference(f"monoid {ref!r} in hom {d.name}")
        if isinstance(d, SchemeDecl):
            names = [c for c, _ in d.charts]
            for _, ref in d.charts:
                if ref not in kinds or not isinstance(kinds[ref], (MonoidDecl, FiniteDecl)):
                    raise UnknownReference(f"monoid {ref!r} in scheme {d.name}")
            for g in d.glues:
                for c in (g.first, g.second):
                    if c not in names:
                        raise UnknownReference(f"chart {c!r} in scheme {d.name}")


# -- rendering ----------------------------------------------------------------------------------


def render(f: DefinitionFile) -> str:
    """Canonical text; parse(render(x)) reproduces x."""
    out = []
    gens_of = {d.name: d.gens for d in f.decls if isinstance(d, MonoidDecl)}
    gens_of.update({d.name: d.elements for d in f.decls if isinstance(d, FiniteDecl)})
    for d in f.decls:
        if isinstance(d, MonoidDecl):
            out.append(f"monoid {d.name}" + (f" bound {d.bound}" if d.bound else ""))
            if d.gens:
                out.append("  gen " + " ".join(d.gens))
            for lhs, rhs in d.rels:
                out.append(f"  rel {render_word(lhs, d.gens)} = {render_word(rhs, d.gens)}")
            if d.zero:
                out.append(f"  zero {d.zero}")
        elif isinstance(d, FiniteDecl):
            out.append(f"finite {d.name}")
            out.append("  elements " + " ".join(d.elements))
            if d.unit:
                out.append(f"  unit {d.unit}")
            if d.zero:
                out.append(f"  zero {d.zero}")
            for lab in d.elements:
                out.append(f"  row {lab} : " + " ".join(d.rows[lab]))
        elif isinstance(d, HomDecl):
            out.append(f"hom {d.name} : {d.source} -> {d.target}")
            tg = gens_of.get(d.target)
            for g, w in d.images:
                out.append(f"  {g} -> {render_word(w, tg)}")
        elif isinstance(d, SchemeDecl):
            out.append(f"scheme {d.name}")
            charts = dict(d.charts)
            for c, m in d.charts:
                out.append(f"  chart {c} = {m}")
            for g in d.glues:
                order = gens_of.get(charts[g.first])
                imgs = ", ".join(f"{x} -> {render_word(w, order)}" for x, w in g.images)
                out.append(
                    f"  glue {g.first} {g.second} on {render_word(g.a_first, order)}"
                    f" | {render_word(g.a_second, gens_of.get(charts[g.second]))} : {imgs}"
                )
        out.append("end")
        out.append("")
    return "\n".join(out)


# -- building objects ------------------------------------------------------------------------------


def build(f: DefinitionFile, bound: int | None = None) -> dict:
    """Construct monoids, homs and schemes; returns name -> object."""
    from .monoid import FiniteMonoid, MonoidHom, PresentedMonoid
    from .schemes import GluingData, glue

    env: dict = {}
    for d in f.decls:
        if isinstance(d, MonoidDecl):
            rels = [(word_vector(l, d.gens), word_vector(r, d.gens)) for l, r in d.rels]
            env[d.name] = PresentedMonoid(d.name, d.gens, rels, zero=d.zero, bound=d.bound or bound)
        elif isinstance(d, FiniteDecl):
            idx = {lab: i for i, lab in enumerate(d.elements)}
            table = [[idx[x] for x in d.rows[lab]] for lab in d.elements]
            unit = idx[d.unit] if d.unit else 0
            zero = idx[d.zero] if d.zero else None
            env[d.name] = FiniteMonoid(d.elements, table, unit, d.name, zero=zero)
        elif isinstance(d, HomDecl):
            M, N = env[d.source], env[d.target]
            given = dict(d.images)
            # a finite source may list images of any of its elements
            names = M.labels if isinstance(M, FiniteMonoid) else M.generators
            for g in given:
                if g not in names:
                    raise UnknownReference(f"generator {g!r} of {M.name} in hom {d.name}")
            missing = [g for g in M.generators if g not in given]
            if missing:
                raise UnknownReference(f"hom {d.name}: no image for {', '.join(missing)}")
            images = [evaluate_word(N, given[g]) for g in M.generators]
            f_ = MonoidHom(M, N, images, name=d.name, check=True)
            for g, w in given.items():
                if not N.equal(f_(evaluate_word(M, ((g, 1),))), evaluate_word(N, w)):
                    raise MonoglueError(f"hom {d.name}: image of {g} is inconsistent")
            env[d.name] = f_
        elif isinstance(d, SchemeDecl):
            names = [c for c, _ in d.charts]
            charts = [env[m] for _, m in d.charts]
            overlaps, transitions = {}, {}
            for g in d.glues:
                i, j = names.index(g.first), names.index(g.second)
                overlaps[(i, j)] = evaluate_word(charts[i], g.a_first)
                overlaps[(j, i)] = evaluate_word(charts[j], g.a_second)
                transitions[(i, j)] = {x: dict(_collect(w)) for x, w in g.images}
            env[d.name] = glue(GluingData(charts, overlaps, transitions, names=names, name=d.name))
    return env


def evaluate_word(M, w: Word):
    """The element of M a parsed word denotes."""
    from .monoid import FiniteMonoid

    if isinstance(M, FiniteMonoid):
        acc = M.one
        for n, e in w:
            if n not in M.labels:
                raise UnknownReference(f"element {n!r} of {M.name}")
            acc = M.mul(acc, M.power(M.element(n), e))
        return acc
    return M.eval_word(word_vector(w, list(M.generators)))
