"""The line-oriented ``.esk`` sketch language: parser, elaborator, printer.

One statement per line; ``#`` starts a comment.  Paths are written
rightmost-first, so ``g . f`` applies ``f`` then ``g``.  A 2-cell
expression is a ``;``-separated list of whisker atoms ``(left | cell |
right)`` read top to bottom; empty whiskers are identities.
"""
import re
from dataclasses import dataclass, field

from .enhanced import (Atom, CellRef, Eq1, Eq2, FCatPresentation, Gen1, Gen2,
                       PastingExpr, Path, Weakness)
from .errors import ElaborationError, EskSyntaxError, EsketchError, InvalidData
from .fincat import FAMILIES, kind_of
from .sketches import ConeInstance, FSketch, validate_sketch
from .weights import schema

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_RESERVED = {"id", "id2", "inv"}
_SYMBOLS = ("->", "=>", "==", ":", "=", ".", "(", ")", "|", ";", ",", "[", "]")
_KEYWORDS = ("sketch", "object", "tight", "loose", "cell", "eq", "cone")


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def _lex_line(text, lineno):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r":
            i += 1
            continue
        if ch == "#":
            break
        col = i + 1
        m = _IDENT.match(text, i)
        if m:
            toks.append(Tok("ident", m.group(), lineno, col))
            i = m.end()
            continue
        if ch == '"':
            j = i + 1
            buf = []
            while j < n and text[j] != '"':
                if text[j] == "\\" and j + 1 < n:
                    j += 1
                buf.append(text[j])
                j += 1
            if j >= n:
                raise EskSyntaxError(lineno, col, {"closing quote"}, "end of line")
            if not buf:
                raise EskSyntaxError(lineno, col, {"non-empty name"}, '""')
            toks.append(Tok("name", "".join(buf), lineno, col))
            i = j + 1
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                toks.append(Tok(sym, sym, lineno, col))
                i += len(sym)
                break
        else:
            raise EskSyntaxError(lineno, col, {"identifier", "symbol"}, ch)
    toks.append(Tok("eol", "", lineno, n + 1))
    return toks


# -- syntax tree -------------------------------------------------------------------

@dataclass
class PathSyn:
    items: list            # (op, name, line, col) with op in {"gen", "id"}, leftmost last applied
    line: int
    col: int


@dataclass
class CellSyn:
    op: str
    name: str = None
    path: PathSyn = None
    line: int = 0
    col: int = 0


@dataclass
class AtomSyn:
    left: PathSyn
    cell: CellSyn
    right: PathSyn


@dataclass
class Stmt:
    kind: str
    line: int
    col: int
    data: dict = field(default_factory=dict)


@dataclass
class EskDocument:
    name: str
    statements: list


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def fail(self, expected):
        t = self.tok
        raise EskSyntaxError(t.line, t.col, expected, t.text or "end of line")

    def take(self, kind):
        if self.tok.kind != kind:
            self.fail({kind})
        t = self.tok
        self.i += 1
        return t

    def at(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def name(self):
        if self.tok.kind in ("ident", "name"):
            t = self.tok
            self.i += 1
            return t
        self.fail({"identifier"})

    def path(self):
        start = self.tok
        items = []
        while True:
            t = self.tok
            if t.kind == "ident" and t.text == "id" and self.toks[self.i + 1].kind == "(":
                self.i += 2
                obj = self.name()
                self.take(")")
                items.append(("id", obj.text, t.line, t.col))
            else:
                n = self.name()
                items.append(("gen", n.text, n.line, n.col))
            if not self.at("."):
                break
            self.i += 1
        return PathSyn(items, start.line, start.col)

    def opt_path(self, stop):
        if self.at(stop):
            return None
        return self.path()

    def cellref(self):
        t = self.tok
        if t.kind == "ident" and t.text in ("inv", "id2") and self.toks[self.i + 1].kind == "(":
            self.i += 2
            if t.text == "inv":
                n = self.name()
                self.take(")")
                return CellSyn("inv", n.text, None, t.line, t.col)
            p = self.path()
            self.take(")")
            return CellSyn("id", None, p, t.line, t.col)
        n = self.name()
        return CellSyn("gen", n.text, None, n.line, n.col)

    def expr(self):
        atoms = [self.atom()]
        while self.at(";"):
            self.i += 1
            atoms.append(self.atom())
        return atoms

    def atom(self):
        self.take("(")
        left = self.opt_path("|")
        self.take("|")
        cell = self.cellref()
        self.take("|")
        right = self.opt_path(")")
        self.take(")")
        return AtomSyn(left, cell, right)

    def cone(self, stmt):
        kind = self.name()
        self.take("(")
        apex = self.name()
        data = {"family": kind.text, "family_pos": (kind.line, kind.col), "apex": apex.text,
                "apex_pos": (apex.line, apex.col), "proj": [], "cell": None, "over": []}
        seen = set()
        while self.at(";"):
            self.i += 1
            section = self.tok
            if section.kind != "ident" or section.text not in ("proj", "cell", "over"):
                self.fail({"proj", "cell", "over"})
            if section.text in seen:
                self.fail({s for s in ("proj", "cell", "over") if s not in seen} or {")"})
            seen.add(section.text)
            self.i += 1
            if section.text == "proj":
                self.take("=")
                if not self.at(";") and not self.at(")"):
                    data["proj"].append(self.path())
                    while self.at(","):
                        self.i += 1
                        data["proj"].append(self.path())
            elif section.text == "cell":
                self.take("=")
                n = self.name()
                data["cell"] = (n.text, n.line, n.col)
            else:
                while True:
                    slot = self.name()
                    self.take("=")
                    data["over"].append((slot.text, self.path(), slot.line, slot.col))
                    if not self.at(","):
                        break
                    self.i += 1
        self.take(")")
        stmt.data = data

    def statement(self):
        t = self.tok
        if t.kind != "ident" or t.text not in _KEYWORDS:
            self.fail(set(_KEYWORDS))
        self.i += 1
        stmt = Stmt(t.text, t.line, t.col)
        if t.text == "sketch":
            stmt.data["name"] = self.name().text
        elif t.text == "object":
            n = self.name()
            stmt.data["names"] = [(n.text, n.line, n.col)]
            while self.at(","):
                self.i += 1
                n = self.name()
                stmt.data["names"].append((n.text, n.line, n.col))
        elif t.text in ("tight", "loose"):
            n = self.name()
            self.take(":")
            a = self.name()
            self.take("->")
            b = self.name()
            stmt.data.update(name=n.text, src=(a.text, a.line, a.col), tgt=(b.text, b.line, b.col))
        elif t.text == "cell":
            n = self.name()
            self.take(":")
            src = self.path()
            self.take("=>")
            tgt = self.path()
            flags = []
            while not self.at("eol"):
                bracket = self.at("[")
                if bracket:
                    self.i += 1
                f = self.tok
                if f.kind != "ident" or f.text not in ("iso", "colax", "lax"):
                    self.fail({"iso", "colax", "lax"} | (set() if bracket else {"end of line"}))
                self.i += 1
                if bracket:
                    self.take("]")
                flags.append(f.text)
            stmt.data.update(name=n.text, src=src, tgt=tgt, flags=flags)
        elif t.text == "eq":
            if self.at("("):
                lhs = self.expr()
                self.take("==")
                if not self.at("("):
                    self.fail({"("})
                rhs = self.expr()
                stmt.data.update(dim=2, lhs=lhs, rhs=rhs)
            else:
                lhs = self.path()
                self.take("==")
                if self.at("("):
                    self.fail({"identifier", "id"})
                rhs = self.path()
                stmt.data.update(dim=1, lhs=lhs, rhs=rhs)
        else:
            self.cone(stmt)
        self.take("eol")
        return stmt


def _decode(data):
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        prefix = data[:exc.start].decode("utf-8", "replace")
        line = prefix.count("\n") + 1
        col = len(prefix) - (prefix.rfind("\n") + 1) + 1
        raise EskSyntaxError(line, col, {"utf-8 text"}, repr(data[exc.start:exc.start + 1]))


def parse(text):
    """Parse ``.esk`` text (str or bytes) into an EskDocument."""
    text = _decode(text)
    statements = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        toks = _lex_line(raw, lineno)
        if len(toks) == 1:
            continue
        statements.append(_Parser(toks).statement())
    if not statements or statements[0].kind != "sketch":
        where = statements[0] if statements else None
        raise EskSyntaxError(where.line if where else 1, where.col if where else 1,
                             {"sketch"}, where.kind if where else "end of input")
    for s in statements[1:]:
        if s.kind == "sketch":
            raise EskSyntaxError(s.line, s.col, set(_KEYWORDS) - {"sketch"}, "sketch")
    return EskDocument(statements[0].data["name"], statements[1:])


# -- elaboration -----------------------------------------------------------------

class _Elaborator:
    def __init__(self, doc):
        self.doc = doc
        self.objects = []
        self.gen1 = {}
        self.gen2 = {}

    def obj(self, name, line, col):
        if name not in self.objects:
            raise ElaborationError(name, f"undeclared object {name!r}", line, col)
        return name

    def path(self, syn, expect_src=None):
        """Elaborate a rightmost-first path; identity-only paths need their object."""
        gens = []
        src = tgt = None
        for op, name, line, col in reversed(syn.items):
            if op == "id":
                self.obj(name, line, col)
                a = b = name
            else:
                if name not in self.gen1:
                    raise ElaborationError(name, f"unknown 1-cell {name!r}", line, col)
                g = self.gen1[name]
                a, b = g.src, g.tgt
                gens.append(name)
            if tgt is not None and a != tgt:
                raise ElaborationError(name, f"path does not compose at {name!r}", line, col)
            if src is None:
                src = a
            tgt = b
        return Path(src, tgt, tuple(gens))

    def cellref(self, syn):
        if syn.op == "id":
            return CellRef.ident(self.path(syn.path))
        if syn.name not in self.gen2:
            raise ElaborationError(syn.name, f"unknown 2-cell {syn.name!r}", syn.line, syn.col)
        if syn.op == "inv" and not self.gen2[syn.name].invertible:
            raise ElaborationError(syn.name, f"2-cell {syn.name!r} is not invertible",
                                   syn.line, syn.col)
        return CellRef(syn.op, syn.name)

    def atom(self, syn):
        cell = self.cellref(syn.cell)
        if cell.op == "id":
            s = cell.path
        else:
            s = self.gen2[cell.name].source
        right = self.path(syn.right) if syn.right else Path.identity(s.src)
        left = self.path(syn.left) if syn.left else Path.identity(s.tgt)
        if right.tgt != s.src or left.src != s.tgt:
            raise ElaborationError(None, "whiskering does not compose", syn.cell.line,
                                   syn.cell.col)
        return Atom(left, cell, right)

    def run(self):
        stmts = self.doc.statements
        for s in stmts:
            if s.kind == "object":
                for name, line, col in s.data["names"]:
                    if name in self.objects:
                        raise ElaborationError(name, f"duplicate object {name!r}", line, col)
                    self.objects.append(name)
        for s in stmts:
            if s.kind in ("tight", "loose"):
                name = s.data["name"]
                if name in self.gen1:
                    raise ElaborationError(name, f"duplicate 1-cell {name!r}", s.line, s.col)
                src = self.obj(*s.data["src"])
                tgt = self.obj(*s.data["tgt"])
                self.gen1[name] = Gen1(name, src, tgt, s.kind == "tight")
        for s in stmts:
            if s.kind == "cell":
                name = s.data["name"]
                if name in self.gen2:
                    raise ElaborationError(name, f"duplicate 2-cell {name!r}", s.line, s.col)
                a = self.path(s.data["src"])
                b = self.path(s.data["tgt"])
                if (a.src, a.tgt) != (b.src, b.tgt):
                    raise ElaborationError(name, f"2-cell {name!r} has non-parallel boundary",
                                           s.line, s.col)
                flags = s.data["flags"]
                direction = Weakness.C if "colax" in flags else Weakness.L
                self.gen2[name] = Gen2(name, a, b, direction, "iso" in flags)
        eqs1, eqs2, cones = [], [], []
        for s in stmts:
            if s.kind == "eq" and s.data["dim"] == 1:
                lhs, rhs = self.path(s.data["lhs"]), self.path(s.data["rhs"])
                if (lhs.src, lhs.tgt) != (rhs.src, rhs.tgt):
                    raise ElaborationError(None, "1-cell equation has non-parallel sides",
                                           s.line, s.col)
                eqs1.append(Eq1(lhs, rhs))
            elif s.kind == "eq":
                eqs2.append(Eq2(PastingExpr([self.atom(a) for a in s.data["lhs"]]),
                                PastingExpr([self.atom(a) for a in s.data["rhs"]])))
            elif s.kind == "cone":
                cones.append(self.cone(s))
        pres = FCatPresentation(self.doc.name, self.objects, self.gen1.values(),
                                self.gen2.values(), eqs1, eqs2)
        sketch = FSketch(pres, cones)
        report = validate_sketch(sketch)
        if not report:
            raise ElaborationError(report.details.get("name"), report.first_failure)
        return sketch

    def cone(self, s):
        d = s.data
        fam = d["family"]
        line, col = d["family_pos"]
        if fam not in FAMILIES:
            raise ElaborationError(fam, f"unknown cone kind {fam!r}", line, col)
        kind = kind_of(fam, len(d["proj"]))
        sch = schema(kind)
        apex = self.obj(d["apex"], *d["apex_pos"])
        if len(d["proj"]) != len(sch.proj_slots):
            raise ElaborationError(fam, f"{fam} cone needs {len(sch.proj_slots)} projections",
                                   line, col)
        proj = [(slot, self.path(p)) for slot, p in zip(sch.proj_slots, d["proj"])]
        over = {}
        for slot, p, sl, sc in d["over"]:
            if slot not in sch.over_slots or slot in over:
                raise ElaborationError(slot, f"unexpected diagram slot {slot!r}", sl, sc)
            over[slot] = self.path(p)
        if set(over) != set(sch.over_slots):
            raise ElaborationError(fam, f"{fam} cone needs diagram slots "
                                        f"{list(sch.over_slots)}", line, col)
        cell = None
        if d["cell"] is not None:
            cell, cl, cc = d["cell"]
            if cell not in self.gen2:
                raise ElaborationError(cell, f"unknown 2-cell {cell!r}", cl, cc)
        if sch.has_cell != (cell is not None):
            raise ElaborationError(fam, f"{fam} cone has a missing or superfluous cell",
                                   line, col)
        return ConeInstance(kind, apex, proj, cell, [(k, over[k]) for k in sch.over_slots])


def elaborate(doc):
    try:
        return _Elaborator(doc).run()
    except ElaborationError:
        raise
    except (InvalidData, EsketchError) as exc:
        raise ElaborationError(None, str(exc)) from None


def parse_sketch(text):
    return elaborate(parse(text))


# -- printing ----------------------------------------------------------------------

def _name(n):
    if _IDENT.fullmatch(n) and n not in _RESERVED:
        return n
    return '"' + n.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _path(p):
    if not p.gens:
        return f"id({_name(p.src)})"
    return " . ".join(_name(g) for g in reversed(p.gens))


def _whisker(p):
    return _path(p) if p.gens else ""


def _cell(ref):
    if ref.op == "id":
        return f"id2({_path(ref.path)})"
    if ref.op == "inv":
        return f"inv({_name(ref.name)})"
    return _name(ref.name)


def _expr(e):
    return " ; ".join(f"({_whisker(a.left)} | {_cell(a.cell)} | {_whisker(a.right)})"
                      for a in e.atoms)


def print_sketch(s):
    p = s.presentation
    out = [f"sketch {_name(p.name)}"]
    out += [f"object {_name(o)}" for o in p.objects]
    for g in p.gen1:
        out.append(f"{'tight' if g.tight else 'loose'} {_name(g.name)} : "
                   f"{_name(g.src)} -> {_name(g.tgt)}")
    for g in p.gen2:
        flags = (" iso" if g.invertible else "") + (" colax" if g.direction == Weakness.C else "")
        out.append(f"cell {_name(g.name)} : {_path(g.source)} => {_path(g.target)}{flags}")
    for e in p.eqs1:
        out.append(f"eq {_path(e.lhs)} == {_path(e.rhs)}")
    for e in p.eqs2:
        out.append(f"eq {_expr(e.lhs)} == {_expr(e.rhs)}")
    for c in s.cones:
        parts = [_name(c.apex)]
        if c.proj:
            parts.append("proj = " + ", ".join(_path(q) for _, q in c.proj))
        if c.cell is not None:
            parts.append(f"cell = {_name(c.cell)}")
        if c.over:
            parts.append("over " + ", ".join(f"{k} = {_path(q)}" for k, q in c.over))
        out.append(f"cone {c.kind.family}({'; '.join(parts)})")
    return "\n".join(out) + "\n"
