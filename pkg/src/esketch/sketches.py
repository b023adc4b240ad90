"""Sketches: a presentation together with weighted cones from the catalogue."""
from dataclasses import dataclass
from importlib import resources

from .enhanced import (FCatPresentation, equal_modulo, path_is_tight,
                       validate_presentation)
from .errors import InvalidData, KindNotInCatalogue, UnknownBuiltin
from .fincat import Kind
from .report import VerificationReport
from .weights import cloven_mark, schema

BUILTINS = ("pseudomonoid", "pseudocategory", "category", "fibration",
            "opfibration", "discrete-fibration", "involution")


@dataclass(frozen=True)
class ConeInstance:
    kind: Kind
    apex: str
    proj: tuple
    cell: str = None
    over: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "proj", tuple((str(k), v) for k, v in self.proj))
        object.__setattr__(self, "over", tuple((str(k), v) for k, v in self.over))

    def projection(self, slot):
        return dict(self.proj)[slot]

    def over_path(self, slot):
        return dict(self.over)[slot]

    def tight_paths(self):
        """Paths that must be tight: projections in tight slots, plus the
        diagram arrows for kinds whose diagrams are tight."""
        sch = schema(self.kind)
        paths = [p for k, p in self.proj if k in sch.tight_slots]
        if sch.diagram_tight:
            paths.extend(p for _, p in self.over)
        return paths


@dataclass(frozen=True)
class FSketch:
    presentation: FCatPresentation
    cones: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "cones", tuple(self.cones))

    @property
    def name(self):
        return self.presentation.name

    def tight_names(self):
        return self.presentation.tight_names()


@dataclass(frozen=True)
class TwoSketch:
    """A sketch read without tightness: all generators loose."""

    presentation: FCatPresentation
    cones: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "cones", tuple(self.cones))
        if self.presentation.tight_names():
            object.__setattr__(self, "presentation", self.presentation.with_tight(()))

    @property
    def name(self):
        return self.presentation.name


def _cone_problem(p, cone, deferred):
    sch = schema(cone.kind)
    fam = cone.kind.family
    if tuple(k for k, _ in cone.proj) != sch.proj_slots:
        return f"cone at {cone.apex!r} needs projection slots {list(sch.proj_slots)}"
    if tuple(k for k, _ in cone.over) != sch.over_slots:
        return f"cone at {cone.apex!r} needs diagram slots {list(sch.over_slots)}"
    if sch.has_cell != (cone.cell is not None):
        return f"cone at {cone.apex!r} has a missing or superfluous cell"
    if cone.apex not in p.objects:
        return f"cone apex {cone.apex!r} is undeclared"
    for _, path in cone.proj:
        if path.src != cone.apex:
            return f"projection {path} does not start at the apex {cone.apex!r}"

    def same(a, b, what):
        verdict = equal_modulo(p, a, b)
        if verdict is False:
            return f"cone at {cone.apex!r}: {what} ({a} vs {b})"
        if verdict is None:
            deferred.append(f"{a} = {b}")
        return None

    def cell_is(src, tgt):
        g = p.g2(cone.cell)
        return same(g.source, src, "cell source mismatch") or \
            same(g.target, tgt, "cell target mismatch")

    proj = dict(cone.proj)
    over = dict(cone.over)
    if fam in ("pullback", "comma"):
        f, g = over["left"], over["right"]
        if f.tgt != g.tgt or proj["left"].tgt != f.src or proj["right"].tgt != g.src:
            return f"cone at {cone.apex!r} is ill-typed over its cospan"
        lhs, rhs = proj["left"].then(f), proj["right"].then(g)
        if fam == "pullback":
            return same(lhs, rhs, "pullback square does not commute")
        return cell_is(lhs, rhs)
    if fam == "power2":
        if proj["src"].tgt != proj["tgt"].tgt:
            return f"cone at {cone.apex!r}: power projections land in different objects"
        return cell_is(proj["src"], proj["tgt"])
    if fam in ("lax", "colax"):
        a = over["arrow"]
        if proj["dom"].tgt != a.src or proj["cod"].tgt != a.tgt:
            return f"cone at {cone.apex!r} is ill-typed over its arrow"
        through = proj["dom"].then(a)
        if fam == "lax":
            return cell_is(through, proj["cod"])
        return cell_is(proj["cod"], through)
    return None


def validate_sketch(s, tightness=True):
    report = validate_presentation(s.presentation)
    if not report:
        return report
    p = s.presentation
    deferred = list(report.details.get("deferred", []))
    for cone in s.cones:
        try:
            problem = _cone_problem(p, cone, deferred)
        except (InvalidData, KeyError) as exc:
            problem = f"cone at {cone.apex!r}: {exc}"
        if problem:
            return VerificationReport.reject(problem, {"apex": cone.apex})
        if tightness and isinstance(s, FSketch):
            for path in cone.tight_paths():
                if not path_is_tight(p, path):
                    return VerificationReport.reject(
                        f"cone at {cone.apex!r}: {path} fills a tight slot but is loose",
                        {"apex": cone.apex})
    return VerificationReport.accept({"deferred": deferred, "cones": len(s.cones)})


# -- built-ins -----------------------------------------------------------------

def builtin_text(name):
    if name not in BUILTINS:
        raise UnknownBuiltin(f"no built-in sketch named {name!r}")
    return resources.files("esketch").joinpath("builtins").joinpath(f"{name}.esk").read_text("utf-8")


def builtin(name):
    from .dsl import parse_sketch
    return parse_sketch(builtin_text(name))


# -- enhancement adjunctions --------------------------------------------------

def _catalogue_families(catalogue):
    fams = set()
    for k in catalogue:
        fams.add(k.family if isinstance(k, Kind) else str(k))
    return fams


def underlying_2sketch(s):
    return TwoSketch(s.presentation.with_tight(()), s.cones)


def free_enhance(s, catalogue):
    """Mark tight exactly the generators the cones force to be tight."""
    fams = _catalogue_families(catalogue)
    p = s.presentation
    marked = set()
    for cone in s.cones:
        if cone.kind.family not in fams:
            raise KindNotInCatalogue(f"cone kind {cone.kind} is not in the catalogue")
        sch = schema(cone.kind)
        tight_slots = cloven_mark(cone.kind)
        for slot, path in cone.proj:
            if slot in tight_slots:
                marked.update(path.gens)
        if sch.diagram_tight:
            for _, path in cone.over:
                marked.update(path.gens)
        if cone.kind.family == "product" and cone.kind.arity == 0:
            # maps into a terminal apex are detected tight vacuously
            marked.update(g.name for g in p.gen1 if g.tgt == cone.apex)
    return FSketch(p.with_tight(marked), s.cones)


def chordate_sketch(s):
    p = s.presentation
    return FSketch(p.with_tight(g.name for g in p.gen1), s.cones)
