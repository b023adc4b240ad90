"""Command-line front end.

Checking commands print a report and exit 0 on accept, 1 on reject.
Producing commands print their artifact (a sketch or a JSON document);
with ``--out`` the artifact goes to the file and the report to stdout.
Usage and input errors exit 2.
"""
import argparse
import json
import os
import re
import sys

from . import fincat as fc
from .closure import MultiModel, check_multimodel, symmetry_transpose, tensor_sketches
from .dsl import parse_sketch, print_sketch
from .enhanced import Weakness, weakness_pair
from .errors import EsketchError, KindNotInCatalogue, NotAPowerTheory, TargetLacksPowers
from .models import Model, ModTarget, WTransform, check_model, check_transformation
from .power import strictify
from .report import VerificationReport
from .sketches import BUILTINS, builtin, builtin_text, chordate_sketch, free_enhance
from .targets import ChordFinCat

EXIT_ACCEPT, EXIT_REJECT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def load_sketch(ref):
    """A sketch from an ``.esk`` file, or a built-in by name."""
    if os.path.exists(ref):
        return parse_sketch(_read(ref))
    name = ref[len("builtin:"):] if ref.startswith("builtin:") else ref
    if name in BUILTINS:
        return builtin(name)
    raise UsageError(f"no sketch file or built-in named {ref!r}")


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(path):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from None


def _budget(args):
    if args.budget is not None:
        return args.budget
    env = os.environ.get("ESK_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"ESK_BUDGET must be an integer, not {env!r}") from None
    return None


def _pair(args, wp="s", w="s"):
    return weakness_pair(args.wp or wp, args.w or w)


_KIND = re.compile(r"(product|terminal|pullback|comma|power2|lax|colax)(?:\((\d+)\))?$")


def parse_kind(text):
    m = _KIND.match(text.strip())
    if not m:
        raise UsageError(f"unknown limit kind {text!r}")
    fam, arity = m.group(1), m.group(2)
    if fam == "product" and arity is None:
        raise UsageError("product needs an arity, e.g. product(2)")
    return fc.kind_of(fam, None if arity is None else int(arity))


# -- commands ----------------------------------------------------------------------

def cmd_check_model(args):
    s = load_sketch(args.sketch)
    target = ChordFinCat()
    if args.inner:
        wp, w = _pair(args)
        target = ModTarget(load_sketch(args.inner), ChordFinCat(), wp, w)
    m = Model.from_json(s, target, _load_json(args.model))
    return check_model(m, _budget(args)), None


def cmd_check_morphism(args):
    s = load_sketch(args.sketch)
    T = ChordFinCat()
    M = Model.from_json(s, T, _load_json(args.source))
    N = Model.from_json(s, T, _load_json(args.target))
    wp, w = _pair(args)
    t = WTransform.from_json(_load_json(args.morphism), M, N, wp, w)
    return check_transformation(t, _budget(args)), None


def cmd_check_multimodel(args):
    a, b = load_sketch(args.first), load_sketch(args.second)
    mm = MultiModel.from_json(a, b, ChordFinCat(), _load_json(args.multimodel), args.wp, args.w)
    return check_multimodel(mm, _budget(args)), None


def cmd_enhance(args):
    s = load_sketch(args.sketch)
    cat = args.catalogue.split(",") if args.catalogue else fc.FAMILIES
    try:
        out = free_enhance(s, cat)
    except KindNotInCatalogue as exc:
        return VerificationReport.reject(str(exc)), None
    return VerificationReport.accept({"tight": sorted(out.tight_names())}), print_sketch(out)


def cmd_chordate(args):
    out = chordate_sketch(load_sketch(args.sketch))
    return VerificationReport.accept({"tight": len(out.tight_names())}), print_sketch(out)


def cmd_tensor(args):
    a, b = load_sketch(args.first), load_sketch(args.second)
    wp, w = _pair(args)
    ts = tensor_sketches(a, b, wp, w)
    p = ts.presentation
    details = {"objects": len(p.objects), "gen1": len(p.gen1), "gen2": len(p.gen2),
               "eqs1": len(p.eqs1), "eqs2": len(p.eqs2), "cones": len(ts.cones)}
    return VerificationReport.accept(details), print_sketch(ts)


def cmd_transpose(args):
    s, t = load_sketch(args.first), load_sketch(args.second)
    wp, w = _pair(args)
    if args.dir == "st":
        outer, inner = s, t
    else:
        outer, inner, wp, w = t, s, wp.dual, w.dual
    m = Model.from_json(outer, ModTarget(inner, ChordFinCat(), wp, w), _load_json(args.model))
    if args.check:
        report = check_model(m, _budget(args))
        if not report:
            return report, None
    out = symmetry_transpose(m)
    report = check_model(out, _budget(args)) if args.check else VerificationReport.accept()
    return report, out.dumps()


def cmd_strictify(args):
    s = load_sketch(args.sketch)
    T = ChordFinCat()
    M = Model.from_json(s, T, _load_json(args.source))
    N = Model.from_json(s, T, _load_json(args.target))
    w = Weakness.parse(args.w or "l")
    t = WTransform.from_json(_load_json(args.morphism), M, N, Weakness.P, w)
    report = check_transformation(t, _budget(args))
    if not report:
        return report, None
    try:
        psi, ups = strictify(t)
    except (NotAPowerTheory, TargetLacksPowers) as exc:
        return VerificationReport.reject(str(exc)), None
    report = check_transformation(psi, _budget(args))
    doc = json.dumps({"psi": psi.to_json(), "upsilon": ups.to_json()}, separators=(",", ":"))
    return report, doc


def _load_diagram(kind, data):
    try:
        cats = [fc.FinCat.from_json(c) for c in data["categories"]]
        if kind.family in ("product", "power2"):
            return cats
        return [fc.FinFunctor.from_json(f, cats[f["source"]], cats[f["target"]])
                for f in data["functors"]]
    except (KeyError, IndexError, TypeError) as exc:
        raise UsageError(f"malformed diagram document: {exc!r}") from None


def cmd_limit(args):
    kind = parse_kind(args.kind)
    diagram = _load_diagram(kind, _load_json(args.diagram))
    cone = fc.canonical_limit(kind, diagram)
    report = fc.verify_cone(cone, diagram)
    doc = {"kind": str(kind), "apex": cone.apex.to_json(),
           "projections": [q.to_json() for q in cone.projections]}
    if cone.cell is not None:
        doc["cell"] = cone.cell.to_json()
    return report, json.dumps(doc, separators=(",", ":"))


def cmd_dump_builtin(args):
    try:
        text = builtin_text(args.name)
    except EsketchError as exc:
        raise UsageError(str(exc)) from None
    return VerificationReport.accept(), text


# -- plumbing ----------------------------------------------------------------------------

def _weakness_flags(p):
    p.add_argument("--wp", choices=["s", "p", "l", "c"], help="weakness at tight generators")
    p.add_argument("--w", choices=["s", "p", "l", "c"], help="weakness at loose generators")


def build_parser():
    ap = argparse.ArgumentParser(prog="esketch",
                                 description="Check models of enhanced limit sketches.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--out", help="write the artifact (or report) to this file")
    common.add_argument("--budget", type=int, help="search budget (default: $ESK_BUDGET)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add("check-model", help="check a model against a sketch")
    p.add_argument("sketch")
    p.add_argument("model")
    p.add_argument("--inner", help="the model takes values in models of this sketch")
    _weakness_flags(p)
    p.set_defaults(run=cmd_check_model)

    p = add("check-morphism", help="check a transformation of models")
    for name in ("sketch", "source", "target", "morphism"):
        p.add_argument(name)
    _weakness_flags(p)
    p.set_defaults(run=cmd_check_morphism)

    p = add("check-multimodel", help="check a model of two sketches at once")
    for name in ("first", "second", "multimodel"):
        p.add_argument(name)
    _weakness_flags(p)
    p.set_defaults(run=cmd_check_multimodel)

    p = add("enhance", help="free enhancement of a sketch's 2-sketch")
    p.add_argument("sketch")
    p.add_argument("--catalogue", help="comma-separated weight families")
    p.set_defaults(run=cmd_enhance)

    p = add("chordate", help="mark every generator tight")
    p.add_argument("sketch")
    p.set_defaults(run=cmd_chordate)

    p = add("tensor", help="tensor product of two sketches")
    p.add_argument("first")
    p.add_argument("second")
    _weakness_flags(p)
    p.set_defaults(run=cmd_tensor)

    p = add("transpose", help="exchange the order of internalisation")
    p.add_argument("--dir", choices=["st", "ts"], required=True,
                   help="st: FIRST-model in SECOND-models to the reverse; ts: back")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("model")
    p.add_argument("--check", action="store_true", help="check input and output models")
    _weakness_flags(p)
    p.set_defaults(run=cmd_transpose)

    p = add("strictify", help="strictify a (p, w)-transformation")
    for name in ("sketch", "source", "target", "morphism"):
        p.add_argument(name)
    p.add_argument("--w", choices=["l", "c", "p", "s"])
    p.set_defaults(run=cmd_strictify, wp=None)

    p = add("limit", help="canonical limit of a diagram of finite categories")
    p.add_argument("kind", help="product(n), terminal, pullback, comma, power2, lax, colax")
    p.add_argument("diagram")
    p.set_defaults(run=cmd_limit)

    p = add("dump-builtin", help="print a built-in sketch")
    p.add_argument("name")
    p.set_defaults(run=cmd_dump_builtin)
    return ap


def _render(report, fmt, command):
    if fmt == "json":
        doc = {"command": command, **report.to_json()}
        return json.dumps(doc, default=str)
    lines = [report.verdict if report else f"reject: {report.first_failure}"]
    lines += [f"  {k}: {v}" for k, v in report.details.items()]
    return "\n".join(lines)


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_ACCEPT
    try:
        report, artifact = args.run(args)
        rendered = _render(report, args.format, args.command)
        if artifact is None:
            if args.out:
                _write(args.out, rendered + "\n")
            else:
                print(rendered, file=stdout)
        elif args.out:
            _write(args.out, artifact)
            print(rendered, file=stdout)
        else:
            stdout.write(artifact)
            if not artifact.endswith("\n"):
                stdout.write("\n")
            if not report:
                print(rendered, file=stderr)
    except UsageError as exc:
        print(f"esketch: error: {exc}", file=stderr)
        return EXIT_USAGE
    except EsketchError as exc:
        print(f"esketch: error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_USAGE
    return EXIT_ACCEPT if report else EXIT_REJECT


def main():
    sys.exit(run())
