import io
import json
import subprocess
import sys

import pytest

from esketch import fincat as fc
from esketch.builders import involution_model, pseudomonoid_model, strict_monoid_category, \
    trivial_and_swap
from esketch.cli import run
from esketch.enhanced import Weakness as W
from esketch.models import ModTarget, Model, check_model, enumerate_transformations
from esketch.sketches import builtin, builtin_text
from esketch.targets import ChordFinCat


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def dump(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def test_dump_builtin_is_golden():
    code, out, _ = call("dump-builtin", "pseudocategory")
    assert code == 0 and out == builtin_text("pseudocategory")


def test_unknown_builtin_is_a_usage_error():
    code, _, err = call("dump-builtin", "monad")
    assert code == 2 and "monad" in err


def test_bad_arguments_exit_2():
    assert call("check-model")[0] == 2
    assert call("no-such-command")[0] == 2
    assert call("limit", "blob", "x.json")[0] == 2


def test_check_model_accepts_and_rejects(tmp_path):
    M = pseudomonoid_model(*strict_monoid_category([0, 1], lambda a, b: (a + b) % 2, 0))
    good = dump(tmp_path, "m.json", M.dumps())
    code, out, _ = call("check-model", "pseudomonoid", good)
    assert code == 0 and out.startswith("accept")
    doc = json.loads(M.dumps())
    doc["cells"]["rho"] = {"components": [1]}
    bad = dump(tmp_path, "bad.json", doc)
    code, out, _ = call("check-model", "pseudomonoid", bad, "--format", "json")
    assert code == 1
    assert json.loads(out)["verdict"] == "reject"


def test_check_morphism_cites_the_involution(tmp_path):
    M, N = trivial_and_swap()
    t = enumerate_transformations(M, N, W.P, W.P)[0]
    files = [dump(tmp_path, f, d) for f, d in
             [("M.json", M.dumps()), ("N.json", N.dumps()), ("t.json", t.to_json())]]
    assert call("check-morphism", "involution", *files, "--wp", "p", "--w", "p")[0] == 0
    code, out, _ = call("check-morphism", "involution", *files, "--wp", "s", "--w", "p")
    assert code == 1 and "'i'" in out


def test_transpose_round_trip(tmp_path):
    inv = builtin("involution")
    C = fc.iso()
    inner = involution_model(C, fc.identity_functor(C))
    target = ModTarget(inv, ChordFinCat(), W.S, W.P)
    m = next(m for t in enumerate_transformations(inner, inner, W.S, W.P)
             for m in [Model(inv, target, {"Star": inner}, {"i": t})] if check_model(m))
    src = dump(tmp_path, "m.json", m.dumps())
    out_path = str(tmp_path / "t.json")
    code, report, _ = call("transpose", "--dir", "st", "involution", "involution", src,
                           "--wp", "s", "--w", "p", "--check", "--out", out_path)
    assert code == 0 and report.startswith("accept")
    code, back, _ = call("transpose", "--dir", "ts", "involution", "involution", out_path,
                         "--wp", "s", "--w", "p")
    assert code == 0 and json.loads(back) == json.loads(m.dumps())


def test_limit_command(tmp_path):
    C = fc.arrow()
    diagram = dump(tmp_path, "d.json", {"categories": [C.to_json(), C.to_json()]})
    code, out, _ = call("limit", "product(2)", diagram)
    doc = json.loads(out)
    assert code == 0 and len(doc["apex"]["objects"]) == 4
    assert call("limit", "product", diagram)[0] == 2


def test_enhance_and_catalogue(tmp_path):
    code, out, _ = call("enhance", "fibration")
    assert code == 0 and out == builtin_text("fibration")
    code, _, _ = call("enhance", "fibration", "--catalogue", "product")
    assert code == 1


def test_tensor_prints_a_sketch():
    code, out, _ = call("tensor", "involution", "involution", "--wp", "p", "--w", "l")
    assert code == 0 and "cell \"i⊗i\"" in out


def test_budget_from_environment(tmp_path, monkeypatch):
    M, _ = trivial_and_swap()
    path = dump(tmp_path, "M.json", M.dumps())
    monkeypatch.setenv("ESK_BUDGET", "many")
    assert call("check-model", "involution", path)[0] == 2
    monkeypatch.setenv("ESK_BUDGET", "1000")
    assert call("check-model", "involution", path)[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "esketch", "dump-builtin", "involution"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == builtin_text("involution")


@pytest.mark.parametrize("name", ["pseudomonoid", "involution"])
def test_sketch_files_are_accepted(tmp_path, name):
    path = dump(tmp_path, f"{name}.esk", builtin_text(name))
    code, out, _ = call("chordate", path)
    assert code == 0 and out.startswith("sketch")
