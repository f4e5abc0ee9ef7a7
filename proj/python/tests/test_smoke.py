import json
import os
import pathlib
import shutil
import subprocess

import jsonschema
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMAS = ROOT / "docs" / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.json").read_text())


def check(instance, name):
    jsonschema.validate(instance, schema(name))


def cli_path():
    env = os.environ.get("WREATHSCOPE_CLI")
    if env:
        return env
    built = ROOT / "build" / "wreathscope"
    if built.exists():
        return str(built)
    return shutil.which("wreathscope")


def run_cli(*args, code=0):
    exe = cli_path()
    if exe is None:
        pytest.skip("wreathscope CLI not built")
    proc = subprocess.run([exe, *args], capture_output=True, text=True)
    assert proc.returncode == code, proc.stderr
    return proc


def test_schemas_are_valid():
    for path in SCHEMAS.glob("*.json"):
        jsonschema.Draft202012Validator.check_schema(json.loads(path.read_text()))


@pytest.mark.parametrize(
    "args,name",
    [
        (["poset", "Z12"], "poset"),
        (["poset", "Z2xZ2"], "poset"),
        (["wordlen", "Z2", "qp+:{}", "t^-3 a t^3", "--oracle"], "wordlen"),
        (["wordlen", "Z3", "standard", "2t^-1 + t @ 2"], "wordlen"),
        (["compare", "Z4", "qp+:{}", "qp-:{2}", "--depth", "8"], "compare"),
        (["delta", "Z2", "lineal", "--radii", "6,10", "--samples", "100"], "delta"),
        (["confining", "check", "--builtin", "qh:Z4:{2}"], "confining_report"),
        (["confining", "check", "--builtin", "fullbase:Z3"], "confining_report"),
        (["confining", "saturate", "--builtin", "z8example", "--window", "6"], "saturation"),
        (["confining", "recover", "--builtin", "counterexample"], "recovery"),
        (["confining", "validate", "--builtin", "counterexample", "--subgroup", "{(1,1)}"], "validation"),
    ],
)
def test_cli_output_matches_schema(args, name):
    check(json.loads(run_cli(*args).stdout), name)


def test_cli_is_byte_stable():
    args = ["delta", "Z2", "standard", "--radii", "6", "--samples", "200", "--seed", "7"]
    assert run_cli(*args).stdout == run_cli(*args).stdout


def test_cli_exit_codes():
    run_cli("poset", "Z1", code=2)
    run_cli("wordlen", "Z2", "standard", "t^", code=3)
    run_cli("confining", "check", "--builtin", "qh:Z4:{5}", code=3)
    run_cli("wordlen", "Z2", "standard", "t^-9", "--oracle", "--window", "1", "--cursor-bound", "2", code=4)


def test_cli_accepts_qspec_file(tmp_path):
    spec = {"kind": "custom", "group": "Z4",
            "params": {"configs": ["2t^-1"], "shift_closed": True, "sum_closed": True, "bplus_closed": True}}
    check(spec, "qspec")
    path = tmp_path / "q.json"
    path.write_text(json.dumps(spec))
    report = json.loads(run_cli("confining", "check", "--qspec", str(path)).stdout)
    check(report, "confining_report")
    assert report["verdict"] == "strictly-confining"


# Module tests run only when the extension is importable.

def test_module_metrics():
    ws = pytest.importorskip("wreathscope")
    assert ws.wordlen("Z2", "qp+:{}", "t^-3 a t^3") == 7
    assert ws.wordlen("Z4", "qp+:{2}", "2t^-5") == 1
    assert ws.wordlen("Z2", "lineal", "1 @ 4") == 5
    assert ws.bfs_wordlen("Z2", "qp+:{}", "t^-3 a t^3", 4, 6) == 7
    assert ws.multiply("Z2", "t^2 @ 2", "0 @ -2") == "t^2"
    assert ws.inverse("Z3", "t @ 1") == "2 @ -1"
    assert ws.busemann("Z3", "2t^-1 @ 5") == 5
    assert ws.qp_count(12) == 10
    plan = ws.plan("Z2", "standard", "t @ 0")
    assert plan["cost"] == 3


def test_module_reports_match_schemas():
    ws = pytest.importorskip("wreathscope")
    check(ws.poset("Z6"), "poset")
    check(ws.check("counterexample"), "confining_report")
    check(ws.saturate("qh:Z4:{2}"), "saturation")
    check(ws.recover("z8example"), "recovery")
    check(ws.validate("counterexample", "{(0,1)}"), "validation")
    for name in ["z8example", "counterexample", "qh-:Z6:{2}", "bminus:Z2"]:
        check(ws.qspec(name), "qspec")
    # Single estimates and the empirical half of a comparison are sub-objects.
    jsonschema.validate(ws.delta("Z2", "qp+:{}", 6, samples=100), schema("delta")["$defs"]["estimate"])
    jsonschema.validate(ws.compare("Z2", "qp+:{}", "lineal"), schema("compare")["properties"]["empirical"])


def test_module_confining_results():
    ws = pytest.importorskip("wreathscope")
    assert ws.check("qh:Z4:{2}")["verdict"] == "strictly-confining"
    assert ws.check("qh-:Z4:{2}", direction="t^-1")["verdict"] == "strictly-confining"
    assert ws.check("fullbase:Z3")["lineal"] is True
    rec = ws.recover("z8example")
    assert rec["subgroup"] == "{2,4,6}" and rec["certified"]
    assert ws.recover("counterexample")["certified"] is False
    assert ws.validate("counterexample", "{(1,0)}")["result"] == "refuted"
    assert ws.contains("counterexample", "(0,1)t^-2 + (1,0)t^-1")
    assert not ws.contains("counterexample", "(1,0)t^-1")
    spec = {"kind": "qh", "group": "Z6", "params": {"subgroup": "{3}", "side": "plus"}}
    assert ws.contains(spec, "3t^-4 + 5t^2")


def test_module_errors():
    ws = pytest.importorskip("wreathscope")
    with pytest.raises(ws.ParseError):
        ws.normalize("Z2", "t^")
    with pytest.raises(ws.WreathscopeError):
        ws.group_order("Z1")
    with pytest.raises(ws.WindowExceeded):
        ws.bfs_wordlen("Z2", "standard", "t^-9", 1, 2)
    with pytest.raises(ws.PreconditionViolated):
        ws.recover("fullbase:Z3")
