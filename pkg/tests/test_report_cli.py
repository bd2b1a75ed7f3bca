"""Report assembly, byte-stable emission, exit codes, and the console entry point."""

import json
import pathlib

import pytest

from hyperext.dsl import parse_script
from hyperext.report import (
    CHECKERS,
    DEFAULT_SETTINGS,
    SCHEMA,
    emit_structured,
    emit_text,
    execute_script,
    exit_code,
    fail_witnesses,
    parse_structured,
)
from hyperext.rigidity import CheckVerdict
import hyperext.cli as cli

GOLDEN = pathlib.Path(__file__).parent / "golden"


def _canonical(report: dict) -> bytes:
    trimmed = {k: v for k, v in report.items() if k != "volatile"}
    return (json.dumps(trimmed, sort_keys=True, indent=1, ensure_ascii=False) + "\n").encode()


def _run_fixture(name: str) -> dict:
    script = parse_script((GOLDEN / f"{name}.hxs").read_text())
    return execute_script(script)


@pytest.mark.parametrize("name", ["session", "campaign", "errors"])
def test_golden_reports_are_byte_stable(name):
    report = _run_fixture(name)
    assert _canonical(report) == (GOLDEN / f"{name}.json").read_bytes()


def test_repeated_runs_differ_only_in_volatile():
    r1 = _run_fixture("session")
    r2 = _run_fixture("session")
    assert _canonical(r1) == _canonical(r2)
    assert set(r1["volatile"]) == {"generated_at", "wall_ms"}


def test_report_envelope():
    report = _run_fixture("errors")
    assert report["schema"] == SCHEMA
    assert report["tool"]["name"] == "hyperext"
    assert report["settings"]["seed"] == DEFAULT_SETTINGS["seed"]
    kinds = [d["kind"] for d in report["declarations"]]
    assert kinds == ["ring", "module"]


def test_structured_json_is_canonical_fixpoint():
    report = _run_fixture("errors")
    data = emit_structured(report)
    parsed = parse_structured(data)
    assert emit_structured(parsed) == data
    assert data.endswith(b"\n")


def test_error_fragments_are_captured_not_fatal():
    report = _run_fixture("errors")
    errs = [fr for fr in report["results"] if "error" in fr]
    assert len(errs) == 1
    assert errs[0]["error"]["type"] == "HypothesisViolation"
    # the command after the failing one still ran
    assert report["results"][-1]["verb"] == "grade"
    assert exit_code(report) == 2


def test_text_rendering_mentions_each_command():
    report = _run_fixture("session")
    text = emit_text(report).decode()
    for fr in report["results"]:
        assert fr["command"] in text
    assert "pdim" in text and "witness:" in text
    # wide tables keep their alignment rule line
    assert "-+-" in text


def _fake_report(fragments):
    return {
        "schema": SCHEMA,
        "tool": {"name": "hyperext", "version": "0"},
        "settings": {},
        "declarations": [],
        "results": fragments,
        "volatile": {"generated_at": "now", "wall_ms": 0},
    }


def _verdict_fragment(status, witness=None):
    return {
        "verb": "check",
        "command": f"check fake M; # {status}",
        "verdict": {
            "check": "self_ext_nonvanishing",
            "status": status,
            "witness": witness or {},
            "provenance": {"ring": {}, "caps": {}, "seed": "s"},
        },
    }


def test_exit_code_ladder():
    assert exit_code(_fake_report([_verdict_fragment("pass")])) == 0
    assert exit_code(_fake_report([_verdict_fragment("inapplicable")])) == 0
    assert exit_code(_fake_report([_verdict_fragment("inconclusive")])) == 2
    assert exit_code(_fake_report([
        _verdict_fragment("pass"),
        {"verb": "grade", "command": "grade M;", "error": {"type": "X", "message": "m"}},
    ])) == 2
    # fail dominates everything
    assert exit_code(_fake_report([
        _verdict_fragment("fail"),
        _verdict_fragment("inconclusive"),
    ])) == 1
    camp = {
        "verb": "campaign",
        "command": "campaign x trials 2 seed 0;",
        "campaign": {"campaign": "x", "counts": {"pass": 1, "fail": 1}, "verdicts": []},
    }
    assert exit_code(_fake_report([camp])) == 1


def test_fail_witnesses_named_and_replayable(q3):
    from hyperext.modules import cyclic_module

    m = cyclic_module(q3, ["x"])
    frag = _verdict_fragment("fail", witness={"modules": {"m": m.describe()}})
    frag["verdict"]["provenance"]["ring"] = q3.describe()
    report = _fake_report([frag])
    out = fail_witnesses(report)
    assert len(out) == 1
    name, verdict = out[0]
    assert name == "000_self_ext_nonvanishing.hxs"
    from hyperext.dsl import witness_script

    script = witness_script(verdict)
    reparsed = parse_script(script)
    assert reparsed.commands[-1].verb == "check"


# -- console entry point -----------------------------------------------------------------


def _write(tmp_path, text):
    f = tmp_path / "in.hxs"
    f.write_text(text)
    return str(f)


def test_cli_structured_run(tmp_path, capsysbinary):
    path = _write(tmp_path, "ring Q = poly(p=101, vars=[x]);\nmodule M over Q = coker [[x]];\ngrade M;\n")
    code = cli.main(["--input", path, "--format", "structured"])
    assert code == 0
    data = capsysbinary.readouterr().out
    report = parse_structured(data)
    assert report["results"][0]["value"] == 1


def test_cli_text_to_file(tmp_path, capsys):
    path = _write(tmp_path, "ring Q = poly(p=101, vars=[x]);\nmodule M over Q = coker [[x]];\npdim M;\n")
    out = tmp_path / "report.txt"
    code = cli.main(["--input", path, "--output", str(out)])
    assert code == 0
    assert "pdim" in out.read_text()


def test_cli_parse_error_exits_3(tmp_path, capsys):
    path = _write(tmp_path, "ring Q = poly(p=101, vars=[x])\n")
    code = cli.main(["--input", path])
    assert code == 3
    err = capsys.readouterr().err
    assert "expected ';'" in err and "hyperext:" in err


def test_cli_missing_file_exits_3(tmp_path, capsys):
    assert cli.main(["--input", str(tmp_path / "absent.hxs")]) == 3


def test_cli_usage_errors(capsys):
    assert cli.main(["--nope"]) == 3
    with_help = cli.main(["--help"])
    assert with_help == 0


def test_cli_settings_reach_execution(tmp_path, capsysbinary):
    path = _write(tmp_path, "campaign grade_drop trials 1;\n")
    code = cli.main(["--input", path, "--format", "structured", "--seed", "9", "--trials", "1"])
    assert code == 0
    report = parse_structured(capsysbinary.readouterr().out)
    assert report["settings"]["seed"] == 9
    assert report["results"][0]["campaign"]["seed"] == "9"


def test_cli_writes_fail_witnesses(tmp_path, capsysbinary, monkeypatch, q3):
    from hyperext.modules import cyclic_module

    m = cyclic_module(q3, ["x"])

    def fake_checker(mod, seed=None):
        return CheckVerdict(
            "self_ext_nonvanishing",
            "fail",
            {"modules": {"m": m.describe()}},
            {"ring": q3.describe(), "caps": {}, "seed": seed},
        )

    monkeypatch.setitem(CHECKERS, "self_ext_nonvanishing", fake_checker)
    path = _write(
        tmp_path,
        "ring Q = poly(p=101, vars=[x]);\nmodule M over Q = coker [[x]];\n"
        "check self_ext_nonvanishing M;\n",
    )
    wdir = tmp_path / "w"
    code = cli.main([
        "--input", path, "--format", "structured", "--witness-dir", str(wdir),
    ])
    assert code == 1
    files = sorted(wdir.iterdir())
    assert [f.name for f in files] == ["000_self_ext_nonvanishing.hxs"]
    replay = parse_script(files[0].read_text())
    assert replay.commands[-1].verb == "check"


def test_cli_debug_gb_traces(tmp_path, capsys):
    path = _write(tmp_path, "ring Q = poly(p=101, vars=[x, y]);\nmodule M over Q = coker [[x^2, x*y]];\ngrade M;\n")
    code = cli.main(["--input", path, "--debug-gb", "--output", str(tmp_path / "o.txt")])
    assert code == 0
    err = capsys.readouterr().err
    assert "gb:" in err
