"""Session execution and report emission.

A report is a plain dict: schema tag, tool version, settings, declaration
echoes, one result fragment per command, and a volatile section holding
timestamps and wall times. Everything outside `volatile` is byte-stable for
identical input and seed; the structured emitter is canonical JSON so the
same report always serializes to the same bytes.
"""

from __future__ import annotations

import json
import time
from datetime import datetime, timezone

from . import __version__
from .errors import AlgebraError
from .invariants import (
    DEFAULT_DEGREE_CAP,
    chi,
    e_module,
    ext,
    grade,
    module_summary,
    pdim,
    theta,
    tor,
    xi_bar,
)
from .modules import INFINITE, PresentedModule
from .resolution import minimal_resolution
from .rigidity import (
    CAMPAIGNS,
    check_ext_rigidity,
    check_grade_drop,
    check_jothilingam,
    check_lemma_ext_tor,
    check_self_ext_nonvanishing,
    check_tor_rigidity_theta,
    check_xi_chi_bridge,
    run_campaign,
)

SCHEMA = "hyperext-report/1"

DEFAULT_SETTINGS = {
    "degree_cap": DEFAULT_DEGREE_CAP,
    "format": "text",
    "length_cap": 8,
    "seed": 0,
    "trials": 200,
}

CAMPAIGN_ALIASES = {"rigidity": "ext_rigidity", "self_ext": "self_ext_nonvanishing"}

CHECKERS = {
    "ext_rigidity": check_ext_rigidity,
    "self_ext_nonvanishing": check_self_ext_nonvanishing,
    "tor_rigidity_theta": check_tor_rigidity_theta,
    "lemma_ext_tor": check_lemma_ext_tor,
    "grade_drop": check_grade_drop,
    "xi_chi_bridge": check_xi_chi_bridge,
    "jothilingam": check_jothilingam,
}


def _enc(value):
    if value is INFINITE:
        return "infinite"
    return value


def _module_cells(m: PresentedModule) -> dict:
    """Small deterministic summary of one computed module."""
    if m.is_zero():
        return {"gens": 0, "length": 0, "min_degree": None, "hilbert": {}}
    lo = min(min(m.gen_degrees), 0)
    hi = max(m.gen_degrees) + 6
    return {
        "gens": m.n_gens,
        "length": _enc(m.length()),
        "min_degree": m.min_nonzero_degree(),
        "hilbert": {str(d): v for d, v in m.hf_range(lo, hi).items() if v},
    }


def _run_resolve(cmd, script, settings):
    m = script.modules[cmd.args["module"]]
    length = cmd.args.get("length", settings["length_cap"])
    res = minimal_resolution(m, length, settings["degree_cap"])
    fp = res.finite_pdim()
    betti = {f"{i},{d}": c for (i, d), c in sorted(res.graded_betti().items())}
    return {
        "length_requested": length,
        "computed_length": res.computed_length(),
        "pdim": fp if fp is not None else f"not reached within {length}",
        "betti": betti,
    }


def _run_ext_tor(cmd, script, settings):
    fn = ext if cmd.verb == "ext" else tor
    m = script.modules[cmd.args["module"]]
    n = script.modules[cmd.args["other"]]
    top = cmd.args.get("max", 4)
    table = []
    for i in range(top + 1):
        cells = _module_cells(fn(m, n, i, settings["degree_cap"]))
        cells["i"] = i
        table.append(cells)
    return {"max": top, "table": table}


def _run_unary(cmd, script, settings):
    m = script.modules[cmd.args["module"]]
    cap = settings["degree_cap"]
    if cmd.verb == "grade":
        return {"value": _enc(grade(m, cap))}
    if cmd.verb == "pdim":
        return {"value": _enc(pdim(m, degree_cap=cap))}
    return {"emodule": module_summary(e_module(m, cap), cap)}


def _run_pairing(cmd, script, settings):
    m = script.modules[cmd.args["module"]]
    n = script.modules[cmd.args["other"]]
    if cmd.verb == "theta":
        return {"value": theta(m, n, settings["degree_cap"])}
    fn = chi if cmd.verb == "chi" else xi_bar
    return {"index": cmd.args["index"],
            "value": fn(m, n, cmd.args["index"], settings["degree_cap"])}


def _run_check(cmd, script, settings):
    checker = CHECKERS[cmd.args["name"]]
    args = [script.modules[a] if isinstance(a, str) else a for a in cmd.args["args"]]
    verdict = checker(*args, seed=settings["seed"])
    return {"verdict": verdict.as_dict()}


def _run_campaign_cmd(cmd, script, settings):
    name = CAMPAIGN_ALIASES.get(cmd.args["name"], cmd.args["name"])
    if name not in CAMPAIGNS:
        known = ", ".join(sorted(set(CAMPAIGNS) | set(CAMPAIGN_ALIASES)))
        raise AlgebraError(f"unknown campaign {cmd.args['name']!r}; known: {known}")
    trials = cmd.args.get("trials", settings["trials"])
    seed = cmd.args.get("seed", settings["seed"])
    return {"campaign": run_campaign(name, trials, seed)}


_DISPATCH = {
    "resolve": _run_resolve,
    "ext": _run_ext_tor,
    "tor": _run_ext_tor,
    "grade": _run_unary,
    "pdim": _run_unary,
    "emodule": _run_unary,
    "theta": _run_pairing,
    "chi": _run_pairing,
    "xibar": _run_pairing,
    "check": _run_check,
    "campaign": _run_campaign_cmd,
}


def execute_script(script, settings: dict | None = None) -> dict:
    """Run every command and assemble the report dict."""
    merged = dict(DEFAULT_SETTINGS)
    merged.update(settings or {})
    results = []
    wall_ms = []
    for cmd in script.commands:
        t0 = time.perf_counter()
        fragment = {"command": cmd.src, "verb": cmd.verb}
        try:
            fragment.update(_DISPATCH[cmd.verb](cmd, script, merged))
        except AlgebraError as exc:
            fragment["error"] = {"type": type(exc).__name__, "message": str(exc)}
        results.append(fragment)
        wall_ms.append(int((time.perf_counter() - t0) * 1000))
    return {
        "schema": SCHEMA,
        "tool": {"name": "hyperext", "version": __version__},
        "settings": {k: merged[k] for k in sorted(merged)},
        "declarations": [
            {"kind": kind, "name": name, "source": src}
            for kind, name, src in script.declarations
        ],
        "results": results,
        "volatile": {
            "generated_at": datetime.now(timezone.utc).isoformat(),
            "wall_ms": wall_ms,
        },
    }


def exit_code(report: dict) -> int:
    """0 all pass or inapplicable, 1 any fail, 2 inconclusive or engine error."""
    any_fail = False
    any_open = False
    for fragment in report["results"]:
        statuses = []
        if "verdict" in fragment:
            statuses.append(fragment["verdict"]["status"])
        if "campaign" in fragment:
            counts = fragment["campaign"]["counts"]
            statuses.extend(["fail"] * bool(counts.get("fail")))
            statuses.extend(["inconclusive"] * bool(counts.get("inconclusive")))
        if "error" in fragment:
            statuses.append("inconclusive")
        any_fail = any_fail or "fail" in statuses
        any_open = any_open or "inconclusive" in statuses
    if any_fail:
        return 1
    return 2 if any_open else 0


def fail_witnesses(report: dict):
    """(filename, verdict dict) for every fail in the report, stable order."""
    out = []
    for idx, fragment in enumerate(report["results"]):
        if "verdict" in fragment and fragment["verdict"]["status"] == "fail":
            out.append((f"{idx:03d}_{fragment['verdict']['check']}.hxs",
                        fragment["verdict"]))
        if "campaign" in fragment:
            for t, v in enumerate(fragment["campaign"]["verdicts"]):
                if v["status"] == "fail":
                    out.append((f"{idx:03d}_{v['check']}_t{t:03d}.hxs", v))
    return out


# -- emitters ------------------------------------------------------------------------


def emit_structured(report: dict) -> bytes:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return (json.dumps(report, sort_keys=True, indent=1, ensure_ascii=False)
            + "\n").encode("utf-8")


def parse_structured(data: bytes) -> dict:
    return json.loads(data.decode("utf-8"))


def _grid(rows, headers) -> list:
    widths = [len(h) for h in headers]
    text_rows = [[str(c) for c in row] for row in rows]
    for row in text_rows:
        for j, cell in enumerate(row):
            widths[j] = max(widths[j], len(cell))
    def line(cells):
        return "  " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(headers), "  " + "-+-".join("-" * w for w in widths)]
    out.extend(line(r) for r in text_rows)
    return out


def _text_fragment(fragment: dict) -> list:
    lines = []
    if "error" in fragment:
        err = fragment["error"]
        lines.append(f"  error ({err['type']}): {err['message']}")
        return lines
    verb = fragment["verb"]
    if verb == "resolve":
        lines.append(f"  pdim: {fragment['pdim']}")
        by_step: dict = {}
        for key, count in fragment["betti"].items():
            i, d = (int(x) for x in key.split(","))
            by_step.setdefault(i, {})[d] = count
        rows = []
        for i in sorted(by_step):
            degs = by_step[i]
            rows.append([i, sum(degs.values()),
                         " ".join(f"{d}:{degs[d]}" for d in sorted(degs))])
        lines.extend(_grid(rows, ["step", "rank", "degrees"]))
    elif verb in ("ext", "tor"):
        rows = []
        for cells in fragment["table"]:
            hf = " ".join(f"{d}:{v}" for d, v in
                          sorted(cells["hilbert"].items(), key=lambda kv: int(kv[0])))
            md = cells["min_degree"]
            rows.append([cells["i"], cells["length"],
                         "-" if md is None else md, hf or "-"])
        lines.extend(_grid(rows, ["i", "length", "min deg", "hilbert"]))
    elif verb in ("grade", "pdim", "theta"):
        lines.append(f"  value: {fragment['value']}")
    elif verb in ("chi", "xibar"):
        lines.append(f"  index: {fragment['index']}  value: {fragment['value']}")
    elif verb == "emodule":
        summary = fragment["emodule"]
        keep = {k: summary[k] for k in ("grade", "pdim", "depth", "dim", "length")
                if k in summary}
        lines.append(f"  emodule: {json.dumps(keep, sort_keys=True)}")
        lines.append(f"  generators: {summary['module']['generator_degrees']}")
    elif verb == "check":
        v = fragment["verdict"]
        lines.append(f"  {v['check']}: {v['status']}")
        lines.append(f"  witness: {json.dumps(v['witness'], sort_keys=True)}")
    elif verb == "campaign":
        c = fragment["campaign"]
        lines.append(
            f"  {c['campaign']}: trials={c['trials']} "
            + " ".join(f"{k}={c['counts'][k]}" for k in sorted(c["counts"]))
            + f" genuine={c['genuine_passes']}"
        )
        for t, v in enumerate(c["verdicts"]):
            if v["status"] == "fail":
                lines.append(f"  trial {t}: FAIL {json.dumps(v['witness'], sort_keys=True)}")
    return lines


def emit_text(report: dict) -> bytes:
    lines = [
        f"hyperext report (schema {report['schema']})",
        f"tool: {report['tool']['name']} {report['tool']['version']}",
        "settings: " + " ".join(f"{k}={v}" for k, v in report["settings"].items()),
        "",
    ]
    if report["declarations"]:
        lines.append("declarations:")
        lines.extend(f"  {d['source']}" for d in report["declarations"])
        lines.append("")
    for idx, fragment in enumerate(report["results"], start=1):
        lines.append(f"[{idx}] {fragment['command']}")
        lines.extend(_text_fragment(fragment))
        lines.append("")
    vol = report["volatile"]
    lines.append("volatile:")
    lines.append(f"  generated_at: {vol['generated_at']}")
    lines.append(f"  wall_ms: {vol['wall_ms']}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit_report(report: dict, fmt: str) -> bytes:
    if fmt == "structured":
        return emit_structured(report)
    if fmt == "text":
        return emit_text(report)
    raise AlgebraError(f"unknown report format {fmt!r}")
