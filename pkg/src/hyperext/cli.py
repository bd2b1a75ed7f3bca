"""Command-line entry point.

Reads a script (file or stdin), runs it, and writes one report. Exit codes:
0 every verdict passed or was inapplicable, 1 at least one fail, 2 at least
one inconclusive verdict or engine error, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .dsl import parse_script, witness_script
from .errors import AlgebraError, ParseError
from .groebner import set_trace
from .report import DEFAULT_SETTINGS, emit_report, execute_script, exit_code, fail_witnesses


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperext",
        description="Graded Ext/Tor computations and vanishing-theorem checks "
        "over polynomial rings and hypersurface quotients.",
    )
    parser.add_argument("--input", metavar="FILE",
                        help="script file; stdin when omitted")
    parser.add_argument("--format", choices=("text", "structured"),
                        default=DEFAULT_SETTINGS["format"],
                        help="report format (default %(default)s)")
    parser.add_argument("--seed", type=int, default=DEFAULT_SETTINGS["seed"],
                        help="seed for checks and campaigns without their own "
                        "(default %(default)s)")
    parser.add_argument("--degree-cap", type=int, metavar="N",
                        default=DEFAULT_SETTINGS["degree_cap"],
                        help="largest internal degree before basis completion "
                        "refuses (default %(default)s)")
    parser.add_argument("--length-cap", type=int, metavar="N",
                        default=DEFAULT_SETTINGS["length_cap"],
                        help="default resolution length for `resolve` "
                        "(default %(default)s)")
    parser.add_argument("--trials", type=int, default=DEFAULT_SETTINGS["trials"],
                        help="default campaign trial count (default %(default)s)")
    parser.add_argument("--output", metavar="FILE",
                        help="write the report here instead of stdout")
    parser.add_argument("--witness-dir", metavar="DIR", default="witnesses",
                        help="directory for replay scripts of failed checks "
                        "(default %(default)s)")
    parser.add_argument("--debug-gb", action="store_true",
                        help="stream basis-completion events to stderr")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        opts = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed the diagnostic (or the help text)
        return 0 if exc.code == 0 else 3

    if opts.input:
        try:
            text = Path(opts.input).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"hyperext: cannot read {opts.input}: {exc}", file=sys.stderr)
            return 3
    else:
        text = sys.stdin.read()

    try:
        script = parse_script(text)
    except ParseError as exc:
        print(f"hyperext: {exc}", file=sys.stderr)
        return 3
    except AlgebraError as exc:
        print(f"hyperext: bad input: {exc}", file=sys.stderr)
        return 3

    if opts.debug_gb:
        set_trace(lambda line: print(f"gb: {line}", file=sys.stderr))
    try:
        report = execute_script(script, {
            "degree_cap": opts.degree_cap,
            "format": opts.format,
            "length_cap": opts.length_cap,
            "seed": opts.seed,
            "trials": opts.trials,
        })
    finally:
        if opts.debug_gb:
            set_trace(None)

    payload = emit_report(report, opts.format)
    if opts.output:
        Path(opts.output).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()

    witnesses = fail_witnesses(report)
    if witnesses:
        wdir = Path(opts.witness_dir)
        wdir.mkdir(parents=True, exist_ok=True)
        for fname, verdict in witnesses:
            replay = witness_script(verdict)
            if replay:
                (wdir / fname).write_text(replay, encoding="utf-8")
        print(f"hyperext: {len(witnesses)} fail witness(es) under {wdir}",
              file=sys.stderr)

    return exit_code(report)


if __name__ == "__main__":
    raise SystemExit(main())
