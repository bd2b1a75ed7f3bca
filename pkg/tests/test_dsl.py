"""Session script parsing: grammar, diagnostics, and witness replay."""

import random
import string

import pytest

from hyperext.dsl import SessionScript, parse_script, witness_script
from hyperext.errors import ParseError
from hyperext.modules import cyclic_module
from hyperext.ring import make_quotient, make_ring

FULL = """
# a small session
ring Q = poly(p=32003, vars=[x, y, z]);
ring R = Q / (x*y);
module M over Q = coker [[x^2, x*y, x*z]];
module K over R = coker [[x], [y]] degrees [1, 1];
resolve M length 4;
ext M M max 2;
grade M;
theta K K;
check ext_rigidity M M;
campaign grade_drop trials 3 seed 7;
"""


def test_full_session_parses():
    script = parse_script(FULL)
    assert isinstance(script, SessionScript)
    assert set(script.rings) == {"Q", "R"}
    assert set(script.modules) == {"M", "K"}
    verbs = [c.verb for c in script.commands]
    assert verbs == ["resolve", "ext", "grade", "theta", "check", "campaign"]
    assert [kind for kind, _, _ in script.declarations] == ["ring", "ring", "module", "module"]


def test_rows_are_generators():
    script = parse_script(
        "ring Q = poly(p=101, vars=[x, y]);\n"
        "module A over Q = coker [[x^2, y^2]];\n"
        "module B over Q = coker [[x], [y]] degrees [1, 1];\n"
    )
    a, b = script.modules["A"], script.modules["B"]
    assert a.n_gens == 1 and a.n_relations == 2
    assert b.n_gens == 2 and b.n_relations == 1


def test_module_commands_carry_args():
    script = parse_script(FULL)
    resolve = script.commands[0]
    assert resolve.args == {"module": "M", "length": 4}
    extc = script.commands[1]
    assert extc.args == {"module": "M", "other": "M", "max": 2}
    checkc = script.commands[4]
    assert checkc.args == {"name": "ext_rigidity", "args": ["M", "M"]}
    camp = script.commands[5]
    assert camp.args == {"name": "grade_drop", "trials": 3, "seed": 7}


def test_comments_and_whitespace():
    script = parse_script(
        "ring Q = poly(p=101, vars=[x]);  # inline comment\n"
        "\n#   whole line\n"
        "module M over Q = coker [[x^2]];\n"
        "   grade M;  \n"
    )
    assert script.commands[0].verb == "grade"
    # module names are required;rings are not implicitly modules
    _expect_error(
        "ring Q = poly(p=101, vars=[x]);\ngrade Q;", "undeclared module", 2, 8
    )


def _expect_error(src, fragment, line=None, col=None):
    with pytest.raises(ParseError) as err:
        parse_script(src)
    e = err.value
    assert fragment in e.message, e
    if line is not None:
        assert e.line == line, e
    if col is not None:
        assert e.column == col, e


def test_diagnostics_carry_positions():
    _expect_error("frobnicate;", "unknown statement", 1, 1)
    _expect_error("ring Q = poly(p=32003, vars=[x, y])", "expected ';'", 1, 36)
    _expect_error(
        "ring Q = poly(p=32003, vars=[x]);\nmodule M over Q = coker [[x + x^2]];",
        "not homogeneous", 2, 27,
    )
    _expect_error(
        "ring Q = poly(p=32003, vars=[x]);\ngrade Z;",
        "undeclared module", 2, 8,
    )
    _expect_error(
        "ring Q = poly(p=32003, vars=[x]);\ncheck bogus Z;",
        "unknown check", 2, 12,
    )
    _expect_error("ring Q = poly(p=32003, vars=[x], order=fancy);", "unknown order", 1, 45)
    _expect_error("ring Q = poly(p=32004, vars=[x]);", "not prime", 1, 1)


def test_degrees_count_must_match():
    _expect_error(
        "ring Q = poly(p=101, vars=[x, y]);\n"
        "module M over Q = coker [[x], [y]] degrees [0];",
        "degrees", 2,
    )


def test_entry_position_points_at_offender():
    src = (
        "ring Q = poly(p=101, vars=[x, y]);\n"
        "module M over Q = coker [[x, y***2]];\n"
    )
    with pytest.raises(ParseError) as err:
        parse_script(src)
    assert err.value.line == 2
    assert err.value.column >= 30  # inside the second entry


def test_quotient_needs_known_base():
    _expect_error("ring R = Z / (x);", "undeclared ring", 1, 11)


def test_campaign_seed_accepts_word():
    script = parse_script("campaign jothilingam trials 2 seed alpha;")
    assert script.commands[0].args["seed"] == "alpha"


def test_token_soup_never_escapes_parse_error():
    rng = random.Random("soup")
    vocab = [
        "ring", "module", "over", "coker", "degrees", "check", "campaign",
        "poly", "vars", "order", "trials", "seed", "max", "length",
        "Q", "M", "=", "/", "(", ")", "[", "]", ",", ";", "x", "y",
        "32003", "0", "7", "^", "*", "+", "-", "#",
    ]
    for _ in range(300):
        n = rng.randrange(1, 14)
        soup = " ".join(rng.choice(vocab) for _ in range(n))
        try:
            parse_script(soup)
        except ParseError:
            pass
    junk = "".join(rng.choice(string.printable) for _ in range(50))
    try:
        parse_script(junk)
    except ParseError:
        pass


def test_witness_script_round_trip():
    r3 = make_quotient(make_ring(32003, ("x", "y", "z")), "x*y")
    m = cyclic_module(r3, ["z"])
    verdict = {
        "check": "self_ext_nonvanishing",
        "status": "fail",
        "witness": {"modules": {"m": m.describe()}},
        "provenance": {"ring": r3.describe(), "seed": "unit|1", "caps": {}},
    }
    src = witness_script(verdict)
    assert src is not None
    assert "# replay for self_ext_nonvanishing" in src
    script = parse_script(src)
    assert script.commands[-1].verb == "check"
    (rebuilt,) = script.modules.values()
    assert rebuilt.describe() == m.describe()


def test_witness_script_with_two_modules_and_index():
    q2 = make_ring(101, ("x", "y"))
    a = cyclic_module(q2, ["x"])
    b = cyclic_module(q2, ["y"])
    verdict = {
        "check": "xi_chi_bridge",
        "status": "fail",
        "witness": {"modules": {"m": a.describe(), "n": b.describe()}},
        "provenance": {"ring": q2.describe(), "seed": "unit|2", "caps": {"i": 1}},
    }
    src = witness_script(verdict)
    script = parse_script(src)
    assert script.commands[-1].args == {"name": "xi_chi_bridge", "args": ["m", "n", 1]}
    assert set(script.modules) == {"m", "n"}


def test_witness_script_requires_modules():
    verdict = {
        "check": "grade_drop",
        "status": "pass",
        "witness": {"grade_hypersurface": 1},
        "provenance": {"ring": {}, "seed": None, "caps": {}},
    }
    assert witness_script(verdict) is None
