"""Input language: ring and module declarations plus commands.

Statements end with ';' and '#' starts a comment. A module declaration is
row-major with one row per generator, so

    module M over Q = coker [[x^2, x*y, x*z]];

is a single generator with three relations (the columns), not three
generators. Optional `degrees [d1,...]` assigns generator degrees.

Declarations are resolved while parsing: rings and modules are constructed
on the spot so bad entries surface with script positions, and commands may
only name things declared above them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AlgebraError, ParseError
from .modules import PresentedModule, present_module
from .ring import RingContext, make_quotient, make_ring

ORDERS = ("degrevlex", "lex", "deglex")

CHECK_SIGNATURES = {
    "ext_rigidity": ("module", "module"),
    "self_ext_nonvanishing": ("module",),
    "tor_rigidity_theta": ("module", "module"),
    "lemma_ext_tor": ("module", "module"),
    "grade_drop": ("module",),
    "xi_chi_bridge": ("module", "module", "int"),
    "jothilingam": ("module", "module", "int"),
}


@dataclass
class Command:
    verb: str
    args: dict
    line: int
    col: int
    src: str


@dataclass
class SessionScript:
    rings: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)
    declarations: list = field(default_factory=list)  # (kind, name, src) in order


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def eof(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek_char(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _advance(self, n: int = 1):
        for _ in range(n):
            if self.pos >= len(self.text):
                return
            if self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def skip_ws(self):
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self._advance()
            elif c.isspace():
                self._advance()
            else:
                return

    def error(self, message: str, line=None, col=None):
        line = self.line if line is None else line
        col = self.col if col is None else col
        return ParseError(message, line, col)

    def match(self, literal: str) -> bool:
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self._advance(len(literal))
            return True
        return False

    def expect(self, literal: str):
        if not self.match(literal):
            raise self.error(f"expected {literal!r}")

    def ident(self, what: str = "name") -> str:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and (self.text[self.pos].isalpha() or self.text[self.pos] == "_"):
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self._advance()
        if start == self.pos:
            raise self.error(f"expected {what}")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek_char() == "-":
            self._advance()
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self._advance()
        chunk = self.text[start:self.pos]
        if not chunk or chunk == "-":
            raise self.error("expected an integer")
        return int(chunk)

    def raw_until(self, stops: str) -> str:
        """Verbatim text up to an unconsumed stop character; no nesting."""
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stops:
            if self.text[self.pos] == "#":
                raise self.error("comment inside an expression")
            self._advance()
        return self.text[start:self.pos].strip()

    def mark(self):
        self.skip_ws()
        return self.line, self.col, self.pos


def _int_list(cur: _Cursor):
    cur.expect("[")
    out = [cur.integer()]
    while cur.match(","):
        out.append(cur.integer())
    cur.expect("]")
    return out


def _parse_ring_decl(cur: _Cursor, script: SessionScript, start):
    name = cur.ident("ring name")
    if name in script.rings or name in script.modules:
        raise cur.error(f"name {name!r} already declared", *start[:2])
    cur.expect("=")
    if cur.match("poly"):
        cur.expect("(")
        cur.expect("p")
        cur.expect("=")
        p = cur.integer()
        cur.expect(",")
        cur.expect("vars")
        cur.expect("=")
        cur.expect("[")
        variables = [cur.ident("variable")]
        while cur.match(","):
            variables.append(cur.ident("variable"))
        cur.expect("]")
        order = "degrevlex"
        if cur.match(","):
            cur.expect("order")
            cur.expect("=")
            order = cur.ident("order name")
            if order not in ORDERS:
                raise cur.error(f"unknown order {order!r}; pick one of {', '.join(ORDERS)}")
        cur.expect(")")
        try:
            ring = make_ring(p, tuple(variables), order=order)
        except (AlgebraError, ValueError) as exc:
            raise cur.error(str(exc), *start[:2]) from None
    else:
        base_name = cur.ident("base ring name")
        base = script.rings.get(base_name)
        if base is None:
            raise cur.error(f"undeclared ring {base_name!r}")
        cur.expect("/")
        cur.expect("(")
        fmark = cur.mark()
        fsrc = cur.raw_until(")")
        cur.expect(")")
        try:
            ring = make_quotient(base, fsrc)
        except (AlgebraError, ValueError) as exc:
            raise cur.error(str(exc), fmark[0], fmark[1]) from None
    cur.expect(";")
    script.rings[name] = ring
    script.declarations.append(("ring", name, cur.text[start[2]:cur.pos].strip()))


def _parse_module_decl(cur: _Cursor, script: SessionScript, start):
    name = cur.ident("module name")
    if name in script.rings or name in script.modules:
        raise cur.error(f"name {name!r} already declared", *start[:2])
    cur.expect("over")
    ring_name = cur.ident("ring name")
    ring = script.rings.get(ring_name)
    if ring is None:
        raise cur.error(f"undeclared ring {ring_name!r}")
    cur.expect("=")
    cur.expect("coker")
    cur.expect("[")
    rows = []
    marks = []
    while True:
        cur.expect("[")
        row, rmarks = [], []
        if not cur.match("]"):
            while True:
                rmarks.append(cur.mark())
                entry = cur.raw_until(",]")
                if not entry:
                    raise cur.error("empty matrix entry")
                row.append(entry)
                if cur.match("]"):
                    break
                cur.expect(",")
        rows.append(row)
        marks.append(rmarks)
        if cur.match("]"):
            break
        cur.expect(",")
    degrees = None
    if cur.match("degrees"):
        degrees = _int_list(cur)
        if len(degrees) != len(rows):
            raise cur.error(
                f"{len(degrees)} degrees for {len(rows)} generators", *start[:2]
            )
    cur.expect(";")
    pr = ring.poly_ring
    parsed = []
    for row, rmarks in zip(rows, marks):
        prow = []
        for entry, mk in zip(row, rmarks):
            try:
                poly = pr.parse(entry)
            except ParseError as exc:
                col = exc.column if exc.line > 1 else mk[1] + exc.column - 1
                raise ParseError(exc.message, mk[0] + exc.line - 1, col) from None
            if not poly.is_homogeneous():
                raise cur.error(f"entry not homogeneous: {entry}", mk[0], mk[1])
            prow.append(poly)
        parsed.append(prow)
    try:
        module = present_module(
            ring, parsed, gen_degrees=tuple(degrees) if degrees else None
        )
    except AlgebraError as exc:
        raise cur.error(str(exc), *start[:2]) from None
    script.modules[name] = module
    script.declarations.append(("module", name, cur.text[start[2]:cur.pos].strip()))


def _module_arg(cur: _Cursor, script: SessionScript) -> str:
    name = cur.ident("module name")
    if name not in script.modules:
        raise cur.error(f"undeclared module {name!r}")
    return name


def _parse_command(cur: _Cursor, script: SessionScript, verb: str, start):
    args: dict = {}
    if verb == "resolve":
        args["module"] = _module_arg(cur, script)
        if cur.match("length"):
            args["length"] = cur.integer()
    elif verb in ("ext", "tor"):
        args["module"] = _module_arg(cur, script)
        args["other"] = _module_arg(cur, script)
        if cur.match("max"):
            args["max"] = cur.integer()
    elif verb in ("grade", "pdim", "emodule"):
        args["module"] = _module_arg(cur, script)
    elif verb == "theta":
        args["module"] = _module_arg(cur, script)
        args["other"] = _module_arg(cur, script)
    elif verb in ("chi", "xibar"):
        args["module"] = _module_arg(cur, script)
        args["other"] = _module_arg(cur, script)
        args["index"] = cur.integer()
    elif verb == "check":
        name = cur.ident("check name")
        sig = CHECK_SIGNATURES.get(name)
        if sig is None:
            known = ", ".join(sorted(CHECK_SIGNATURES))
            raise cur.error(f"unknown check {name!r}; known: {known}")
        values = []
        for kind in sig:
            values.append(_module_arg(cur, script) if kind == "module" else cur.integer())
        args["name"] = name
        args["args"] = values
    elif verb == "campaign":
        args["name"] = cur.ident("campaign name")
        while True:
            if cur.match("trials"):
                args["trials"] = cur.integer()
            elif cur.match("seed"):
                cur.skip_ws()
                if cur.peek_char().isdigit() or cur.peek_char() == "-":
                    args["seed"] = cur.integer()
                else:
                    args["seed"] = cur.ident("seed")
            else:
                break
    else:
        raise cur.error(f"unknown statement {verb!r}", *start[:2])
    cur.expect(";")
    script.commands.append(
        Command(verb, args, start[0], start[1], cur.text[start[2]:cur.pos].strip())
    )


def parse_script(text: str) -> SessionScript:
    """One pass over the script: declarations bind, commands queue."""
    cur = _Cursor(text)
    script = SessionScript()
    while not cur.eof():
        start = cur.mark()
        verb = cur.ident("statement")
        if verb == "ring":
            _parse_ring_decl(cur, script, start)
        elif verb == "module":
            _parse_module_decl(cur, script, start)
        else:
            _parse_command(cur, script, verb, start)
    return script


# -- witness replay -------------------------------------------------------------------


def _ring_statements(ring_desc: dict) -> list:
    vars_src = ", ".join(ring_desc["variables"])
    lines = [
        f"ring Q = poly(p={ring_desc['characteristic']}, vars=[{vars_src}], "
        f"order={ring_desc['order']});"
    ]
    if ring_desc.get("hypersurface"):
        lines.append(f"ring R = Q / ({ring_desc['hypersurface']});")
        return lines
    return lines


def _module_statement(name: str, ring_name: str, desc: dict) -> str:
    rows = desc["relations"]
    if rows and any(row for row in rows):
        body = ", ".join("[" + ", ".join(row) + "]" for row in rows)
    else:
        body = ", ".join("[]" for _ in desc["generator_degrees"]) or "[]"
    degs = ", ".join(str(d) for d in desc["generator_degrees"])
    return f"module {name} over {ring_name} = coker [{body}] degrees [{degs}];"


def witness_script(verdict_dict: dict) -> str | None:
    """Standalone script reproducing a failed check, or None if the verdict
    carries no module presentations."""
    witness = verdict_dict.get("witness", {})
    modules = witness.get("modules")
    if not modules:
        return None
    ring_desc = verdict_dict.get("provenance", {}).get("ring")
    if not ring_desc:
        return None
    lines = [f"# replay for {verdict_dict['check']}"]
    seed = verdict_dict.get("provenance", {}).get("seed")
    if seed is not None:
        lines.append(f"# seed {seed}")
    lines.extend(_ring_statements(ring_desc))
    ring_name = "R" if ring_desc.get("hypersurface") else "Q"
    for name in sorted(modules):
        lines.append(_module_statement(name, ring_name, modules[name]))
    check = verdict_dict["check"]
    sig = CHECK_SIGNATURES[check]
    parts = [f"check {check}"]
    names = sorted(modules)
    caps = verdict_dict.get("provenance", {}).get("caps", {})
    mod_iter = iter(names if len(names) > 1 else names * 2)
    for kind in sig:
        if kind == "module":
            parts.append(next(mod_iter))
        else:
            parts.append(str(caps.get("i", caps.get("n", 1))))
    lines.append(" ".join(parts) + ";")
    return "\n".join(lines) + "\n"
