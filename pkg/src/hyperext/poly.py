"""Multivariate polynomials over a prime field, with exact text round-trips.

Terms live in a dict mapping dense exponent tuples to nonzero canonical
residues; no zero coefficient and no duplicate monomial is ever stored.
Polynomials are immutable by convention: every operation builds a new one.
Rendering sorts terms descending under the ring's active order, so equal
polynomials always print identically and parse back bit-exactly.
"""

from __future__ import annotations

import re

from .errors import ParseError, RingMismatchError
from .field import DEFAULT_PRIME, PrimeField
from .orders import MonomialOrder

MAX_VARIABLES = 8
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class PolyRing:
    """F_p[x_1, ..., x_n] together with its active monomial order."""

    __slots__ = ("field", "variables", "order", "nvars", "_var_index")

    def __init__(self, p: int = DEFAULT_PRIME, variables=("x", "y", "z"), order="degrevlex"):
        self.field = PrimeField(p)
        variables = tuple(variables)
        if not 1 <= len(variables) <= MAX_VARIABLES:
            raise ValueError(f"need between 1 and {MAX_VARIABLES} variables, got {len(variables)}")
        for v in variables:
            if not _IDENT_RE.fullmatch(v):
                raise ValueError(f"bad variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        self.variables = variables
        self.order = order if isinstance(order, MonomialOrder) else MonomialOrder(order)
        self.nvars = len(variables)
        self._var_index = {v: i for i, v in enumerate(variables)}

    @property
    def p(self) -> int:
        return self.field.p

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field.p == other.field.p
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field.p, self.variables, self.order))

    def __repr__(self):
        return f"PolyRing(p={self.field.p}, variables={self.variables}, order={self.order.kind!r})"

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: int) -> "Poly":
        c %= self.field.p
        return Poly(self, {} if c == 0 else {(0,) * self.nvars: c})

    def var(self, name: str) -> "Poly":
        if name not in self._var_index:
            raise ValueError(f"unknown variable {name!r}")
        exps = tuple(1 if i == self._var_index[name] else 0 for i in range(self.nvars))
        return Poly(self, {exps: 1})

    def gens(self):
        return tuple(self.var(v) for v in self.variables)

    def monomial(self, exps, coeff: int = 1) -> "Poly":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps}")
        coeff %= self.field.p
        return Poly(self, {exps: coeff} if coeff else {})

    def from_terms(self, terms) -> "Poly":
        out: dict = {}
        p = self.field.p
        for exps, c in dict(terms).items():
            exps = tuple(exps)
            if len(exps) != self.nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            c %= p
            if c:
                out[exps] = c
        return Poly(self, out)

    def parse(self, text: str) -> "Poly":
        return _parse_poly(self, text)


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def degree(self):
        """Common total degree when homogeneous and nonzero, else None."""
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_coeff(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials from different rings")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        p = self.ring.field.p
        out = dict(self.terms)
        for exps, c in other.terms.items():
            v = (out.get(exps, 0) + c) % p
            if v:
                out[exps] = v
            else:
                out.pop(exps, None)
        return Poly(self.ring, out)

    def __neg__(self) -> "Poly":
        p = self.ring.field.p
        return Poly(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        p = self.ring.field.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = (out.get(e, 0) + c1 * c2) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    def scale(self, c: int) -> "Poly":
        p = self.ring.field.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, {e: (c * v) % p for e, v in self.terms.items()})

    def shift(self, exps) -> "Poly":
        """Multiply by the monomial with the given exponent vector."""
        exps = tuple(exps)
        return Poly(self.ring, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    # -- order-dependent views ----------------------------------------------

    def sorted_terms(self):
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self):
        """(exponents, coefficient) of the largest monomial; None for zero."""
        if not self.terms:
            return None
        key = self.ring.order.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def render(self) -> str:
        return _render_poly(self)

    def __repr__(self):
        return f"<{self.render()}>"


# -- text form ---------------------------------------------------------------


def _render_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    chunks = []
    for exps, coeff in f.sorted_terms():
        factors = []
        for name, e in zip(f.ring.variables, exps):
            if e == 1:
                factors.append(name)
            elif e >= 2:
                factors.append(f"{name}^{e}")
        if not factors:
            chunks.append(str(coeff))
        elif coeff == 1:
            chunks.append("*".join(factors))
        else:
            chunks.append(f"{coeff}*" + "*".join(factors))
    return " + ".join(chunks)


_POLY_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^]))")


def _tokenize_poly(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _POLY_TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            col = len(text) - len(stripped) + 1
            raise ParseError(f"unexpected character {stripped[0]!r} in polynomial", 1, col)
        if m.lastgroup == "int":
            out.append(("int", int(m.group("int")), m.start("int") + 1))
        elif m.lastgroup == "ident":
            out.append(("ident", m.group("ident"), m.start("ident") + 1))
        else:
            out.append((m.group("op"), m.group("op"), m.start("op") + 1))
        pos = m.end()
    out.append(("end", None, len(text) + 1))
    return out


def _parse_poly(ring: PolyRing, text: str) -> Poly:
    """Sum of signed terms; ``*`` optional between coefficient and monomial."""
    toks = _tokenize_poly(text)
    i = 0

    def peek():
        return toks[i]

    def advance():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def parse_varpow():
        kind, val, col = advance()
        if kind != "ident":
            raise ParseError("expected a variable name", 1, col)
        if val not in ring._var_index:
            raise ParseError(f"unknown variable {val!r}", 1, col)
        e = 1
        if peek()[0] == "^":
            advance()
            kind2, val2, col2 = advance()
            if kind2 != "int":
                raise ParseError("expected an integer exponent after '^'", 1, col2)
            e = val2
        return ring._var_index[val], e

    def parse_term():
        sign = 1
        while peek()[0] in ("+", "-"):
            if advance()[0] == "-":
                sign = -sign
        coeff = 1
        saw_coeff = False
        if peek()[0] == "int":
            coeff = advance()[1]
            saw_coeff = True
        exps = [0] * ring.nvars
        saw_var = False
        if peek()[0] == "ident" or (saw_coeff and peek()[0] == "*"):
            if peek()[0] == "*":
                advance()
            idx, e = parse_varpow()
            exps[idx] += e
            saw_var = True
            while peek()[0] == "*":
                advance()
                idx, e = parse_varpow()
                exps[idx] += e
        if not saw_coeff and not saw_var:
            kind, _, col = peek()
            raise ParseError(f"expected a term, found {kind!r}", 1, col)
        return ring.monomial(exps, sign * coeff)

    total = ring.zero()
    total = total + parse_term()
    while peek()[0] in ("+", "-"):
        total = total + parse_term()
    kind, _, col = peek()
    if kind != "end":
        raise ParseError(f"trailing {kind!r} after polynomial", 1, col)
    return total
