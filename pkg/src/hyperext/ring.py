"""Ring contexts: graded polynomial rings and their hypersurface quotients.

A context is either the regular ring Q = F_p[x_1..x_n] or R = Q/(f) for a
homogeneous f of degree >= 2.  Quotient arithmetic is never special-cased in
the Groebner layer; a context just knows which f*e_pos relation vectors to
append to any submodule computation over its free modules.
"""

from __future__ import annotations

from .errors import HomogeneityError
from .field import DEFAULT_PRIME
from .orders import ModuleOrder
from .poly import Poly, PolyRing


class RingContext:
    __slots__ = ("poly_ring", "hypersurface")

    def __init__(self, poly_ring: PolyRing, hypersurface: Poly | None = None):
        self.poly_ring = poly_ring
        if hypersurface is not None:
            if hypersurface.ring != poly_ring:
                raise ValueError("hypersurface polynomial from a different ring")
            if hypersurface.is_zero():
                raise ValueError("hypersurface polynomial must be nonzero")
            if not hypersurface.is_homogeneous():
                raise HomogeneityError("hypersurface polynomial must be homogeneous")
            if hypersurface.degree() < 2:
                raise ValueError("hypersurface polynomial must have degree >= 2")
        self.hypersurface = hypersurface

    # -- basic data ---------------------------------------------------------

    @property
    def is_quotient(self) -> bool:
        return self.hypersurface is not None

    @property
    def role(self) -> str:
        return "hypersurface" if self.is_quotient else "regular"

    @property
    def p(self) -> int:
        return self.poly_ring.field.p

    @property
    def nvars(self) -> int:
        return self.poly_ring.nvars

    @property
    def variables(self):
        return self.poly_ring.variables

    @property
    def order(self):
        return self.poly_ring.order

    @property
    def dim(self) -> int:
        return self.nvars - (1 if self.is_quotient else 0)

    def f_degree(self) -> int:
        return self.hypersurface.degree() if self.is_quotient else 0

    def module_key(self):
        """Term-over-position key used for all plain submodule bases."""
        return ModuleOrder(self.order, "top").key

    def ambient(self) -> "RingContext":
        """The underlying polynomial ring context (self when already regular)."""
        return self if not self.is_quotient else RingContext(self.poly_ring, None)

    # -- identity -------------------------------------------------------------

    def _signature(self):
        f = self.hypersurface
        fsig = None if f is None else tuple(sorted(f.terms.items()))
        return (self.poly_ring, fsig)

    def __eq__(self, other):
        return isinstance(other, RingContext) and self._signature() == other._signature()

    def __hash__(self):
        return hash(self._signature())

    def __repr__(self):
        base = f"F_{self.p}[{', '.join(self.variables)}]"
        if self.is_quotient:
            return f"<{base} / ({self.hypersurface.render()})>"
        return f"<{base}>"

    def describe(self) -> dict:
        """Stable dictionary for reports and witnesses."""
        out = {
            "characteristic": self.p,
            "variables": list(self.variables),
            "order": self.order.kind,
            "role": self.role,
        }
        if self.is_quotient:
            out["hypersurface"] = self.hypersurface.render()
        return out

    # -- quotient relation vectors -------------------------------------------

    def quotient_relation_vecs(self, rank: int):
        """The vectors f*e_pos over a rank-r free module (empty when regular)."""
        if not self.is_quotient:
            return []
        fterms = self.hypersurface.terms
        return [{(pos, e): c for e, c in fterms.items()} for pos in range(rank)]

    def reduce_poly(self, g: Poly) -> Poly:
        """Canonical representative mod (f); the identity for regular rings."""
        if not self.is_quotient or g.is_zero():
            return g
        f = self.hypersurface
        key = self.poly_ring.order.key
        fe, fc = f.leading_term()
        p = self.p
        fcinv = pow(fc, -1, p)
        work = dict(g.terms)
        out: dict = {}
        while work:
            e = max(work, key=key)
            c = work.pop(e)
            if all(x >= y for x, y in zip(e, fe)):
                mono = tuple(x - y for x, y in zip(e, fe))
                scale = c * fcinv % p
                for e2, c2 in f.terms.items():
                    if e2 == fe:
                        continue  # cancels the popped term exactly
                    t = tuple(x + y for x, y in zip(e2, mono))
                    v = (work.get(t, 0) - scale * c2) % p
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
            else:
                out[e] = c
        return Poly(self.poly_ring, out)


def make_ring(p: int = DEFAULT_PRIME, variables=("x", "y", "z"), order="degrevlex") -> RingContext:
    return RingContext(PolyRing(p, variables, order))


def make_quotient(base: RingContext, f) -> RingContext:
    if base.is_quotient:
        raise ValueError("iterated quotients are not supported")
    if isinstance(f, str):
        f = base.poly_ring.parse(f)
    return RingContext(base.poly_ring, f)
