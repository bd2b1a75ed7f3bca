"""Monomial orders and their extensions to free-module terms.

A monomial is a dense exponent tuple.  Orders are exposed as key functions:
``key(m1) > key(m2)`` exactly when m1 is the larger monomial, so ``max`` picks
leading terms.  Module terms are (position, exponents) pairs; the extension
strategy decides whether position or monomial is compared first, and an
optional block split puts a leading group of positions above everything else
(that split is what elimination-style kernel computations rely on).
"""

from __future__ import annotations

from dataclasses import dataclass

ORDER_NAMES = ("degrevlex", "lex", "deglex")


def _key_degrevlex(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _key_lex(exps):
    return exps


def _key_deglex(exps):
    return (sum(exps), exps)


_KEYS = {"degrevlex": _key_degrevlex, "lex": _key_lex, "deglex": _key_deglex}


@dataclass(frozen=True)
class MonomialOrder:
    """A global monomial order on exponent tuples."""

    kind: str = "degrevlex"

    def __post_init__(self):
        if self.kind not in ORDER_NAMES:
            raise ValueError(f"unknown order {self.kind!r}; expected one of {ORDER_NAMES}")

    def key(self, exps):
        return _KEYS[self.kind](exps)

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def sort_terms(self, exps_iterable):
        """Exponent tuples sorted descending (leading monomial first)."""
        return sorted(exps_iterable, key=self.key, reverse=True)


@dataclass(frozen=True)
class ModuleOrder:
    """Order on (position, exponents) terms of a free module.

    strategy "top" compares the monomial first and breaks ties by position
    (lower position wins); "pot" compares the position first.  Positions
    below ``split`` form a dominant block: any term there beats any term in
    the rest, which turns a kernel computation into an elimination problem.
    """

    base: MonomialOrder
    strategy: str = "top"
    split: int = 0

    def __post_init__(self):
        if self.strategy not in ("top", "pot"):
            raise ValueError(f"unknown module order strategy {self.strategy!r}")

    def key(self, pos, exps):
        block = 1 if pos < self.split else 0
        if self.strategy == "top":
            return (block, self.base.key(exps), -pos)
        return (block, -pos, self.base.key(exps))


class SchreyerOrder:
    """Order induced by a list of target leading terms.

    Terms m*e_j are compared by the target leading term of m*g_j under the
    target's own order, with the position as tie-break.  ``target_lts`` holds
    the leading term (pos, exps) of each g_j.
    """

    def __init__(self, target_order, target_lts):
        self.target_order = target_order
        self.target_lts = tuple(target_lts)

    def key(self, pos, exps):
        tpos, texps = self.target_lts[pos]
        shifted = tuple(a + b for a, b in zip(exps, texps))
        return (self.target_order.key(tpos, shifted), -pos)
