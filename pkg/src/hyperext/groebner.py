"""Buchberger engine for graded submodules of free modules over F_p[x_1..x_n].

Elements of a rank-r free module are dicts mapping (position, exponents) to
nonzero residues mod p.  Quotients by a hypersurface f are handled one level
up by appending f*e_pos generators; this module never needs to know.

Kernels, syzygies and lifts all go through one mechanism: tag each input
column with a fresh basis vector in a dominated block and run Buchberger
under a block order that eliminates the ambient positions.  Basis elements
supported entirely in the tag block are syzygies; the tag residue of a
normal form is a cofactor record.

S-pairs are processed in increasing degree (normal strategy, lexicographic
tie-break), pruned by the coprimality criterion (only where it is valid:
both elements supported in a single position, i.e. genuinely polynomial
data - for honest module elements it is unsound) and the chain criterion.
"""

from __future__ import annotations

import heapq

from .errors import DegreeCapExceeded, EngineBug
from .orders import ModuleOrder

DEFAULT_DEGREE_CAP = 30

Term = tuple  # (position, exponent tuple)
Vec = dict  # Term -> int


# -- raw vector helpers -------------------------------------------------------


def vec_is_zero(v: Vec) -> bool:
    return not v


def vec_lt(v: Vec, keyf) -> Term:
    return max(v, key=lambda t: keyf(t[0], t[1]))


def vec_degree(v: Vec, shifts):
    """Common degree of a homogeneous vector, or None for the zero vector."""
    degs = {sum(e) + shifts[pos] for pos, e in v}
    if len(degs) > 1:
        raise EngineBug(f"inhomogeneous vector with degrees {sorted(degs)}")
    return degs.pop() if degs else None


def vec_add(a: Vec, b: Vec, p: int) -> Vec:
    out = dict(a)
    for t, c in b.items():
        v = (out.get(t, 0) + c) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def vec_scale(a: Vec, c: int, p: int) -> Vec:
    c %= p
    if c == 0:
        return {}
    if c == 1:
        return dict(a)
    return {t: (c * v) % p for t, v in a.items()}


def vec_sub_scaled_shifted(a: Vec, b: Vec, c: int, mono, p: int) -> Vec:
    """a - c * x^mono * b."""
    out = dict(a)
    for (pos, e), bc in b.items():
        t = (pos, tuple(x + y for x, y in zip(e, mono)))
        v = (out.get(t, 0) - c * bc) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def vec_shift_positions(v: Vec, offset: int) -> Vec:
    return {(pos + offset, e): c for (pos, e), c in v.items()}


def vec_canonical_key(v: Vec):
    """Stable sort key independent of dict insertion order."""
    return tuple(sorted((pos, e, c) for (pos, e), c in v.items()))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


# -- the basis ----------------------------------------------------------------


_GLOBAL_TRACE = None


def set_trace(sink) -> None:
    """Install a process-wide completion trace callback; None clears it.

    Explicit per-basis ``trace`` arguments still win over the global sink.
    """
    global _GLOBAL_TRACE
    _GLOBAL_TRACE = sink


class ModuleGB:
    """A Groebner basis under construction (and then in use) for one span.

    ``shifts`` are the degrees of the ambient free basis vectors; they feed
    the normal selection strategy and homogeneity bookkeeping only.
    """

    def __init__(self, p, keyf, shifts, degree_cap=DEFAULT_DEGREE_CAP, trace=None):
        self.p = p
        self.keyf = keyf
        self.shifts = tuple(shifts)
        self.degree_cap = degree_cap
        self.trace = trace if trace is not None else _GLOBAL_TRACE
        self.elements: list[Vec] = []
        self.lts: list[Term] = []
        self._single: list[bool] = []
        self._by_pos: dict[int, list] = {}
        self._pending: set = set()
        self._heap: list = []

    # -- reduction ------------------------------------------------------------

    def _find_reducer(self, pos, exps, skip=None):
        for e, idx in self._by_pos.get(pos, ()):
            if idx != skip and _divides(e, exps):
                return idx
        return None

    def normal_form(self, v: Vec, skip=None) -> Vec:
        p, keyf = self.p, self.keyf
        work = dict(v)
        out: Vec = {}
        while work:
            t = max(work, key=lambda t: keyf(t[0], t[1]))
            pos, exps = t
            idx = self._find_reducer(pos, exps, skip)
            if idx is None:
                out[t] = work.pop(t)
                continue
            ge = self.lts[idx][1]
            mono = tuple(x - y for x, y in zip(exps, ge))
            work = vec_sub_scaled_shifted(work, self.elements[idx], work[t], mono, p)
        return out

    def contains(self, v: Vec) -> bool:
        return not self.normal_form(v)

    # -- construction -----------------------------------------------------------

    def _push_pairs(self, j):
        posj, ej = self.lts[j]
        for i in range(j):
            posi, ei = self.lts[i]
            if posi != posj:
                continue
            lcm = tuple(max(x, y) for x, y in zip(ei, ej))
            deg = sum(lcm) + self.shifts[posj]
            heapq.heappush(self._heap, (deg, i, j, lcm))
            self._pending.add((i, j))

    def _add_element(self, v: Vec):
        lt = vec_lt(v, self.keyf)
        lc = v[lt]
        if lc != 1:
            v = vec_scale(v, pow(lc, -1, self.p), self.p)
        idx = len(self.elements)
        self.elements.append(v)
        self.lts.append(lt)
        first = next(iter(v))[0]
        self._single.append(all(t[0] == first for t in v))
        self._by_pos.setdefault(lt[0], []).append((lt[1], idx))
        self._push_pairs(idx)
        if self.trace is not None:
            self.trace(f"basis += element {idx}, leading term {lt}")

    def add_generators(self, gens) -> "ModuleGB":
        """Feed generators (sorted deterministically), then complete all pairs."""
        gens = [g for g in gens if g]
        gens.sort(key=lambda g: (vec_degree(g, self.shifts), vec_canonical_key(g)))
        for g in gens:
            r = self.normal_form(g)
            if r:
                self._add_element(r)
        self._complete()
        return self

    def _complete(self):
        p = self.p
        while self._heap:
            deg, i, j, lcm = heapq.heappop(self._heap)
            if (i, j) not in self._pending:
                continue
            self._pending.discard((i, j))
            if deg > self.degree_cap:
                raise DegreeCapExceeded(
                    f"S-pair of degree {deg} exceeds the degree cap {self.degree_cap}"
                )
            pos, ei = self.lts[i]
            ej = self.lts[j][1]
            if (
                self._single[i]
                and self._single[j]
                and all(min(x, y) == 0 for x, y in zip(ei, ej))
            ):
                continue
            if self._chain_criterion(i, j, pos, lcm):
                continue
            s = vec_sub_scaled_shifted(
                self._shifted(i, lcm),
                self.elements[j],
                1,
                tuple(x - y for x, y in zip(lcm, ej)),
                p,
            )
            r = self.normal_form(s)
            if r:
                if self.trace is not None:
                    self.trace(f"pair ({i},{j}) degree {deg} -> new element")
                self._add_element(r)
            elif self.trace is not None:
                self.trace(f"pair ({i},{j}) degree {deg} -> 0")

    def absorb_closed(self, other: "ModuleGB", offset: int = 0):
        """Append another basis, position-shifted, without generating pairs.

        Only valid when no new S-pairs can arise, i.e. the appended elements
        live on positions disjoint from every existing element (block-diagonal
        assembly).
        """
        for v, lt in zip(other.elements, other.lts):
            nv = vec_shift_positions(v, offset) if offset else dict(v)
            idx = len(self.elements)
            self.elements.append(nv)
            self.lts.append((lt[0] + offset, lt[1]))
            first = next(iter(nv))[0]
            self._single.append(all(t[0] == first for t in nv))
            self._by_pos.setdefault(lt[0] + offset, []).append((lt[1], idx))
        return self

    def _shifted(self, i, lcm):
        ei = self.lts[i][1]
        mono = tuple(x - y for x, y in zip(lcm, ei))
        return {
            (pos, tuple(x + y for x, y in zip(e, mono))): c
            for (pos, e), c in self.elements[i].items()
        }

    def _chain_criterion(self, i, j, pos, lcm) -> bool:
        for e, k in self._by_pos.get(pos, ()):
            if k == i or k == j:
                continue
            if not _divides(e, lcm):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in self._pending and b not in self._pending:
                return True
        return False

    # -- canonical form ---------------------------------------------------------

    def reduced(self) -> "ModuleGB":
        """The reduced basis: minimal lts, tails fully reduced, monic, sorted."""
        order = sorted(range(len(self.elements)), key=lambda i: self.keyf(*self.lts[i]))
        kept: list[int] = []
        for i in order:
            pos, e = self.lts[i]
            if any(self.lts[k][0] == pos and _divides(self.lts[k][1], e) for k in kept):
                continue
            kept.append(i)
        out = ModuleGB(self.p, self.keyf, self.shifts, self.degree_cap, self.trace)
        for n, i in enumerate(kept):
            v = self.elements[i]
            lt = self.lts[i]
            out.elements.append(v)
            out.lts.append(lt)
            first = next(iter(v))[0]
            out._single.append(all(t[0] == first for t in v))
            out._by_pos.setdefault(lt[0], []).append((lt[1], n))
        # one in-place pass gives the reduced basis: only leading terms matter
        # for reducibility and they are already pairwise non-divisible
        for n in range(len(out.elements)):
            r = out.normal_form(out.elements[n], skip=n)
            if vec_lt(r, out.keyf) != out.lts[n]:
                raise EngineBug("tail reduction moved a leading term")
            out.elements[n] = r
            first = next(iter(r))[0]
            out._single[n] = all(t[0] == first for t in r)
        return out


def groebner_basis(gens, p, keyf, shifts, degree_cap=DEFAULT_DEGREE_CAP, trace=None) -> ModuleGB:
    gb = ModuleGB(p, keyf, shifts, degree_cap, trace)
    gb.add_generators(list(gens))
    return gb.reduced()


# -- elimination-based kernels and lifts ----------------------------------------


class TaggedBasis:
    """Groebner data for columns g_1..g_s of a free module, with tags.

    Works in rank (ambient + s): column j becomes g_j + e_{ambient+j}, extra
    columns (hypersurface relations etc.) enter untagged.  The block order
    makes every ambient term dominate every tag term, so tag-only basis
    elements are exactly a generating set of the syzygies of the columns
    modulo the extra columns, and tag residues of normal forms are cofactor
    records.  ``column_degrees`` must be supplied because a zero column has
    no degree of its own.
    """

    def __init__(self, columns, column_degrees, ambient_rank, ambient_shifts, nvars,
                 base_order, p, extra=(), degree_cap=DEFAULT_DEGREE_CAP,
                 strategy="top", trace=None):
        if len(columns) != len(column_degrees):
            raise EngineBug("column/degree count mismatch")
        self.p = p
        self.ambient_rank = ambient_rank
        self.ncols = len(columns)
        self.shifts = tuple(ambient_shifts) + tuple(column_degrees)
        self.keyf = ModuleOrder(base_order, strategy, split=ambient_rank).key
        zero_exps = (0,) * nvars
        gens = []
        for j, col in enumerate(columns):
            v = dict(col)
            v[(ambient_rank + j, zero_exps)] = 1
            gens.append(v)
        gens.extend(dict(x) for x in extra if x)
        self.gb = ModuleGB(p, self.keyf, self.shifts, degree_cap, trace)
        self.gb.add_generators(gens)

    def syzygy_vectors(self):
        """Tag parts of basis elements with no ambient support, sorted stably."""
        out = []
        for v in self.gb.elements:
            if all(pos >= self.ambient_rank for pos, _ in v):
                out.append({(pos - self.ambient_rank, e): c for (pos, e), c in v.items()})
        out.sort(key=vec_canonical_key)
        return out

    def reduce_with_lift(self, v: Vec):
        """Normal form of an ambient vector plus cofactors on the columns.

        Returns (residue, coeffs) with  v = sum_j coeffs_j * g_j + residue,
        modulo the extra columns.  coeffs is a Vec over positions 0..ncols-1.
        """
        r = self.gb.normal_form(dict(v))
        residue = {t: c for t, c in r.items() if t[0] < self.ambient_rank}
        coeffs = {
            (pos - self.ambient_rank, e): (-c) % self.p
            for (pos, e), c in r.items()
            if pos >= self.ambient_rank
        }
        return residue, coeffs

    def member_with_lift(self, v: Vec):
        residue, coeffs = self.reduce_with_lift(v)
        if residue:
            return None
        return coeffs
