"""Graded free maps, presented modules, and homology over a ring context.

A PresentedModule is coker(presentation) for a graded map of free modules;
everything downstream (kernels, Hom, tensor, homology, Hilbert data) reduces
to Groebner computations on its relation columns, with hypersurface contexts
transparently appending f*e_pos relation vectors.

Maps with coefficients in a presented module N (needed for Ext and Tor) are
BlockMaps: a polynomial matrix acting on a direct sum of shifted copies of N.
Their kernels and homology are computed on free covers by the tagged
elimination in the groebner module.
"""

from __future__ import annotations

import math
import threading
from functools import lru_cache
from typing import NamedTuple

from .errors import EngineBug, HomogeneityError, InvalidComplexError, RingMismatchError
from .groebner import (
    DEFAULT_DEGREE_CAP,
    ModuleGB,
    TaggedBasis,
    Vec,
    vec_canonical_key,
    vec_degree,
    vec_shift_positions,
)
from .poly import Poly
from .ring import RingContext


class _InfiniteLength:
    """First-class 'infinite' answer for length queries."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __eq__(self, other):
        return isinstance(other, _InfiniteLength)

    def __hash__(self):
        return hash("INFINITE")


INFINITE = _InfiniteLength()


# -- graded maps of free modules ------------------------------------------------


class GradedFreeMap:
    """A degree-0 map of graded free modules, rows = target, columns = source.

    Entry (i, j) must be zero or homogeneous of degree
    source_degrees[j] - target_degrees[i]; over a hypersurface context the
    entries are stored as canonical representatives mod f.
    """

    __slots__ = ("ring", "matrix", "source_degrees", "target_degrees")

    def __init__(self, ring: RingContext, matrix, source_degrees, target_degrees):
        self.ring = ring
        source_degrees = tuple(int(d) for d in source_degrees)
        target_degrees = tuple(int(d) for d in target_degrees)
        rows = []
        if len(matrix) != len(target_degrees):
            raise ValueError("matrix row count does not match target rank")
        for i, row in enumerate(matrix):
            row = tuple(row)
            if len(row) != len(source_degrees):
                raise ValueError(f"row {i} has wrong length")
            fixed = []
            for j, entry in enumerate(row):
                if not isinstance(entry, Poly) or entry.ring != ring.poly_ring:
                    raise RingMismatchError(f"entry ({i},{j}) is not a polynomial in the context ring")
                entry = ring.reduce_poly(entry)
                if not entry.is_zero():
                    d = entry.degree()
                    want = source_degrees[j] - target_degrees[i]
                    if d is None or d != want:
                        raise HomogeneityError(
                            f"entry ({i},{j}) must be homogeneous of degree {want}, got {entry.render()}"
                        )
                fixed.append(entry)
            rows.append(tuple(fixed))
        self.matrix = tuple(rows)
        self.source_degrees = source_degrees
        self.target_degrees = target_degrees

    # -- shape ----------------------------------------------------------------

    @property
    def source_rank(self) -> int:
        return len(self.source_degrees)

    @property
    def target_rank(self) -> int:
        return len(self.target_degrees)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.matrix for e in row)

    def __eq__(self, other):
        return (
            isinstance(other, GradedFreeMap)
            and self.ring == other.ring
            and self.source_degrees == other.source_degrees
            and self.target_degrees == other.target_degrees
            and self.matrix == other.matrix
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"<GradedFreeMap {self.target_rank}x{self.source_rank} over {self.ring!r}>"

    # -- conversions ------------------------------------------------------------

    def column_vec(self, j: int) -> Vec:
        out: Vec = {}
        for i in range(self.target_rank):
            for exps, c in self.matrix[i][j].terms.items():
                out[(i, exps)] = c
        return out

    def columns(self):
        return [self.column_vec(j) for j in range(self.source_rank)]

    @classmethod
    def from_columns(cls, ring, cols, source_degrees, target_degrees) -> "GradedFreeMap":
        pr = ring.poly_ring
        rows = [[dict() for _ in cols] for _ in target_degrees]
        for j, col in enumerate(cols):
            for (pos, exps), c in col.items():
                rows[pos][j][exps] = c
        matrix = [[Poly(pr, cell) for cell in row] for row in rows]
        return cls(ring, matrix, source_degrees, target_degrees)

    def render_rows(self):
        return [[e.render() for e in row] for row in self.matrix]

    # -- algebra ------------------------------------------------------------------

    def compose(self, other: "GradedFreeMap") -> "GradedFreeMap":
        """self o other (other feeds into self)."""
        if self.ring != other.ring or self.source_degrees != other.target_degrees:
            raise RingMismatchError("maps do not compose")
        zero = self.ring.poly_ring.zero()
        rows = []
        for i in range(self.target_rank):
            row = []
            for j in range(other.source_rank):
                acc = zero
                for k in range(self.source_rank):
                    a = self.matrix[i][k]
                    b = other.matrix[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return GradedFreeMap(self.ring, rows, other.source_degrees, self.target_degrees)

    def dual(self) -> "GradedFreeMap":
        """Transpose, with source/target degree vectors swapped and negated."""
        rows = [
            [self.matrix[i][j] for i in range(self.target_rank)]
            for j in range(self.source_rank)
        ]
        return GradedFreeMap(
            self.ring,
            rows,
            tuple(-d for d in self.target_degrees),
            tuple(-d for d in self.source_degrees),
        )

    def twist(self, n: int) -> "GradedFreeMap":
        return GradedFreeMap(
            self.ring,
            self.matrix,
            tuple(d + n for d in self.source_degrees),
            tuple(d + n for d in self.target_degrees),
        )


def identity_map(ring, degrees) -> GradedFreeMap:
    pr = ring.poly_ring
    n = len(degrees)
    rows = [[pr.one() if i == j else pr.zero() for j in range(n)] for i in range(n)]
    return GradedFreeMap(ring, rows, tuple(degrees), tuple(degrees))


def zero_map(ring, source_degrees, target_degrees) -> GradedFreeMap:
    pr = ring.poly_ring
    rows = [[pr.zero() for _ in source_degrees] for _ in target_degrees]
    return GradedFreeMap(ring, rows, tuple(source_degrees), tuple(target_degrees))


# -- presented modules ------------------------------------------------------------


class PresentedModule:
    """coker(presentation) over the presentation's ring context."""

    __slots__ = ("ring", "presentation", "_lock", "_memo")

    def __init__(self, presentation: GradedFreeMap):
        cols = []
        degs = []
        for j in range(presentation.source_rank):
            col = presentation.column_vec(j)
            if col:
                cols.append(col)
                degs.append(presentation.source_degrees[j])
        if len(cols) != presentation.source_rank:
            presentation = GradedFreeMap.from_columns(
                presentation.ring, cols, tuple(degs), presentation.target_degrees
            )
        self.ring = presentation.ring
        self.presentation = presentation
        self._lock = threading.RLock()
        self._memo: dict = {}

    # -- basic shape -------------------------------------------------------------

    @property
    def gen_degrees(self):
        return self.presentation.target_degrees

    @property
    def n_gens(self) -> int:
        return self.presentation.target_rank

    @property
    def n_relations(self) -> int:
        return self.presentation.source_rank

    def __repr__(self):
        return (
            f"<PresentedModule {self.n_gens} gens {self.n_relations} relations"
            f" over {self.ring!r}>"
        )

    def describe(self) -> dict:
        return {
            "generator_degrees": list(self.gen_degrees),
            "relation_degrees": list(self.presentation.source_degrees),
            "relations": self.presentation.render_rows(),
        }

    def _cached(self, key, fn):
        with self._lock:
            if key not in self._memo:
                self._memo[key] = fn()
            return self._memo[key]

    # -- Groebner data -------------------------------------------------------------

    def relations_gb(self) -> ModuleGB:
        """Reduced basis of the relation submodule (with f*e_pos if quotient)."""

        def build():
            gens = self.presentation.columns()
            gens.extend(self.ring.quotient_relation_vecs(self.n_gens))
            gb = ModuleGB(self.ring.p, self.ring.module_key(), self.gen_degrees)
            gb.add_generators(gens)
            return gb.reduced()

        return self._cached("gb", build)

    def lt_ideals(self):
        """Per-position minimal monomial generators of the leading-term module."""

        def build():
            ideals = [[] for _ in range(self.n_gens)]
            for pos, exps in self.relations_gb().lts:
                ideals[pos].append(exps)
            return tuple(frozenset(g) for g in ideals)

        return self._cached("lt_ideals", build)

    def is_zero(self) -> bool:
        zero_exps = (0,) * self.ring.nvars
        return all(zero_exps in ideal for ideal in self.lt_ideals())

    # -- Hilbert data ----------------------------------------------------------------

    def _numerators(self):
        def build():
            n = self.ring.nvars
            return tuple(_monomial_numerator(ideal, n) for ideal in self.lt_ideals())

        return self._cached("numerators", build)

    def hilbert_function_at(self, d: int) -> int:
        n = self.ring.nvars
        total = 0
        for shift, num in zip(self.gen_degrees, self._numerators()):
            total += _series_coefficient(num, n, d - shift)
        return total

    def hilbert_function(self, d_max: int):
        """Values dim_k M_d for 0 <= d <= d_max."""
        return [self.hilbert_function_at(d) for d in range(d_max + 1)]

    def hf_range(self, lo: int, hi: int) -> dict:
        return {d: self.hilbert_function_at(d) for d in range(lo, hi + 1)}

    def min_nonzero_degree(self):
        """Smallest degree with nonzero Hilbert value, or None for the zero module."""
        zero_exps = (0,) * self.ring.nvars
        alive = [s for s, ideal in zip(self.gen_degrees, self.lt_ideals()) if zero_exps not in ideal]
        return min(alive) if alive else None

    def length(self):
        """Total k-dimension, or INFINITE."""
        n = self.ring.nvars
        total = 0
        for num in self._numerators():
            piece = _finite_total(num, n)
            if piece is None:
                return INFINITE
            total += piece
        return total

    def dimension(self):
        """Krull dimension of the module; None for the zero module."""
        n = self.ring.nvars
        zero_exps = (0,) * n
        best = None
        for ideal in self.lt_ideals():
            if zero_exps in ideal:
                continue
            d = _monomial_quotient_dim(ideal, n)
            best = d if best is None else max(best, d)
        return best


def present_module(ring: RingContext, rows, gen_degrees=None) -> PresentedModule:
    """Module from row-major presentation data: rows = generators.

    ``rows[i][j]`` is the coefficient of generator i in relation j; entries
    may be Poly or source text.
    """
    pr = ring.poly_ring
    rows = [list(r) for r in rows]
    if gen_degrees is None:
        gen_degrees = tuple(0 for _ in rows)
    ncols = len(rows[0]) if rows else 0
    matrix = []
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged presentation matrix")
        matrix.append([e if isinstance(e, Poly) else pr.parse(str(e)) for e in r])
    source_degrees = _infer_column_degrees(ring, matrix, gen_degrees, ncols)
    pres = GradedFreeMap(ring, matrix, source_degrees, tuple(gen_degrees))
    return PresentedModule(pres)


def _infer_column_degrees(ring, matrix, gen_degrees, ncols):
    degrees = []
    for j in range(ncols):
        d = None
        for i, row in enumerate(matrix):
            entry = ring.reduce_poly(row[j])
            if entry.is_zero():
                continue
            ed = entry.degree()
            if ed is None:
                raise HomogeneityError(f"entry ({i},{j}) is inhomogeneous: {entry.render()}")
            cand = ed + gen_degrees[i]
            if d is None:
                d = cand
            elif d != cand:
                raise HomogeneityError(
                    f"relation column {j} is inhomogeneous: degree {d} vs {cand} at row {i}"
                )
        degrees.append(0 if d is None else d)
    return tuple(degrees)


def free_module(ring: RingContext, degrees) -> PresentedModule:
    return PresentedModule(zero_map(ring, (), tuple(degrees)))


def ring_as_module(ring: RingContext) -> PresentedModule:
    return free_module(ring, (0,))


def zero_module(ring: RingContext) -> PresentedModule:
    return PresentedModule(zero_map(ring, (), ()))


def k_module(ring: RingContext) -> PresentedModule:
    """The residue field ring/(x_1..x_n) as a presented module."""
    return present_module(ring, [[ring.poly_ring.var(v) for v in ring.variables]])


def cyclic_module(ring: RingContext, polys) -> PresentedModule:
    """ring/(g_1..g_k)."""
    pr = ring.poly_ring
    polys = [g if isinstance(g, Poly) else pr.parse(str(g)) for g in polys]
    return present_module(ring, [polys])


# -- Hilbert series helpers ----------------------------------------------------------


@lru_cache(maxsize=None)
def _monomial_numerator(gens: frozenset, nvars: int):
    """Numerator of the Hilbert series of k[x]/(gens) over (1-t)^nvars.

    Returned as a degree->coefficient dict.  Standard splitting recursion on
    a pivot variable, memoized globally.
    """
    gens = _minimalize(gens)
    if not gens:
        return {0: 1}
    if (0,) * nvars in gens:
        return {}
    supports = [tuple(i for i, e in enumerate(g) if e) for g in gens]
    if all(len(s) == 1 for s in supports):
        out = {0: 1}
        for g in gens:
            out = _poly_mul(out, {0: 1, sum(g): -1})
        return out
    counts = [0] * nvars
    for s in supports:
        if len(s) > 1:
            for i in s:
                counts[i] += 1
    pivot = max(range(nvars), key=lambda i: (counts[i], -i))
    pv = tuple(1 if i == pivot else 0 for i in range(nvars))
    with_pivot = frozenset(gens | {pv})
    colon = frozenset(tuple(e - 1 if i == pivot and e > 0 else e for i, e in enumerate(g)) for g in gens)
    a = _monomial_numerator(with_pivot, nvars)
    b = _monomial_numerator(colon, nvars)
    out = dict(a)
    for d, c in b.items():
        out[d + 1] = out.get(d + 1, 0) + c
        if out[d + 1] == 0:
            del out[d + 1]
    return out


def _minimalize(gens: frozenset) -> frozenset:
    gens = sorted(gens, key=lambda g: (sum(g), g))
    kept = []
    for g in gens:
        if not any(all(x <= y for x, y in zip(k, g)) for k in kept):
            kept.append(g)
    return frozenset(kept)


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for da, ca in a.items():
        for db, cb in b.items():
            d = da + db
            out[d] = out.get(d, 0) + ca * cb
            if out[d] == 0:
                del out[d]
    return out


def _series_coefficient(num: dict, nvars: int, d: int) -> int:
    if d < 0:
        return 0
    total = 0
    for k, c in num.items():
        if k <= d:
            total += c * math.comb(d - k + nvars - 1, nvars - 1)
    return total


def _finite_total(num: dict, nvars: int):
    """Sum of all series coefficients, or None when the series is infinite."""
    if not num:
        return 0
    coeffs = [0] * (max(num) + 1)
    for d, c in num.items():
        coeffs[d] = c
    for _ in range(nvars):
        if sum(coeffs) != 0:
            return None
        acc = 0
        out = []
        for c in coeffs[:-1]:
            acc += c
            out.append(acc)
        coeffs = out or [0]
    return sum(coeffs)


def _monomial_quotient_dim(gens: frozenset, nvars: int) -> int:
    """Krull dimension of k[x]/(monomial gens): largest var subset meeting no gen support."""
    if not gens:
        return nvars
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    best = 0
    for mask in range(2**nvars - 1, -1, -1):
        size = bin(mask).count("1")
        if size <= best:
            continue
        subset = frozenset(i for i in range(nvars) if mask >> i & 1)
        if all(not s <= subset for s in supports):
            best = size
    return best


# -- block modules: sums of shifted copies of one presented module ---------------------


class BlockModule(NamedTuple):
    coeff: PresentedModule
    shifts: tuple

    def cover_degrees(self) -> tuple:
        nu = self.coeff.gen_degrees
        return tuple(s + d for s in self.shifts for d in nu)

    def cover_rank(self) -> int:
        return len(self.shifts) * self.coeff.n_gens

    def relation_columns(self):
        """Presentation columns of the coefficient module, copied per block."""
        r = self.coeff.n_gens
        base = self.coeff.presentation.columns()
        base_deg = self.coeff.presentation.source_degrees
        cols, degs = [], []
        for t, s in enumerate(self.shifts):
            for col, d in zip(base, base_deg):
                cols.append(vec_shift_positions(col, t * r))
                degs.append(d + s)
        return cols, degs

    def relations_gb(self) -> ModuleGB:
        """Assembled from the coefficient module's reduced basis, no recompute.

        S-pairs never cross blocks (positions are disjoint), so shifted copies
        of a closed basis already form a basis of the block relation module.
        """
        ring = self.coeff.ring
        base = self.coeff.relations_gb()
        r = self.coeff.n_gens
        gb = ModuleGB(ring.p, ring.module_key(), self.cover_degrees())
        for t in range(len(self.shifts)):
            gb.absorb_closed(base, t * r)
        return gb


class BlockMap:
    """Matrix of ring elements acting on direct sums of shifted copies of N."""

    __slots__ = ("ring", "coeff", "matrix", "source_shifts", "target_shifts")

    def __init__(self, ring, coeff: PresentedModule, matrix, source_shifts, target_shifts):
        self.ring = ring
        self.coeff = coeff
        source_shifts = tuple(source_shifts)
        target_shifts = tuple(target_shifts)
        rows = []
        if len(matrix) != len(target_shifts):
            raise ValueError("block matrix row count mismatch")
        for i, row in enumerate(matrix):
            row = tuple(row)
            if len(row) != len(source_shifts):
                raise ValueError("block matrix column count mismatch")
            fixed = []
            for j, entry in enumerate(row):
                entry = ring.reduce_poly(entry)
                if not entry.is_zero():
                    want = source_shifts[j] - target_shifts[i]
                    if entry.degree() != want:
                        raise HomogeneityError(
                            f"block entry ({i},{j}) must be homogeneous of degree {want}"
                        )
                fixed.append(entry)
            rows.append(tuple(fixed))
        self.matrix = tuple(rows)
        self.source_shifts = source_shifts
        self.target_shifts = target_shifts

    @property
    def source(self) -> BlockModule:
        return BlockModule(self.coeff, self.source_shifts)

    @property
    def target(self) -> BlockModule:
        return BlockModule(self.coeff, self.target_shifts)

    def lifted_columns(self):
        """Images of the source cover basis inside the target cover, one Vec each."""
        r = self.coeff.n_gens
        cols = []
        for j in range(len(self.source_shifts)):
            for s in range(r):
                col: Vec = {}
                for i in range(len(self.target_shifts)):
                    entry = self.matrix[i][j]
                    for exps, c in entry.terms.items():
                        col[(i * r + s, exps)] = c
                cols.append(col)
        return cols


def tensor_with(m: GradedFreeMap, coeff: PresentedModule) -> BlockMap:
    """m tensor N, as a map of block modules."""
    return BlockMap(m.ring, coeff, m.matrix, m.source_degrees, m.target_degrees)


def hom_into(m: GradedFreeMap, coeff: PresentedModule) -> BlockMap:
    """Hom(m, N): the transpose-induced map Hom(target, N) -> Hom(source, N)."""
    rows = [
        [m.matrix[i][j] for i in range(m.target_rank)]
        for j in range(m.source_rank)
    ]
    return BlockMap(
        m.ring,
        coeff,
        rows,
        tuple(-d for d in m.target_degrees),
        tuple(-d for d in m.source_degrees),
    )


# -- kernels, cokernels, homology --------------------------------------------------------


class KernelData(NamedTuple):
    module: PresentedModule
    inclusion: GradedFreeMap  # generators of the kernel, as a map into the source


def _kernel_vectors(out_map: BlockMap, degree_cap=DEFAULT_DEGREE_CAP):
    """Minimal homogeneous generators of ker(out_map) inside the source cover.

    Minimality is modulo the source block module's own relations: a kernel
    vector already zero in the source contributes nothing.
    """
    ring = out_map.ring
    src = out_map.source
    tgt = out_map.target
    src_deg = src.cover_degrees()
    tgt_deg = tgt.cover_degrees()
    columns = out_map.lifted_columns()
    extra_cols, _ = tgt.relation_columns()
    extra = list(extra_cols) + ring.quotient_relation_vecs(len(tgt_deg))
    tagged = TaggedBasis(
        columns,
        src_deg,
        len(tgt_deg),
        tgt_deg,
        ring.nvars,
        ring.order,
        ring.p,
        extra=extra,
        degree_cap=degree_cap,
    )
    raw = tagged.syzygy_vectors()
    seed, _ = src.relation_columns()
    return _minimal_generators(ring, raw, src_deg, seed, degree_cap)


def _minimal_generators(ring, vectors, shifts, seed=(), degree_cap=DEFAULT_DEGREE_CAP):
    """Greedy minimal homogeneous generating set modulo span(seed) and f.

    Processing in weakly increasing degree with membership tests against the
    already-kept span yields a minimal generating set by graded Nakayama.
    """
    vectors = [_reduce_vec_mod_f(ring, v) for v in vectors]
    vectors = [v for v in vectors if v]
    vectors.sort(key=lambda v: (vec_degree(v, shifts), vec_canonical_key(v)))
    gb = ModuleGB(ring.p, ring.module_key(), shifts, degree_cap)
    gb.add_generators(list(seed) + ring.quotient_relation_vecs(len(shifts)))
    kept = []
    for v in vectors:
        if gb.contains(v):
            continue
        kept.append(v)
        gb.add_generators([v])
    return kept


def _reduce_vec_mod_f(ring, v: Vec) -> Vec:
    if not ring.is_quotient or not v:
        return v
    pr = ring.poly_ring
    by_pos: dict = {}
    for (pos, exps), c in v.items():
        by_pos.setdefault(pos, {})[exps] = c
    out: Vec = {}
    for pos, terms in by_pos.items():
        reduced = ring.reduce_poly(Poly(pr, terms))
        for exps, c in reduced.terms.items():
            out[(pos, exps)] = c
    return out


def kernel(m: GradedFreeMap, degree_cap=DEFAULT_DEGREE_CAP) -> KernelData:
    """Kernel of a map of free modules, as a presented module plus inclusion."""
    block = tensor_with(m, ring_as_module(m.ring))
    gens = _kernel_vectors(block, degree_cap)
    module, _ = _present_span(m.ring, gens, m.source_degrees, (), (), degree_cap)
    inclusion = GradedFreeMap.from_columns(
        m.ring, gens, module.gen_degrees, m.source_degrees
    )
    return KernelData(module, inclusion)


def cokernel(m: GradedFreeMap) -> PresentedModule:
    return PresentedModule(m)


def dual_map(m: GradedFreeMap) -> GradedFreeMap:
    return m.dual()


def _present_span(ring, gens, ambient_shifts, denominators, ambient_relations=(),
                  degree_cap=DEFAULT_DEGREE_CAP):
    """Present span(gens)/span(denominators) inside a cover with relations.

    The ambient is cover/(ambient_relations + f*cover); gens must generate
    their span minimally modulo that, and each denominator must lie in it.
    Returns (module, tagged_basis).
    """
    gen_degrees = tuple(vec_degree(g, ambient_shifts) for g in gens)
    extra = list(ambient_relations) + ring.quotient_relation_vecs(len(ambient_shifts))
    tagged = TaggedBasis(
        list(gens),
        gen_degrees,
        len(ambient_shifts),
        ambient_shifts,
        ring.nvars,
        ring.order,
        ring.p,
        extra=extra,
        degree_cap=degree_cap,
    )
    rel_cols = []
    rel_degs = []
    for d, want_degree in denominators:
        coeffs = tagged.member_with_lift(d)
        if coeffs is None:
            raise EngineBug("denominator escapes the numerator span")
        if coeffs:
            rel_cols.append(coeffs)
            rel_degs.append(want_degree)
    for syz in tagged.syzygy_vectors():
        syz = _reduce_vec_mod_f(ring, syz)
        if syz:
            rel_cols.append(syz)
            rel_degs.append(vec_degree(syz, gen_degrees))
    pres = GradedFreeMap.from_columns(ring, rel_cols, tuple(rel_degs), gen_degrees)
    return PresentedModule(pres), tagged


def homology_at(incoming, outgoing, degree_cap=DEFAULT_DEGREE_CAP, check_complex=True) -> PresentedModule:
    """ker(outgoing)/im(incoming) for block maps sharing their middle module.

    Either side may be None (interpreted as the zero map from/to nothing).
    """
    if incoming is None and outgoing is None:
        raise ValueError("homology needs at least one map")
    if incoming is not None and outgoing is not None:
        if (
            incoming.ring != outgoing.ring
            or incoming.coeff is not outgoing.coeff
            and incoming.coeff.presentation != outgoing.coeff.presentation
            or incoming.target_shifts != outgoing.source_shifts
        ):
            raise RingMismatchError("maps do not share a middle block module")
        if check_complex:
            _check_composition_zero(outgoing, incoming)
    ring = (incoming or outgoing).ring
    mid = incoming.target if incoming is not None else outgoing.source
    mid_deg = mid.cover_degrees()

    if outgoing is None or not outgoing.target_shifts:
        # kernel is everything: homology = coker([incoming | mid relations])
        cols, degs = mid.relation_columns()
        if incoming is not None:
            inc_cols = incoming.lifted_columns()
            inc_src = incoming.source.cover_degrees()
            cols = list(inc_cols) + list(cols)
            degs = list(inc_src) + list(degs)
        pres = GradedFreeMap.from_columns(ring, cols, tuple(degs), mid_deg)
        return PresentedModule(pres)

    gens = _kernel_vectors(outgoing, degree_cap)
    denominators = []
    if incoming is not None:
        inc_src = incoming.source.cover_degrees()
        for col, d in zip(incoming.lifted_columns(), inc_src):
            denominators.append((col, d))
    mid_rels, _ = mid.relation_columns()
    module, _ = _present_span(ring, gens, mid_deg, denominators, mid_rels, degree_cap)
    return module


def _check_composition_zero(outgoing: BlockMap, incoming: BlockMap):
    ring = outgoing.ring
    zero = ring.poly_ring.zero()
    b_out = len(outgoing.target_shifts)
    b_in = len(incoming.source_shifts)
    composite = []
    for i in range(b_out):
        row = []
        for j in range(b_in):
            acc = zero
            for k in range(len(outgoing.source_shifts)):
                a = outgoing.matrix[i][k]
                b = incoming.matrix[k][j]
                if a.is_zero() or b.is_zero():
                    continue
                acc = acc + a * b
            row.append(ring.reduce_poly(acc))
        composite.append(row)
    if all(e.is_zero() for row in composite for e in row):
        return
    gb = outgoing.target.relations_gb()
    r = outgoing.coeff.n_gens
    for j in range(b_in):
        for s in range(r):
            col: Vec = {}
            for i in range(b_out):
                for exps, c in composite[i][j].terms.items():
                    col[(i * r + s, exps)] = c
            if col and not gb.contains(col):
                raise InvalidComplexError("consecutive maps do not compose to zero")


def block_as_module(block: BlockModule) -> PresentedModule:
    """A block module (sum of shifted copies of N) as a plain presented module."""
    cols, degs = block.relation_columns()
    pres = GradedFreeMap.from_columns(
        block.coeff.ring, cols, tuple(degs), block.cover_degrees()
    )
    return PresentedModule(pres)


def tensor_modules(a: PresentedModule, b: PresentedModule) -> PresentedModule:
    """a tensor b over the shared ring context."""
    if a.ring != b.ring:
        raise RingMismatchError("tensor over different rings")
    ring = a.ring
    ra, rb = a.n_gens, b.n_gens
    gen_degrees = tuple(da + db for da in a.gen_degrees for db in b.gen_degrees)
    cols = []
    degs = []
    for col, d in zip(a.presentation.columns(), a.presentation.source_degrees):
        for t in range(rb):
            new = {(pos * rb + t, exps): c for (pos, exps), c in col.items()}
            cols.append(new)
            degs.append(d + b.gen_degrees[t])
    for col, d in zip(b.presentation.columns(), b.presentation.source_degrees):
        for s in range(ra):
            new = {(s * rb + pos, exps): c for (pos, exps), c in col.items()}
            cols.append(new)
            degs.append(d + a.gen_degrees[s])
    pres = GradedFreeMap.from_columns(ring, cols, tuple(degs), gen_degrees)
    return PresentedModule(pres)


def restrict_to_ambient(module: PresentedModule) -> PresentedModule:
    """The same graded group, presented over the ambient polynomial ring.

    Over a hypersurface quotient the implicit f*e_pos relations become
    explicit presentation columns; over a regular context this is a no-op.
    """
    ring = module.ring
    if not ring.is_quotient:
        return module
    amb = ring.ambient()
    cols = module.presentation.columns()
    degs = list(module.presentation.source_degrees)
    fdeg = ring.f_degree()
    for pos, v in enumerate(ring.quotient_relation_vecs(module.n_gens)):
        cols.append(v)
        degs.append(module.gen_degrees[pos] + fdeg)
    pres = GradedFreeMap.from_columns(amb, cols, tuple(degs), module.gen_degrees)
    return PresentedModule(pres)


def hilbert_function(module: PresentedModule, d_max: int):
    return module.hilbert_function(d_max)


def length(module: PresentedModule):
    return module.length()


def depth_and_dim(module: PresentedModule):
    """(depth, dim) of a nonzero module; depth via Ext against the residue field."""
    from .invariants import depth as _depth

    if module.is_zero():
        raise ValueError("depth/dim of the zero module is undefined")
    return _depth(module), module.dimension()
