"""Independent degreewise checker for Hilbert data of Ext and Tor.

Everything here is dense linear algebra over F_p, one internal degree at a
time: graded pieces of the ring and of presented modules are coordinatized
by explicit projection/lift matrices, differentials become block matrices,
and dimensions come from rank-nullity.  No term orders, no normal forms, no
basis completion; this file must stay importable without the groebner
module so the two pipelines cannot share a bug.

Free resolutions are rebuilt here from scratch: kernels per degree are
nullspaces, and new generators in each degree are a complement of the span
of variable multiples of the generators already found.  For tensor claims
the needed degree window is rigorously finite.  For Hom claims against a
module of certified finite support it is finite as well; against a module
of unbounded support the generator search is closed off by a
no-new-generators margin, the bound is retried once, and if generators
still appear near it the oracle refuses (DegreeCapExceeded) rather than
answer.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DegreeCapExceeded, EngineBug
from .linalg import left_nullspace_mod, matmul_mod, nullspace_mod, rank_mod, solve_mod
from .modules import PresentedModule
from .ring import RingContext


@lru_cache(maxsize=None)
def monomials(nvars: int, d: int):
    """All exponent tuples of total degree d, sorted, as a tuple."""
    if d < 0:
        return ()
    if nvars == 1:
        return ((d,),)
    out = []
    for lead in range(d, -1, -1):
        for rest in monomials(nvars - 1, d - lead):
            out.append((lead,) + rest)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _mono_index(nvars: int, d: int):
    return {m: i for i, m in enumerate(monomials(nvars, d))}


def _q_mult_matrix(terms: dict, nvars: int, t: int, s: int, p: int) -> np.ndarray:
    """Multiplication by a degree-t polynomial as a matrix Q_s -> Q_{s+t}."""
    rows = len(monomials(nvars, s + t))
    cols = monomials(nvars, s)
    idx = _mono_index(nvars, s + t)
    out = np.zeros((rows, len(cols)), dtype=np.int64)
    for j, mu in enumerate(cols):
        for e, c in terms.items():
            tgt = tuple(a + b for a, b in zip(e, mu))
            out[idx[tgt], j] = (out[idx[tgt], j] + c) % p
    return out


class DenseRing:
    """Degreewise coordinates for Q or Q/(f), with multiplication matrices."""

    def __init__(self, ctx: RingContext):
        self.ctx = ctx
        self.nvars = ctx.nvars
        self.p = ctx.p
        self._proj: dict = {}
        self._lift: dict = {}
        self._fterms = dict(ctx.hypersurface.terms) if ctx.is_quotient else None
        self._fdeg = ctx.f_degree()

    def qdim(self, d: int) -> int:
        return len(monomials(self.nvars, d))

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        if self._fterms is None:
            return self.qdim(d)
        return self.proj(d).shape[0]

    def proj(self, d: int):
        """Matrix taking Q_d coordinates to A_d coordinates; None if regular."""
        if self._fterms is None:
            return None
        if d not in self._proj:
            if d < self._fdeg:
                self._proj[d] = np.eye(self.qdim(d), dtype=np.int64)
            else:
                mf = _q_mult_matrix(self._fterms, self.nvars, self._fdeg,
                                    d - self._fdeg, self.p)
                self._proj[d] = left_nullspace_mod(mf, self.p)
        return self._proj[d]

    def lift(self, d: int):
        """Right inverse of proj(d): A_d coordinates to Q_d representatives."""
        if self._fterms is None:
            return None
        if d not in self._lift:
            u = self.proj(d)
            x = solve_mod(u, np.eye(u.shape[0], dtype=np.int64), self.p)
            if x is None:
                raise EngineBug("ring coordinate projection is not surjective")
            self._lift[d] = x
        return self._lift[d]

    def mult(self, terms: dict, t: int, s: int) -> np.ndarray:
        """Multiplication by a degree-t polynomial (term dict): A_s -> A_{s+t}."""
        if s < 0 or s + t < 0:
            return np.zeros((self.dim(s + t), self.dim(s)), dtype=np.int64)
        mq = _q_mult_matrix(terms, self.nvars, t, s, self.p)
        if self._fterms is None:
            return mq
        out = matmul_mod(self.proj(s + t), mq, self.p)
        return matmul_mod(out, self.lift(s), self.p)

    def basis_terms(self, t: int):
        """Term dict of each A_t coordinate basis element, as a list."""
        if t < 0:
            return []
        if self._fterms is None:
            return [{m: 1} for m in monomials(self.nvars, t)]
        lift = self.lift(t)
        monos = monomials(self.nvars, t)
        return [
            {monos[i]: int(lift[i, j]) for i in range(lift.shape[0])
             if lift[i, j] % self.p}
            for j in range(lift.shape[1])
        ]


class DenseFree:
    """A graded free module over a DenseRing: coordinate bookkeeping."""

    def __init__(self, ring: DenseRing, degrees):
        self.ring = ring
        self.degrees = tuple(degrees)

    def dim(self, d: int) -> int:
        return sum(self.ring.dim(d - a) for a in self.degrees)

    def offsets(self, d: int):
        out = []
        total = 0
        for a in self.degrees:
            out.append(total)
            total += self.ring.dim(d - a)
        return out, total

    def act(self, vec: np.ndarray, e: int, terms: dict, t: int) -> np.ndarray:
        """Multiply a coordinate vector at degree e by a degree-t element."""
        offs, _ = self.offsets(e)
        offs2, total2 = self.offsets(e + t)
        out = np.zeros(total2, dtype=np.int64)
        for i, a in enumerate(self.degrees):
            src = vec[offs[i]: offs[i] + self.ring.dim(e - a)]
            if not src.any():
                continue
            block = self.ring.mult(terms, t, e - a)
            piece = matmul_mod(block, src.reshape(-1, 1), self.ring.p).ravel()
            out[offs2[i]: offs2[i] + len(piece)] = piece
        return out


class DenseModule:
    """Degreewise coordinates of a presented module, by rank-nullity."""

    def __init__(self, ring: DenseRing, gen_degrees, rel_degrees, rel_entries):
        self.ring = ring
        self.cover = DenseFree(ring, gen_degrees)
        self.rel_degrees = tuple(rel_degrees)
        self.rel_entries = rel_entries  # rel_entries[j][pos] -> term dict
        self._proj: dict = {}
        self._lift: dict = {}

    @classmethod
    def from_presented(cls, m: PresentedModule) -> "DenseModule":
        ring = _dense_ring(m.ring)
        pres = m.presentation
        rels = [
            [dict(pres.matrix[i][j].terms) for i in range(pres.target_rank)]
            for j in range(pres.source_rank)
        ]
        return cls(ring, m.gen_degrees, pres.source_degrees, rels)

    @property
    def is_free(self) -> bool:
        return not self.rel_degrees

    def rel_matrix(self, d: int) -> np.ndarray:
        """Relation columns in cover coordinates at degree d."""
        offs, total = self.cover.offsets(d)
        cols = []
        for j, b in enumerate(self.rel_degrees):
            sdim = self.ring.dim(d - b)
            if sdim == 0:
                continue
            block = np.zeros((total, sdim), dtype=np.int64)
            for i, a in enumerate(self.cover.degrees):
                terms = self.rel_entries[j][i]
                if not terms:
                    continue
                sub = self.ring.mult(terms, b - a, d - b)
                block[offs[i]: offs[i] + sub.shape[0], :] = sub
            cols.append(block)
        if not cols:
            return np.zeros((total, 0), dtype=np.int64)
        return np.concatenate(cols, axis=1)

    def proj(self, d: int):
        """Quotient coordinates at degree d; None means cover coordinates."""
        if self.is_free:
            return None
        if d not in self._proj:
            self._proj[d] = left_nullspace_mod(self.rel_matrix(d), self.ring.p)
        return self._proj[d]

    def lift(self, d: int):
        if self.is_free:
            return None
        if d not in self._lift:
            u = self.proj(d)
            x = solve_mod(u, np.eye(u.shape[0], dtype=np.int64), self.ring.p)
            if x is None:
                raise EngineBug("module coordinate projection is not surjective")
            self._lift[d] = x
        return self._lift[d]

    def dim(self, d: int) -> int:
        if self.is_free:
            return self.cover.dim(d)
        return self.proj(d).shape[0]

    def mult_by(self, terms: dict, t: int, s: int) -> np.ndarray:
        """Action of a degree-t ring element as a matrix M_s -> M_{s+t}."""
        tgt_offs, tgt_total = self.cover.offsets(s + t)
        src_offs, src_total = self.cover.offsets(s)
        big = np.zeros((tgt_total, src_total), dtype=np.int64)
        if terms:
            for i, a in enumerate(self.cover.degrees):
                sub = self.ring.mult(terms, t, s - a)
                big[tgt_offs[i]: tgt_offs[i] + sub.shape[0],
                    src_offs[i]: src_offs[i] + sub.shape[1]] = sub
        if self.is_free:
            return big
        out = matmul_mod(self.proj(s + t), big, self.ring.p)
        return matmul_mod(out, self.lift(s), self.ring.p)

    def min_gen_degree(self) -> int:
        return min(self.cover.degrees) if self.cover.degrees else 0

    def top_degree(self, slack: int = 6):
        """Last nonzero degree when the module has finite support, else None.

        Certified: a graded module generated in degrees <= g that vanishes
        in any single degree >= g vanishes above it too.
        """
        if not self.cover.degrees:
            return self.min_gen_degree() - 1
        if self.is_free:
            return None
        gmax = max(self.cover.degrees)
        top = None
        for d in range(min(self.cover.degrees), gmax + slack + 1):
            if self.dim(d) > 0:
                top = d
            elif d >= gmax:
                # certified finite; a zero module reports just below its cover
                return top if top is not None else min(self.cover.degrees) - 1
        return None


class _RankTracker:
    """Incremental row-echelon span of a growing set of vectors mod p."""

    def __init__(self, p: int):
        self.p = p
        self.rows: list = []  # (pivot index, normalized reduced vector)

    def add(self, vec: np.ndarray) -> bool:
        v = vec % self.p
        for piv, row in self.rows:
            c = v[piv]
            if c:
                v = (v - c * row) % self.p
        nz = np.nonzero(v)[0]
        if len(nz) == 0:
            return False
        piv = int(nz[0])
        v = (v * pow(int(v[piv]), -1, self.p)) % self.p
        self.rows.append((piv, v))
        self.rows.sort(key=lambda r: r[0])
        return True


class DenseResolution:
    """A free resolution rebuilt degree by degree over the dense ring.

    F_0 is the presentation cover and F_1 the relation columns; each further
    F_{j+1} lists minimal generators of ker(d_j), found per degree as a
    complement of the span of variable multiples of generators already
    found.  Generators are stored as coordinate vectors in the free module
    one step below.
    """

    def __init__(self, module: DenseModule):
        self.module = module
        self.ring = module.ring
        gens1 = [(b, self._rel_vector(j, b))
                 for j, b in enumerate(module.rel_degrees)]
        self.gens: list = [None, gens1]
        self.frees = [module.cover, DenseFree(self.ring, [b for b, _ in gens1])]
        self._bounds: dict = {}  # step -> certified search bound
        self._mm: dict = {}

    def _rel_vector(self, j: int, b: int) -> np.ndarray:
        cover = self.module.cover
        offs, total = cover.offsets(b)
        out = np.zeros(total, dtype=np.int64)
        for i, a in enumerate(cover.degrees):
            terms = self.module.rel_entries[j][i]
            if not terms:
                continue
            col = self.ring.mult(terms, b - a, 0)
            out[offs[i]: offs[i] + col.shape[0]] = col[:, 0]
        return out

    def degrees(self, i: int):
        if i == 0:
            return self.module.cover.degrees
        if i < len(self.gens):
            return tuple(e for e, _ in self.gens[i])
        raise EngineBug("resolution step not built")

    def map_matrix(self, i: int, d: int) -> np.ndarray:
        """Differential F_i -> F_{i-1} in coordinates at degree d."""
        key = (i, d)
        if key in self._mm:
            return self._mm[key]
        below = self.frees[i - 1]
        _, tgt_total = below.offsets(d)
        cols = []
        for e, vec in self.gens[i]:
            if d < e:
                continue
            for terms in self.ring.basis_terms(d - e):
                cols.append(below.act(vec, e, terms, d - e))
        if cols:
            out = np.stack(cols, axis=1)
        else:
            out = np.zeros((tgt_total, 0), dtype=np.int64)
        self._mm[key] = out
        return out

    def ensure(self, steps: int, bound: int, margin: int):
        """Build F_2..F_steps complete for all degrees <= bound.

        margin > 0 demands a window of generator-free degrees below the
        bound as a completeness certificate; margin 0 means the caller's
        window makes truncation at the bound rigorous.
        """
        rebuild_from = None
        for j in range(2, steps + 1):
            if j >= len(self.gens) or self._bounds.get(j, -1) < bound:
                rebuild_from = j
                break
        if rebuild_from is None:
            return
        del self.gens[rebuild_from:]
        del self.frees[rebuild_from:]
        self._mm = {k: v for k, v in self._mm.items() if k[0] < rebuild_from}
        for j in range(rebuild_from, steps + 1):
            self._build_step(j, bound, margin)

    def _build_step(self, j: int, bound: int, margin: int):
        p = self.ring.p
        free_prev = self.frees[j - 1]
        if not free_prev.degrees:
            self.gens.append([])
            self.frees.append(DenseFree(self.ring, []))
            self._bounds[j] = bound
            return
        lo = min(self.degrees(j - 1))
        variables = self.ring.basis_terms(1)
        found: list = []
        prev_basis: list = []  # span of found generators, one degree back
        last_new = None
        for d in range(lo, bound + 1):
            kern = nullspace_mod(self.map_matrix(j - 1, d), p)
            tracker = _RankTracker(p)
            basis_cols = []
            for col in prev_basis:
                for terms in variables:
                    w = free_prev.act(col, d - 1, terms, 1)
                    if tracker.add(w):
                        basis_cols.append(w)
            for c in range(kern.shape[1]):
                v = kern[:, c]
                if tracker.add(v):
                    found.append((d, v))
                    basis_cols.append(v)
                    last_new = d
            prev_basis = basis_cols
        if margin > 0 and last_new is not None and last_new > bound - margin:
            raise DegreeCapExceeded(
                f"oracle kernel generators still appearing at degree {last_new}"
                f" near the search bound {bound}"
            )
        self.gens.append(found)
        self.frees.append(DenseFree(self.ring, [e for e, _ in found]))
        self._bounds[j] = bound


# -- module-level caches ------------------------------------------------------------


_RING_CACHE: dict = {}
_MODULE_CACHE: dict = {}
_RESOLUTION_CACHE: dict = {}


def _dense_ring(ctx: RingContext) -> DenseRing:
    if ctx not in _RING_CACHE:
        _RING_CACHE[ctx] = DenseRing(ctx)
    return _RING_CACHE[ctx]


def module_key(m: PresentedModule):
    return (m.ring, m.gen_degrees, m.presentation.source_degrees,
            tuple(tuple(e.render() for e in row) for row in m.presentation.matrix))


def _dense_module(m: PresentedModule) -> DenseModule:
    key = module_key(m)
    if key not in _MODULE_CACHE:
        _MODULE_CACHE[key] = DenseModule.from_presented(m)
    return _MODULE_CACHE[key]


def _dense_resolution(m: PresentedModule) -> DenseResolution:
    key = module_key(m)
    if key not in _RESOLUTION_CACHE:
        _RESOLUTION_CACHE[key] = DenseResolution(_dense_module(m))
    return _RESOLUTION_CACHE[key]


def oracle_clear_caches():
    _RING_CACHE.clear()
    _MODULE_CACHE.clear()
    _RESOLUTION_CACHE.clear()


# -- homology dimensions -------------------------------------------------------------


def _coords_to_terms(ring: DenseRing, coords: np.ndarray, t: int) -> dict:
    """A_t coordinate vector -> representative term dict via the lift."""
    p = ring.p
    monos = monomials(ring.nvars, t)
    if ring.proj(t) is None:
        return {monos[i]: int(coords[i]) % p for i in range(len(coords))
                if coords[i] % p}
    q = matmul_mod(ring.lift(t), coords.reshape(-1, 1), p).ravel()
    return {monos[i]: int(q[i]) for i in range(len(q)) if q[i]}


def _hom_matrix(res: DenseResolution, n: DenseModule, i: int, d: int) -> np.ndarray:
    """Hom(F_{i-1}, N)_d -> Hom(F_i, N)_d."""
    src_degs = res.degrees(i - 1)
    tgt_degs = res.degrees(i)
    src_dims = [n.dim(d + a) for a in src_degs]
    tgt_dims = [n.dim(d + e) for e in tgt_degs]
    out = np.zeros((sum(tgt_dims), sum(src_dims)), dtype=np.int64)
    if not out.size:
        return out
    below = res.frees[i - 1]
    row0 = 0
    for gi, (e, vec) in enumerate(res.gens[i]):
        offs, _ = below.offsets(e)
        col0 = 0
        for hj, a in enumerate(src_degs):
            adim = res.ring.dim(e - a)
            if adim and tgt_dims[gi] and src_dims[hj]:
                mu = vec[offs[hj]: offs[hj] + adim]
                if mu.any():
                    terms = _coords_to_terms(res.ring, mu, e - a)
                    out[row0: row0 + tgt_dims[gi], col0: col0 + src_dims[hj]] = \
                        n.mult_by(terms, e - a, d + a)
            col0 += src_dims[hj]
        row0 += tgt_dims[gi]
    return out


def _tor_matrix(res: DenseResolution, n: DenseModule, i: int, d: int) -> np.ndarray:
    """(F_i (x) N)_d -> (F_{i-1} (x) N)_d."""
    src_degs = res.degrees(i)
    tgt_degs = res.degrees(i - 1)
    src_dims = [n.dim(d - e) for e in src_degs]
    tgt_dims = [n.dim(d - a) for a in tgt_degs]
    out = np.zeros((sum(tgt_dims), sum(src_dims)), dtype=np.int64)
    if not out.size:
        return out
    below = res.frees[i - 1]
    tgt_off = [0]
    for x in tgt_dims:
        tgt_off.append(tgt_off[-1] + x)
    col0 = 0
    for gi, (e, vec) in enumerate(res.gens[i]):
        offs, _ = below.offsets(e)
        for hj, a in enumerate(tgt_degs):
            adim = res.ring.dim(e - a)
            if adim and src_dims[gi] and tgt_dims[hj]:
                mu = vec[offs[hj]: offs[hj] + adim]
                if mu.any():
                    terms = _coords_to_terms(res.ring, mu, e - a)
                    out[tgt_off[hj]: tgt_off[hj + 1], col0: col0 + src_dims[gi]] = \
                        n.mult_by(terms, e - a, d - e)
        col0 += src_dims[gi]
    return out


def _spot_dim(mid_dim: int, incoming, outgoing, p: int) -> int:
    r_in = rank_mod(incoming, p) if incoming is not None else 0
    r_out = rank_mod(outgoing, p) if outgoing is not None else 0
    val = mid_dim - r_in - r_out
    if val < 0:
        raise EngineBug("negative homology dimension in the dense oracle")
    return val


# -- public checks ------------------------------------------------------------------


def oracle_module_hf(m: PresentedModule, lo: int, hi: int) -> dict:
    """Hilbert values of a presented module by pure rank-nullity."""
    dm = _dense_module(m)
    return {d: dm.dim(d) for d in range(lo, hi + 1)}


def oracle_tor_hf(m: PresentedModule, n: PresentedModule, i: int,
                  lo: int, hi: int) -> dict:
    """dim Tor_i(m, n)_d for lo <= d <= hi, by rank-nullity.

    The truncation is rigorous: resolution generators in degrees above
    hi minus the least generator degree of n tensor to zero in the window.
    """
    res = _dense_resolution(m)
    dn = _dense_module(n)
    if not dn.cover.degrees or not res.degrees(0):
        return {d: 0 for d in range(lo, hi + 1)}
    bound = max(hi - dn.min_gen_degree(), min(res.degrees(0)))
    res.ensure(i + 1, bound, 0)
    p = res.ring.p
    out = {}
    for d in range(lo, hi + 1):
        mid = sum(dn.dim(d - e) for e in res.degrees(i))
        if mid == 0:
            out[d] = 0
            continue
        outgoing = _tor_matrix(res, dn, i, d) if i >= 1 else None
        incoming = _tor_matrix(res, dn, i + 1, d)
        if outgoing is not None and incoming.size and outgoing.size:
            if matmul_mod(outgoing, incoming, p).any():
                raise EngineBug("oracle tensor complex does not compose to zero")
        out[d] = _spot_dim(mid, incoming, outgoing, p)
    return out


def oracle_ext_hf(m: PresentedModule, n: PresentedModule, i: int,
                  lo: int, hi: int, search_bound: int | None = None) -> dict:
    """dim Ext^i(m, n)_d for lo <= d <= hi, by rank-nullity.

    With n of certified finite support the resolution truncation is
    rigorous; otherwise the generator search relies on the margin
    certificate and refuses loudly when it cannot be met.
    """
    res = _dense_resolution(m)
    dn = _dense_module(n)
    if not dn.cover.degrees or not res.degrees(0):
        return {d: 0 for d in range(lo, hi + 1)}
    lo0 = min(res.degrees(0))
    top = dn.top_degree()
    if top is not None:
        res.ensure(i + 1, max(top - lo, lo0), 0)
    else:
        margin = res.ring.nvars + 2
        maxgen = max(res.degrees(1), default=lo0)
        bound = search_bound if search_bound is not None else \
            max(hi, maxgen) + i + margin + 2
        for attempt in (0, 1):
            try:
                res.ensure(i + 1, bound, margin)
                break
            except DegreeCapExceeded:
                if attempt or search_bound is not None:
                    raise
                bound += max(4, bound // 2)
    p = res.ring.p
    out = {}
    for d in range(lo, hi + 1):
        mid = sum(dn.dim(d + e) for e in res.degrees(i))
        if mid == 0:
            out[d] = 0
            continue
        incoming = _hom_matrix(res, dn, i, d) if i >= 1 else None
        outgoing = _hom_matrix(res, dn, i + 1, d)
        if incoming is not None and incoming.size and outgoing.size:
            if matmul_mod(outgoing, incoming, p).any():
                raise EngineBug("oracle hom complex does not compose to zero")
        out[d] = _spot_dim(mid, incoming, outgoing, p)
    return out
