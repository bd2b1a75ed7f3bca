"""Minimal graded free resolutions, complex minimization, and periodicity.

Resolutions are computed step by step: minimize the presentation, then take
minimal generators of successive kernels.  Because every step uses minimal
generators, the differentials never acquire unit entries; this is asserted,
not re-achieved by cancellation.

Over a hypersurface quotient R = Q/(f) an infinite resolution eventually
becomes two-periodic.  detect_periodicity certifies this with exact algebra:
the composite of two consecutive lifted differentials is divisible by f, and
once the quotient matrices are graded-invertible the tail is governed by a
matrix factorization (a, b) with a*b = b*a = f*identity, verified entrywise
over the ambient polynomial ring.
"""

from __future__ import annotations

import threading
from typing import NamedTuple

import numpy as np

from .errors import EngineBug, HypothesisViolation
from .groebner import DEFAULT_DEGREE_CAP, vec_degree
from .linalg import invert_mod
from .modules import (
    GradedFreeMap,
    PresentedModule,
    _kernel_vectors,
    _minimal_generators,
    ring_as_module,
    tensor_with,
)
from .poly import Poly

DEFAULT_LENGTH_MARGIN = 6


class FreeResolution:
    """A minimal free resolution, extendable on demand.

    maps[i] is the differential F_{i+1} -> F_i; degrees[i] lists the
    generator degrees of F_i.  ``complete`` means the next kernel is zero,
    so the recorded data is the entire resolution.
    """

    def __init__(self, module: PresentedModule, degree_cap=DEFAULT_DEGREE_CAP):
        self.module = module
        self.ring = module.ring
        self.degree_cap = degree_cap
        self._lock = threading.RLock()
        pres = _minimal_presentation(module, degree_cap)
        self.degrees: list[tuple] = [pres.target_degrees]
        self.maps: list[GradedFreeMap] = []
        self.complete = False
        if pres.source_rank == 0:
            self.complete = True
        elif pres.target_rank == 0:
            raise EngineBug("nonzero relations over a zero cover")
        else:
            self.maps.append(pres)
            self.degrees.append(pres.source_degrees)

    def __repr__(self):
        tail = "complete" if self.complete else "truncated"
        return f"<FreeResolution ranks {self.ranks()} {tail}>"

    # -- indexing -----------------------------------------------------------------

    def computed_length(self) -> int:
        """Largest homological index with computed cover (Fـi for i <= this)."""
        return len(self.degrees) - 1

    def rank(self, i: int) -> int:
        if i < 0:
            return 0
        if i <= self.computed_length():
            return len(self.degrees[i])
        if self.complete:
            return 0
        raise EngineBug(f"rank at {i} not computed (length {self.computed_length()})")

    def ranks(self):
        return [len(d) for d in self.degrees]

    def free_degrees(self, i: int):
        if i <= self.computed_length():
            return self.degrees[i]
        if self.complete:
            return ()
        raise EngineBug(f"cover at {i} not computed")

    def map_at(self, i: int):
        """Differential F_i -> F_{i-1} for i >= 1; None when it is zero."""
        if 1 <= i <= len(self.maps):
            return self.maps[i - 1]
        if self.complete:
            return None
        raise EngineBug(f"differential at {i} not computed")

    def graded_betti(self) -> dict:
        out: dict = {}
        for i, degs in enumerate(self.degrees):
            for d in degs:
                out[(i, d)] = out.get((i, d), 0) + 1
        return out

    def finite_pdim(self):
        """Projective dimension when the resolution is complete, else None.

        Every computed cover is nonzero (a step with no kernel generators
        marks the resolution complete instead), so the answer is the map
        count.
        """
        if not self.complete:
            return None
        return len(self.maps)

    # -- construction ---------------------------------------------------------------

    def extend(self, length: int) -> "FreeResolution":
        """Compute differentials up to homological index ``length``."""
        with self._lock:
            while not self.complete and self.computed_length() < length:
                self._step()
        return self

    def _step(self):
        last = self.maps[-1]
        block = tensor_with(last, ring_as_module(self.ring))
        gens = _kernel_vectors(block, self.degree_cap)
        if not gens:
            self.complete = True
            return
        src = tuple(vec_degree(g, last.source_degrees) for g in gens)
        nxt = GradedFreeMap.from_columns(self.ring, gens, src, last.source_degrees)
        if not last.compose(nxt).is_zero():
            raise EngineBug("resolution differentials do not compose to zero")
        _assert_no_units(nxt)
        self.maps.append(nxt)
        self.degrees.append(src)


def minimal_resolution(module: PresentedModule, length: int,
                       degree_cap=DEFAULT_DEGREE_CAP) -> FreeResolution:
    """The minimal resolution of ``module``, computed through index ``length``.

    Cached on the module and extended in place when a longer stretch is
    requested later.
    """
    res = module._cached("resolution", lambda: FreeResolution(module, degree_cap))
    return res.extend(length)


def _assert_no_units(m: GradedFreeMap):
    for row in m.matrix:
        for e in row:
            if not e.is_zero() and e.is_constant():
                raise EngineBug("minimal-step differential has a unit entry")


def _minimal_presentation(module: PresentedModule, degree_cap) -> GradedFreeMap:
    pres = module.presentation
    if _has_unit_entry(pres):
        pres = minimize_chain([pres])[0]
    ring = module.ring
    cols = pres.columns()
    gens = _minimal_generators(ring, cols, pres.target_degrees, (), degree_cap)
    degs = tuple(vec_degree(g, pres.target_degrees) for g in gens)
    return GradedFreeMap.from_columns(ring, gens, degs, pres.target_degrees)


def _has_unit_entry(m: GradedFreeMap) -> bool:
    return any(not e.is_zero() and e.is_constant() for row in m.matrix for e in row)


# -- general complex minimization ----------------------------------------------------


def minimize_chain(maps):
    """Cancel unit entries across a chain of composable graded maps.

    maps[k] is F_{k+1} -> F_k.  Gaussian cancellation of a unit at (i, j) in
    one map deletes row j from the incoming neighbour and column i from the
    outgoing neighbour, preserving the homotopy type.  Returns new maps.
    """
    if not maps:
        return []
    ring = maps[0].ring
    p = ring.p
    mats = [[list(row) for row in m.matrix] for m in maps]
    degs = [list(maps[0].target_degrees)] + [list(m.source_degrees) for m in maps]
    while True:
        spot = _find_unit(mats)
        if spot is None:
            break
        k, i, j = spot
        mat = mats[k]
        u = mat[i][j].constant_coeff()
        uinv = pow(u, -1, p)
        rows = [a for a in range(len(mat)) if a != i]
        cols = [b for b in range(len(mat[0])) if b != j]
        new = []
        for a in rows:
            row = []
            for b in cols:
                corr = mat[a][j] * mat[i][b]
                row.append(ring.reduce_poly(mat[a][b] - corr.scale(uinv)))
            new.append(row)
        mats[k] = new
        if k + 1 < len(mats):
            mats[k + 1] = [row for a, row in enumerate(mats[k + 1]) if a != j]
        if k - 1 >= 0:
            mats[k - 1] = [[e for b, e in enumerate(row) if b != i] for row in mats[k - 1]]
        del degs[k][i]
        del degs[k + 1][j]
    out = []
    for k, mat in enumerate(mats):
        out.append(GradedFreeMap(ring, mat, tuple(degs[k + 1]), tuple(degs[k])))
    return out


def _find_unit(mats):
    for k, mat in enumerate(mats):
        for i, row in enumerate(mat):
            for j, e in enumerate(row):
                if not e.is_zero() and e.is_constant():
                    return (k, i, j)
    return None


# -- periodicity and matrix factorizations -----------------------------------------------


class MatrixFactorization(NamedTuple):
    """Square matrices over the ambient ring with a*b = b*a = f*identity."""

    a: tuple  # rows of Poly
    b: tuple
    a_source_degrees: tuple
    a_target_degrees: tuple
    f: Poly

    def verify(self) -> bool:
        n = len(self.a)
        ab = _mat_mul(self.a, self.b)
        ba = _mat_mul(self.b, self.a)
        return _is_scaled_identity(ab, self.f) and _is_scaled_identity(ba, self.f)


class Periodicity(NamedTuple):
    """Certificate that a resolution repeats with period two from ``start``.

    F_{i+2} is isomorphic to F_i twisted down by ``twist`` for every
    i >= start; the matrix factorization generates the tail exactly.
    """

    start: int
    twist: int
    factorization: MatrixFactorization
    window: tuple  # (first, last) indices j with C_j checked invertible


def detect_periodicity(res: FreeResolution):
    """Certified eventual two-periodicity of a hypersurface resolution.

    Returns a Periodicity, or None when the computed window is too short to
    certify one.  Raises over a regular ring, where resolutions are finite
    and the question is vacuous.
    """
    ring = res.ring
    if not ring.is_quotient:
        raise HypothesisViolation("periodicity is a hypersurface phenomenon")
    if res.complete:
        return None
    f = ring.hypersurface
    d = ring.f_degree()
    amb = ring.ambient()
    L = len(res.maps)
    if L < 3:
        return None
    cmats = {}
    for j in range(1, L):
        cmats[j] = _c_matrix(res, j, f)
    invertible = {}
    inverses = {}
    for j in range(1, L):
        inv = _graded_inverse(cmats[j], res.degrees[j + 1],
                              tuple(t + d for t in res.degrees[j - 1]), ring.p, amb)
        invertible[j] = inv is not None
        inverses[j] = inv
    # associativity gives C_{j-1} d_{j+1} = d_{j-1} C_j; assert on the window
    for j in range(2, L):
        lhs = _mat_mul(cmats[j - 1], _rows(res.maps[j]))
        rhs = _mat_mul(_rows(res.maps[j - 2]), cmats[j])
        if lhs != rhs:
            raise EngineBug("periodicity intertwining identity failed")
    for t in range(0, L - 2):
        if not all(invertible[j] for j in range(t + 1, L)):
            continue
        if len(res.degrees[t]) != len(res.degrees[t + 1]):
            continue
        a = _rows(res.maps[t])
        b = _mat_mul(_rows(res.maps[t + 1]), inverses[t + 1])
        if any(not e.is_zero() and e.is_constant() for row in b for e in row):
            continue
        mf = MatrixFactorization(
            a,
            b,
            res.degrees[t + 1],
            res.degrees[t],
            f,
        )
        if not mf.verify():
            raise EngineBug("matrix factorization identities failed exactly")
        return Periodicity(t, d, mf, (t + 1, L - 1))
    return None


def _rows(m: GradedFreeMap) -> tuple:
    return m.matrix


def _c_matrix(res: FreeResolution, j: int, f: Poly) -> tuple:
    """(lift(d_j) * lift(d_{j+1})) / f, exact division entrywise."""
    prod = _mat_mul(_rows(res.maps[j - 1]), _rows(res.maps[j]))
    out = []
    for row in prod:
        out.append(tuple(_divide_exact(e, f) for e in row))
    return tuple(out)


def _divide_exact(g: Poly, f: Poly) -> Poly:
    """g / f when f divides g exactly; EngineBug otherwise."""
    ring = g.ring
    if g.is_zero():
        return ring.zero()
    p = ring.p
    key = ring.order.key
    fe, fc = f.leading_term()
    fcinv = pow(fc, -1, p)
    work = dict(g.terms)
    q: dict = {}
    while work:
        e = max(work, key=key)
        mono = tuple(x - y for x, y in zip(e, fe))
        if any(m < 0 for m in mono):
            raise EngineBug("inexact division by the hypersurface polynomial")
        qc = work[e] * fcinv % p
        q[mono] = qc
        for e2, c2 in f.terms.items():
            t = tuple(x + y for x, y in zip(e2, mono))
            nc = (work.get(t, 0) - qc * c2) % p
            if nc:
                work[t] = nc
            else:
                work.pop(t, None)
    return Poly(ring, q)


def _mat_mul(a, b):
    """Plain polynomial matrix product, no quotient reduction."""
    if not a:
        return ()
    inner = len(a[0])
    if inner and len(b) != inner:
        raise EngineBug("matrix shape mismatch")
    ncols = len(b[0]) if b else 0
    ring = a[0][0].ring if a[0] else (b[0][0].ring if b and b[0] else None)
    out = []
    for row in a:
        new = []
        for j in range(ncols):
            acc = ring.zero()
            for k in range(inner):
                x, y = row[k], b[k][j]
                if x.is_zero() or y.is_zero():
                    continue
                acc = acc + x * y
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def _is_scaled_identity(mat, f: Poly) -> bool:
    for i, row in enumerate(mat):
        for j, e in enumerate(row):
            want = f if i == j else None
            if want is None:
                if not e.is_zero():
                    return False
            elif e != want:
                return False
    return True


def _graded_inverse(mat, src_degrees, tgt_degrees, p, amb):
    """Inverse of a graded square matrix over the polynomial ring, or None.

    Entry (i, j) is homogeneous of degree src[j] - tgt[i].  The matrix is
    invertible exactly when its degree-zero scalar part is invertible mod p;
    the inverse is the Neumann series against the positive-degree part,
    which is nilpotent because degrees are bounded.
    """
    n = len(src_degrees)
    if len(tgt_degrees) != n or len(mat) != n:
        return None
    if sorted(src_degrees) != sorted(tgt_degrees):
        return None
    if n == 0:
        return ()
    pr = amb.poly_ring
    scalar = np.zeros((n, n), dtype=np.int64)
    pos_part = [[pr.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            e = mat[i][j]
            if e.is_zero():
                continue
            if src_degrees[j] == tgt_degrees[i]:
                scalar[i, j] = e.constant_coeff()
            else:
                pos_part[i][j] = e
    inv0 = invert_mod(scalar, p)
    if inv0 is None:
        return None
    inv0_poly = tuple(
        tuple(pr.const(int(inv0[i, j])) for j in range(n)) for i in range(n)
    )
    neg_step = _mat_mul(inv0_poly, tuple(tuple(-e for e in row) for row in pos_part))
    total = [list(row) for row in inv0_poly]
    term = inv0_poly
    spread = max(src_degrees) - min(tgt_degrees) + 1
    for _ in range(spread + 1):
        term = _mat_mul(neg_step, term)
        if all(e.is_zero() for row in term for e in row):
            break
        for i in range(n):
            for j in range(n):
                total[i][j] = total[i][j] + term[i][j]
    else:
        raise EngineBug("graded inverse series failed to terminate")
    out = tuple(tuple(row) for row in total)
    prod = _mat_mul(mat, out)
    if not _is_scaled_identity(prod, pr.one()):
        raise EngineBug("graded inverse verification failed")
    return out
