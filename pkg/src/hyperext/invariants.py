"""Derived-functor invariants of presented modules.

Ext and Tor are homology of Hom(resolution, N) and resolution (x) N taken at
one spot, so each call costs two block eliminations.  On top of them sit the
integer invariants: grade (first nonvanishing Ext against the ring), the
grade-indexed dual module coker(d_g transposed), projective dimension with an
explicit three-way answer, depth against the residue field, and the
alternating-sum families chi / xi_bar plus the stable even-odd Tor difference
theta over hypersurfaces.

All hypotheses are enforced loudly: finite length where a sum needs it,
regular or hypersurface ring where a definition needs it.
"""

from __future__ import annotations

from .errors import EngineBug, HypothesisViolation, RingMismatchError
from .groebner import DEFAULT_DEGREE_CAP
from .modules import (
    INFINITE,
    BlockModule,
    PresentedModule,
    block_as_module,
    free_module,
    hom_into,
    homology_at,
    k_module,
    tensor_with,
    zero_module,
)
from .resolution import detect_periodicity, minimal_resolution

_recorder = None


def set_recorder(callback):
    """Install a hook called as callback(kind, M, N, i, result) on every
    Ext/Tor computation; used to replay computations against an independent
    checker."""
    global _recorder
    _recorder = callback


def clear_recorder():
    global _recorder
    _recorder = None


def _record(kind, m, n, i, result):
    if _recorder is not None:
        _recorder(kind, m, n, i, result)


def _require_same_ring(m: PresentedModule, n: PresentedModule):
    if m.ring != n.ring:
        raise RingMismatchError("modules live over different ring contexts")


def ext(m: PresentedModule, n: PresentedModule, i: int,
        degree_cap: int = DEFAULT_DEGREE_CAP) -> PresentedModule:
    """Ext^i(m, n) as a presented module."""
    _require_same_ring(m, n)
    if i < 0:
        raise ValueError("negative homological index")
    res = minimal_resolution(m, i + 1, degree_cap)
    d_in = res.map_at(i) if i >= 1 else None
    d_out = res.map_at(i + 1)
    if d_in is None and i >= 1 and res.complete and i > len(res.maps):
        result = zero_module(m.ring)
    elif d_in is None and d_out is None:
        # free module at spot zero, or just past the end of a finite resolution
        if i == 0:
            cover = tuple(-d for d in res.free_degrees(0))
            result = block_as_module(BlockModule(n, cover))
        else:
            result = zero_module(m.ring)
    else:
        incoming = hom_into(d_in, n) if d_in is not None else None
        outgoing = hom_into(d_out, n) if d_out is not None else None
        result = homology_at(incoming, outgoing, degree_cap)
    _record("ext", m, n, i, result)
    return result


def tor(m: PresentedModule, n: PresentedModule, i: int,
        degree_cap: int = DEFAULT_DEGREE_CAP) -> PresentedModule:
    """Tor_i(m, n) as a presented module."""
    _require_same_ring(m, n)
    if i < 0:
        raise ValueError("negative homological index")
    res = minimal_resolution(m, i + 1, degree_cap)
    d_out = res.map_at(i) if i >= 1 else None
    d_in = res.map_at(i + 1)
    if d_out is None and i >= 1 and res.complete and i > len(res.maps):
        result = zero_module(m.ring)
    elif d_in is None and d_out is None:
        if i == 0:
            result = block_as_module(BlockModule(n, res.free_degrees(0)))
        else:
            result = zero_module(m.ring)
    else:
        incoming = tensor_with(d_in, n) if d_in is not None else None
        outgoing = tensor_with(d_out, n) if d_out is not None else None
        result = homology_at(incoming, outgoing, degree_cap)
    _record("tor", m, n, i, result)
    return result


# -- grade and the dual module ------------------------------------------------------


def ring_module(ring) -> PresentedModule:
    return free_module(ring, (0,))


def grade(m: PresentedModule, degree_cap: int = DEFAULT_DEGREE_CAP):
    """Smallest i with Ext^i(m, ring) nonzero; INFINITE for the zero module."""
    if m.is_zero():
        return INFINITE
    r = ring_module(m.ring)
    for i in range(m.ring.dim + 1):
        if not ext(m, r, i, degree_cap).is_zero():
            return i
    raise EngineBug("nonzero module with Ext against the ring vanishing up to dim")


def e_module(m: PresentedModule, degree_cap: int = DEFAULT_DEGREE_CAP) -> PresentedModule:
    """coker of the transposed differential at the grade spot.

    For grade zero this is the dual of the zeroth cover, a free module.
    """
    g = grade(m, degree_cap)
    if g is INFINITE:
        raise HypothesisViolation("the zero module has no grade-indexed dual")
    res = minimal_resolution(m, max(g, 1), degree_cap)
    if g == 0:
        return free_module(m.ring, tuple(-d for d in res.free_degrees(0)))
    d_g = res.map_at(g)
    if d_g is None:
        raise EngineBug("grade exceeds the computed resolution")
    return PresentedModule(d_g.dual())


# -- projective dimension and depth ----------------------------------------------------


def pdim(m: PresentedModule, length_cap: int | None = None,
         degree_cap: int = DEFAULT_DEGREE_CAP):
    """Projective dimension: an int, INFINITE (certified), or None.

    Over a regular context the resolution must terminate by the variable
    count.  Over a hypersurface, INFINITE is returned only on a certified
    periodic tail; None means the window was too short to decide.
    """
    ring = m.ring
    if length_cap is None:
        length_cap = ring.nvars + (1 if not ring.is_quotient else 6)
    res = minimal_resolution(m, length_cap, degree_cap)
    if res.complete:
        return res.finite_pdim()
    if not ring.is_quotient:
        raise EngineBug("resolution over a regular ring passed the global bound")
    cert = detect_periodicity(res)
    if cert is not None:
        return INFINITE
    return None


_K_CACHE: dict = {}


def residue_field_module(ring) -> PresentedModule:
    """k as a module over the context, shared so its resolution is reused."""
    if ring not in _K_CACHE:
        _K_CACHE[ring] = k_module(ring)
    return _K_CACHE[ring]


def depth(m: PresentedModule, degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    """Smallest i with Ext^i(k, m) nonzero."""
    if m.is_zero():
        raise HypothesisViolation("depth of the zero module is undefined")
    k = residue_field_module(m.ring)
    for i in range(m.ring.dim + 1):
        if not ext(k, m, i, degree_cap).is_zero():
            return i
    raise EngineBug("depth exceeded the ring dimension")


# -- numerical families -------------------------------------------------------------------


def _finite_length(module: PresentedModule, what: str) -> int:
    val = module.length()
    if val is INFINITE:
        raise HypothesisViolation(f"{what} has infinite length")
    return val


def chi(m: PresentedModule, n: PresentedModule, j: int,
        degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    """Alternating Tor-length sum from spot j upward, over a regular context.

    chi_j = sum_{i >= j} (-1)^(i-j) * length Tor_i(m, n); the sum stops at
    the projective dimension, which is finite here.
    """
    if m.ring.is_quotient:
        raise HypothesisViolation("the alternating Tor sum needs a regular context")
    pd = pdim(m, degree_cap=degree_cap)
    if pd is INFINITE or pd is None:
        raise EngineBug("finite projective dimension expected over a regular ring")
    total = 0
    for i in range(j, pd + 1):
        ell = _finite_length(tor(m, n, i, degree_cap), f"Tor_{i}")
        total += ell if (i - j) % 2 == 0 else -ell
    return total


def xi_bar(m: PresentedModule, n: PresentedModule, j: int,
           degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    """Alternating Ext-length sum downward from spot j.

    xi_bar_j = sum_{i = 0..j} (-1)^i * length Ext^(j-i)(m, n), reading the
    sign of the i-th summand as (-1)^i.
    """
    total = 0
    for i in range(j + 1):
        ell = _finite_length(ext(m, n, j - i, degree_cap), f"Ext^{j - i}")
        total += ell if i % 2 == 0 else -ell
    return total


def theta(m: PresentedModule, n: PresentedModule,
          degree_cap: int = DEFAULT_DEGREE_CAP,
          max_length: int | None = None) -> int:
    """Stable even-minus-odd Tor length difference over a hypersurface.

    Zero for finite projective dimension.  Otherwise the resolution tail is
    certified two-periodic first, the window start is placed past the
    certificate, and the value is computed twice (two consecutive even spots)
    and cross-checked.
    """
    _require_same_ring(m, n)
    ring = m.ring
    if not ring.is_quotient:
        raise HypothesisViolation("the stable Tor difference needs a hypersurface context")
    if max_length is None:
        max_length = 2 * ring.nvars + 10
    first_try = ring.nvars + 4
    res = minimal_resolution(m, first_try, degree_cap)
    if res.complete:
        return 0
    cert = detect_periodicity(res)
    if cert is None:
        res = minimal_resolution(m, max_length, degree_cap)
        if res.complete:
            return 0
        cert = detect_periodicity(res)
    if cert is None:
        raise HypothesisViolation(
            f"no certified periodic tail within {max_length} steps"
        )
    j0 = cert.start + 2
    if j0 % 2 == 1:
        j0 += 1
    minimal_resolution(m, j0 + 4, degree_cap)
    lengths = []
    for i in range(j0, j0 + 4):
        lengths.append(_finite_length(tor(m, n, i, degree_cap), f"Tor_{i}"))
    first = lengths[0] - lengths[1]
    second = lengths[2] - lengths[3]
    if first != second:
        raise EngineBug("stable Tor difference disagrees across consecutive windows")
    return first


# -- structured summaries --------------------------------------------------------------


def module_summary(m: PresentedModule, degree_cap: int = DEFAULT_DEGREE_CAP) -> dict:
    """Invariant bundle for one module, with internal consistency checks."""
    ring = m.ring
    out: dict = {
        "ring": ring.describe(),
        "module": m.describe(),
        "is_zero": m.is_zero(),
    }
    if m.is_zero():
        return out
    g = grade(m, degree_cap)
    pd = pdim(m, degree_cap=degree_cap)
    dep = depth(m, degree_cap)
    dim = m.dimension()
    length = m.length()
    out.update(
        {
            "grade": g,
            "pdim": _encode_extended(pd),
            "depth": dep,
            "dim": dim,
            "length": _encode_extended(length),
        }
    )
    if g is not INFINITE and g > ring.dim:
        raise EngineBug("grade exceeds the ring dimension")
    if isinstance(pd, int):
        if dep + pd != ring.dim:
            raise EngineBug("depth plus finite projective dimension missed the ring dimension")
    res = minimal_resolution(m, 0, degree_cap)
    out["betti"] = {str(k): v for k, v in sorted(res.graded_betti().items())}
    return out


def _encode_extended(value):
    if value is INFINITE:
        return "infinite"
    if value is None:
        return "inconclusive"
    return value
