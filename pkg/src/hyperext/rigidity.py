"""Executable forms of the vanishing theorems, with machine-readable verdicts.

Each checker verifies one statement on one concrete input and reports pass,
fail, inapplicable (hypotheses unmet), or inconclusive (caps hit).  A fail
always carries the full presentations needed to replay it.  The module also
houses the seeded random module generator and the campaign driver that the
CLI and the acceptance suite share.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import DegreeCapExceeded, HypothesisViolation, ShapingError
from .field import DEFAULT_PRIME
from .invariants import chi, depth, e_module, ext, grade, theta, tor, xi_bar
from .modules import (
    INFINITE,
    PresentedModule,
    free_module,
    present_module,
    restrict_to_ambient,
    ring_as_module,
    tensor_modules,
)
from .resolution import minimal_resolution
from .ring import RingContext, make_quotient, make_ring

PASS = "pass"
FAIL = "fail"
INAPPLICABLE = "inapplicable"
INCONCLUSIVE = "inconclusive"

PREFIX_HI = 10
DEFAULT_WEIGHTS = {"generic": 0.6, "finite-length": 0.2, "syzygy": 0.2}


@dataclass(frozen=True)
class CheckVerdict:
    check_name: str
    status: str
    witness: dict
    provenance: dict

    def as_dict(self) -> dict:
        return {
            "check": self.check_name,
            "status": self.status,
            "witness": self.witness,
            "provenance": self.provenance,
        }


def _enc(value):
    if value is INFINITE:
        return "infinite"
    return value


def _provenance(ring: RingContext, seed=None, **caps) -> dict:
    out = {"ring": ring.describe(), "caps": dict(caps)}
    if seed is not None:
        out["seed"] = seed
    return out


def _module_data(**mods) -> dict:
    return {name: m.describe() for name, m in mods.items()}


def _prefix_window(*mods, hi: int = PREFIX_HI):
    degs = [d for m in mods for d in m.gen_degrees]
    lo = min(degs) if degs else 0
    return min(lo, 0), hi


def _prefixes_match(a: PresentedModule, b: PresentedModule) -> tuple:
    lo, hi = _prefix_window(a, b)
    ha, hb = a.hf_range(lo, hi), b.hf_range(lo, hi)
    la, lb = a.length(), b.length()
    same_len = (la == lb) if (la is not INFINITE and lb is not INFINITE) else True
    return ha == hb and same_len, {
        "window": [lo, hi],
        "left_hf": list(ha.values()),
        "right_hf": list(hb.values()),
        "left_length": _enc(la),
        "right_length": _enc(lb),
    }


# -- checkers -----------------------------------------------------------------------


def check_ext_rigidity(m: PresentedModule, n: PresentedModule,
                       i_max: int | None = None, seed=None) -> CheckVerdict:
    """Vanishing of Ext^n(M,N) at some n <= grade M forces all lower Ext to vanish.

    The witness marks the trial genuine when the vanishing spot sits at
    n >= 1, so something below it was actually constrained.
    """
    name = "ext_rigidity"
    prov = _provenance(m.ring, seed=seed, i_max=i_max)
    if m.is_zero():
        return CheckVerdict(name, INAPPLICABLE, {"reason": "zero module"}, prov)
    try:
        g = grade(m)
        top = g if i_max is None else min(g, i_max)
        exts = [ext(m, n, i) for i in range(top + 1)]
    except DegreeCapExceeded as exc:
        return CheckVerdict(name, INCONCLUSIVE, {"reason": str(exc)}, prov)
    zero_spots = [i for i, e in enumerate(exts) if e.is_zero()]
    pattern = [not e.is_zero() for e in exts]
    if not zero_spots:
        return CheckVerdict(
            name, INAPPLICABLE,
            {"reason": "no vanishing in range", "grade": g, "nonzero": pattern},
            prov,
        )
    n_star = max(zero_spots)
    violations = [i for i in range(n_star) if pattern[i]]
    genuine = n_star >= 1
    if violations:
        lo, hi = _prefix_window(*exts)
        return CheckVerdict(
            name, FAIL,
            {
                "grade": g,
                "vanishing_spot": n_star,
                "violations": violations,
                "ext_hf": {i: list(e.hf_range(lo, hi).values()) for i, e in enumerate(exts)},
                "modules": _module_data(M=m, N=n),
            },
            prov,
        )
    return CheckVerdict(
        name, PASS,
        {"grade": g, "vanishing_spots": zero_spots, "genuine": genuine},
        prov,
    )


def check_self_ext_nonvanishing(m: PresentedModule, seed=None) -> CheckVerdict:
    """Over a hypersurface, Ext^i(M,M) != 0 for every 0 <= i <= grade M."""
    name = "self_ext_nonvanishing"
    prov = _provenance(m.ring, seed=seed)
    if not m.ring.is_quotient:
        return CheckVerdict(name, INAPPLICABLE, {"reason": "requires a hypersurface"}, prov)
    if m.is_zero():
        return CheckVerdict(name, INAPPLICABLE, {"reason": "zero module"}, prov)
    try:
        g = grade(m)
        for i in range(g + 1):
            if ext(m, m, i).is_zero():
                return CheckVerdict(
                    name, FAIL,
                    {"grade": g, "vanishing_index": i, "modules": _module_data(M=m)},
                    prov,
                )
    except DegreeCapExceeded as exc:
        return CheckVerdict(name, INCONCLUSIVE, {"reason": str(exc)}, prov)
    return CheckVerdict(name, PASS, {"grade": g, "checked_through": g}, prov)


def check_tor_rigidity_theta(m: PresentedModule, n: PresentedModule,
                             i_max: int = 8, seed=None) -> CheckVerdict:
    """theta = 0 makes Tor vanishing rigid; theta != 0 pairs are logged as
    negative controls, including whether they exhibit a non-rigid pattern."""
    name = "tor_rigidity_theta"
    prov = _provenance(m.ring, seed=seed, i_max=i_max)
    if not m.ring.is_quotient:
        return CheckVerdict(name, INAPPLICABLE, {"reason": "requires a hypersurface"}, prov)
    try:
        th = theta(m, n)
        tors = [tor(m, n, i) for i in range(i_max + 1)]
    except HypothesisViolation as exc:
        return CheckVerdict(name, INCONCLUSIVE, {"reason": str(exc)}, prov)
    except DegreeCapExceeded as exc:
        return CheckVerdict(name, INCONCLUSIVE, {"reason": str(exc)}, prov)
    lengths = [_enc(t.length()) for t in tors]
    zero = [t.is_zero() for t in tors]
    if th != 0:
        non_rigid = any(
            zero[i] and any(not zero[j] for j in range(i + 1, len(zero)))
            for i in range(len(zero))
        )
        return CheckVerdict(
            name, INAPPLICABLE,
            {
                "reason": "theta nonzero: rigidity hypothesis unmet",
                "theta": th,
                "tor_lengths": lengths,
                "non_rigid_vanishing": non_rigid,
            },
            prov,
        )
    first_zero = next((i for i, z in enumerate(zero) if z), None)
    if first_zero is None:
        return CheckVerdict(
            name, INAPPLICABLE,
            {"reason": "theta zero but no vanishing in range", "theta": 0,
             "tor_lengths": lengths},
            prov,
        )
    violations = [i for i in range(first_zero, i_max + 1) if not zero[i]]
    if violations:
        return CheckVerdict(
            name, FAIL,
            {"theta": 0, "first_zero": first_zero, "violations": violations,
             "tor_lengths": lengths, "modules": _module_data(M=m, N=n)},
            prov,
        )
    return CheckVerdict(
        name, PASS,
        {"theta": 0, "first_zero": first_zero, "tor_lengths": lengths},
        prov,
    )


def check_lemma_ext_tor(m: PresentedModule, n: PresentedModule, seed=None) -> CheckVerdict:
    """Ext^i(M,N) and Tor_{g-i}(E(M),N) carry the same Hilbert prefixes
    for 0 <= i <= g-1; applicable once grade M >= 2."""
    name = "lemma_ext_tor"
    prov = _provenance(m.ring, seed=seed, prefix_hi=PREFIX_HI)
    try:
        g = grade(m)
    except DegreeCapExceeded as exc:
        return CheckVerdict(name, INCONCLUSIVE, {"reason": str(exc)}, prov)
    if g is INFINITE or g < 2:
        return CheckVerdict(name, INAPPLICABLE, {"reason": "grade below 2", "grade": _enc(g)}, prov)
    try:
        em = e_module(m)
        mismatches = []
        spots = {}
        for i in range(g):
            left = ext(m, n, i)
            right = tor(em, n, g - i)
            ok, data = _prefixes_match(left, right)
            spots[i] = data
            if not ok:
                mismatches.append(i)
    except DegreeCapExceeded as exc:
        return CheckVerdict(name, INCONCLUSIVE, {"reason": str(exc)}, prov)
    if mismatches:
        return CheckVerdict(
            name, FAIL,
            {"grade": g, "mismatched_spots": mismatches,
             "comparison": {str(i): spots[i] for i in mismatches},
             "modules": _module_data(M=m, N=n)},
            prov,
        )
    return CheckVerdict(name, PASS, {"grade": g, "spots_checked": list(range(g))}, prov)


def check_grade_drop(m: PresentedModule, ctx: RingContext | None = None,
                     seed=None) -> CheckVerdict:
    """grade over the hypersurface is one less than over the ambient ring."""
    name = "grade_drop"
    ctx = ctx if ctx is not None else m.ring
    prov = _provenance(ctx, seed=seed)
    if not ctx.is_quotient or m.ring != ctx:
        return CheckVerdict(name, INAPPLICABLE, {"reason": "needs a hypersurface module"}, prov)
    if m.is_zero():
        return CheckVerdict(name, INAPPLICABLE, {"reason": "zero module"}, prov)
    try:
        g_r = grade(m)
        g_q = grade(restrict_to_ambient(m))
    except DegreeCapExceeded as exc:
        return CheckVerdict(name, INCONCLUSIVE, {"reason": str(exc)}, prov)
    if g_r != g_q - 1:
        return CheckVerdict(
            name, FAIL,
            {"grade_hypersurface": g_r, "grade_ambient": g_q,
             "modules": _module_data(M=m)},
            prov,
        )
    return CheckVerdict(name, PASS, {"grade_hypersurface": g_r, "grade_ambient": g_q}, prov)


def check_xi_chi_bridge(m: PresentedModule, n: PresentedModule, i: int,
                        seed=None) -> CheckVerdict:
    """xi_bar_i(M,N) equals chi_{g-i}(E(M),N), is non-negative, and vanishes
    exactly when Ext^j(M,N) = 0 for all j <= i."""
    name = "xi_chi_bridge"
    prov = _provenance(m.ring, seed=seed, i=i)
    if m.ring.is_quotient:
        return CheckVerdict(name, INAPPLICABLE, {"reason": "requires a regular ring"}, prov)
    try:
        g = grade(m)
    except DegreeCapExceeded as exc:
        return CheckVerdict(name, INCONCLUSIVE, {"reason": str(exc)}, prov)
    if g is INFINITE or not (1 <= i <= g - 1):
        return CheckVerdict(
            name, INAPPLICABLE,
            {"reason": "index outside 1..grade-1", "grade": _enc(g), "i": i},
            prov,
        )
    try:
        xv = xi_bar(m, n, i)
        cv = chi(e_module(m), n, g - i)
        all_zero = all(ext(m, n, j).is_zero() for j in range(i + 1))
    except HypothesisViolation as exc:
        return CheckVerdict(name, INAPPLICABLE, {"reason": str(exc)}, prov)
    except DegreeCapExceeded as exc:
        return CheckVerdict(name, INCONCLUSIVE, {"reason": str(exc)}, prov)
    ok = xv == cv and xv >= 0 and (xv == 0) == all_zero
    data = {"grade": g, "i": i, "xi_bar": xv, "chi": cv, "all_ext_zero": all_zero}
    if not ok:
        data["modules"] = _module_data(M=m, N=n)
        return CheckVerdict(name, FAIL, data, prov)
    return CheckVerdict(name, PASS, data, prov)


def check_jothilingam(m: PresentedModule, n: PresentedModule, index: int,
                      seed=None) -> CheckVerdict:
    """When Ext^n(M,N) = 0 with n <= grade M over a regular ring,
    Ext^{n-1}(M,R) tensor N matches Ext^{n-1}(M,N)."""
    name = "jothilingam"
    prov = _provenance(m.ring, seed=seed, n=index)
    if m.ring.is_quotient:
        return CheckVerdict(name, INAPPLICABLE, {"reason": "requires a regular ring"}, prov)
    if index < 1:
        return CheckVerdict(name, INAPPLICABLE, {"reason": "index below 1"}, prov)
    try:
        g = grade(m)
        if g is INFINITE or index > g:
            return CheckVerdict(
                name, INAPPLICABLE,
                {"reason": "index above grade", "grade": _enc(g), "n": index},
                prov,
            )
        if not ext(m, n, index).is_zero():
            return CheckVerdict(
                name, INAPPLICABLE,
                {"reason": "Ext^n(M,N) nonzero: vanishing hypothesis unmet", "n": index},
                prov,
            )
        left = tensor_modules(ext(m, ring_as_module(m.ring), index - 1), n)
        right = ext(m, n, index - 1)
        ok, data = _prefixes_match(left, right)
    except DegreeCapExceeded as exc:
        return CheckVerdict(name, INCONCLUSIVE, {"reason": str(exc)}, prov)
    if not ok:
        return CheckVerdict(
            name, FAIL,
            {"n": index, "comparison": data, "modules": _module_data(M=m, N=n)},
            prov,
        )
    return CheckVerdict(name, PASS, {"n": index, "comparison": data}, prov)


# -- random module generation ---------------------------------------------------------


@dataclass(frozen=True)
class RandomModuleSpec:
    """Deterministic recipe for a random module; same spec, same module."""

    seed: object
    ring: RingContext
    gens: tuple = (1, 3)
    rels: tuple = (1, 4)
    degree: tuple = (1, 2)
    target: str = "generic"  # generic | finite-length | positive-grade | CM
    budget: int = 120

    def stream_key(self) -> str:
        ring_sig = json.dumps(self.ring.describe(), sort_keys=True)
        return "|".join([
            "module", str(self.seed), ring_sig, str(self.gens), str(self.rels),
            str(self.degree), self.target,
        ])


def _degree_monomials(nvars: int, degree: int):
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for v in combo:
            exps[v] += 1
        out.append(tuple(exps))
    return sorted(out)


def _random_poly(ring: RingContext, degree: int, rng: random.Random,
                 density: float = 0.6):
    pr = ring.poly_ring
    terms = {}
    for exps in _degree_monomials(ring.nvars, degree):
        if rng.random() < density:
            terms[exps] = rng.randrange(1, 10)
    return pr.from_terms(terms)


def _raw_module(spec: RandomModuleSpec, rng: random.Random):
    ring = spec.ring
    ngens = rng.randint(*spec.gens)
    gen_degrees = sorted(rng.randint(0, 1) for _ in range(ngens))
    nrels = rng.randint(*spec.rels)
    spread = max(gen_degrees)
    rows = [[] for _ in range(ngens)]
    for _ in range(nrels):
        rel_degree = spread + rng.randint(*spec.degree)
        for i, a in enumerate(gen_degrees):
            rows[i].append(_random_poly(ring, rel_degree - a, rng))
    try:
        return present_module(ring, rows, gen_degrees=tuple(gen_degrees))
    except Exception:
        return None


def _with_power_relations(m: PresentedModule, power: int) -> PresentedModule:
    """Append x_t^power on every generator; output has finite length."""
    ring = m.ring
    pr = ring.poly_ring
    old = m.presentation
    rows = [[old.matrix[i][j] for j in range(old.source_rank)]
            for i in range(old.target_rank)]
    for i in range(old.target_rank):
        for t in range(ring.nvars):
            mono = pr.monomial(tuple(power if v == t else 0 for v in range(ring.nvars)))
            for r in range(old.target_rank):
                rows[r].append(mono if r == i else pr.zero())
    return present_module(ring, rows, gen_degrees=m.gen_degrees)


def generate_module(spec: RandomModuleSpec) -> PresentedModule:
    """Draw a module matching the spec's shaping target, deterministically."""
    rng = random.Random(spec.stream_key())
    ring_mod = None
    for _ in range(spec.budget):
        m = _raw_module(spec, rng)
        if m is None or m.is_zero():
            continue
        if spec.target == "generic":
            return m
        if spec.target == "finite-length":
            capped = _with_power_relations(m, max(2, spec.degree[0] + 1))
            if capped.is_zero():
                continue
            if capped.length() is INFINITE:
                raise ShapingError("power relations failed to cap length")
            return capped
        if spec.target == "positive-grade":
            if ring_mod is None:
                ring_mod = ring_as_module(spec.ring)
            if ext(m, ring_mod, 0).is_zero():
                return m
            continue
        if spec.target == "CM":
            dim = m.dimension()
            if dim is not None and depth(m) == dim:
                return m
            continue
        raise ShapingError(f"unknown shaping target: {spec.target}")
    raise ShapingError(
        f"no module matching target {spec.target!r} within {spec.budget} draws"
    )


def syzygy_module(m: PresentedModule, step: int = 1) -> PresentedModule:
    """The step-th syzygy, presented by the next differential of the minimal
    resolution; free (possibly zero) when the resolution has ended."""
    if step < 1:
        raise HypothesisViolation("syzygy step must be positive")
    res = minimal_resolution(m, step + 1)
    pres = res.map_at(step + 1)
    if pres is None:
        if res.finite_pdim() is not None and step > res.finite_pdim():
            return free_module(m.ring, ())
        return free_module(m.ring, res.free_degrees(step))
    return PresentedModule(pres)


def random_hypersurface(seed, nvars: int = 3, p: int = DEFAULT_PRIME,
                        degree: int = 2) -> RingContext:
    """A quotient by a random nonzero homogeneous form, deterministically."""
    names = ("x", "y", "z", "w")[:nvars]
    base = make_ring(p, names)
    rng = random.Random(f"hypersurface|{seed}|{nvars}|{p}|{degree}")
    while True:
        f = _random_poly(base, degree, rng, density=0.5)
        if not f.is_zero():
            return make_quotient(base, f)


def corpus_module(ring: RingContext, seed, kind: str, gens: tuple = (1, 3),
                  rels: tuple = (1, 4)) -> PresentedModule:
    """One corpus draw: generic, finite-length-shaped, or syzygy-derived."""
    if kind == "syzygy":
        # steps >= dim land on maximal-depth syzygies; finite-length cyclic
        # bases over a singular quotient never resolve finitely, so the step
        # survives, and the size screen keeps later Hom kernels affordable
        if ring.is_quotient:
            base_gens, base_target, jitter = (1, 1), "finite-length", 0
            lo = max(1, ring.dim)
        else:
            base_gens, base_target, jitter = gens, "generic", 1
            lo = 1
        for attempt in range(8):
            key = f"{seed}|syz{attempt}"
            base = generate_module(
                RandomModuleSpec(seed=key, ring=ring, gens=base_gens, rels=rels,
                                 target=base_target)
            )
            step = lo + random.Random(f"{key}|step").randrange(1 + jitter)
            syz = syzygy_module(base, step)
            if not syz.is_zero() and syz.n_gens <= 5 and syz.n_relations <= 10:
                return syz
        raise ShapingError("syzygy draws kept collapsing to zero")
    if kind in ("generic", "finite-length", "positive-grade", "CM"):
        return generate_module(
            RandomModuleSpec(seed=seed, ring=ring, gens=gens, rels=rels, target=kind)
        )
    raise ShapingError(f"unknown corpus kind: {kind}")


def draw_kind(rng: random.Random, weights: dict) -> str:
    roll = rng.random()
    acc = 0.0
    for kind in sorted(weights):
        acc += weights[kind]
        if roll < acc:
            return kind
    return sorted(weights)[-1]


# -- campaigns ----------------------------------------------------------------------


def _campaign_rings(seed, trial: int, hypersurface: bool):
    rng = random.Random(f"ring|{seed}|{trial}")
    if not hypersurface:
        nvars = 2 + rng.randrange(2)
        return make_ring(DEFAULT_PRIME, ("x", "y", "z")[:nvars])
    # lean toward three variables: dimension-2 quotients leave room for
    # vanishing below the grade, which is where the checks have content
    nvars = 2 if rng.random() < 0.3 else 3
    degree = 2 + rng.randrange(2)
    return random_hypersurface(f"{seed}|{trial}", nvars=nvars, degree=degree)


def _trial_ext_rigidity(seed, trial, weights):
    ring = _campaign_rings(seed, trial, hypersurface=True)
    rng = random.Random(f"pair|{seed}|{trial}")
    # small draws: resolutions over cubic quotients grow fast with rank
    m = corpus_module(ring, f"{seed}|{trial}|M", draw_kind(rng, weights),
                      gens=(1, 2), rels=(1, 2))
    n = corpus_module(ring, f"{seed}|{trial}|N", draw_kind(rng, weights),
                      gens=(1, 2), rels=(1, 3))
    return check_ext_rigidity(m, n, seed=f"{seed}|{trial}")


def _trial_self_ext(seed, trial, weights):
    ring = _campaign_rings(seed, trial, hypersurface=True)
    m = corpus_module(ring, f"{seed}|{trial}|M", "positive-grade")
    return check_self_ext_nonvanishing(m, seed=f"{seed}|{trial}")


def _theta_control_pair():
    ring = make_quotient(make_ring(DEFAULT_PRIME, ("x", "y")), "x*y")
    m = present_module(ring, [["x"]])
    n = present_module(ring, [["y"]])
    return m, n


def _trial_theta(seed, trial, weights):
    if trial == 0:
        # deterministic negative control: theta = 1, Tor_1 = 0 but Tor_2 != 0
        m, n = _theta_control_pair()
        return check_tor_rigidity_theta(m, n, seed=f"{seed}|control")
    ring = _campaign_rings(seed, trial, hypersurface=True)
    rng = random.Random(f"pair|{seed}|{trial}")
    m = corpus_module(ring, f"{seed}|{trial}|M", draw_kind(rng, weights))
    n = corpus_module(ring, f"{seed}|{trial}|N", draw_kind(rng, weights))
    return check_tor_rigidity_theta(m, n, seed=f"{seed}|{trial}")


def _trial_lemma_ext_tor(seed, trial, weights):
    ring = _campaign_rings(seed, trial, hypersurface=False)
    rng = random.Random(f"pair|{seed}|{trial}")
    # small finite-length modules keep grade maximal and resolutions short
    m = corpus_module(ring, f"{seed}|{trial}|M", "finite-length", gens=(1, 2), rels=(1, 2))
    n = corpus_module(ring, f"{seed}|{trial}|N", draw_kind(rng, weights), gens=(1, 2), rels=(1, 3))
    return check_lemma_ext_tor(m, n, seed=f"{seed}|{trial}")


def _trial_grade_drop(seed, trial, weights):
    ring = _campaign_rings(seed, trial, hypersurface=True)
    rng = random.Random(f"pair|{seed}|{trial}")
    m = corpus_module(ring, f"{seed}|{trial}|M", draw_kind(rng, weights))
    return check_grade_drop(m, seed=f"{seed}|{trial}")


def _trial_xi_chi(seed, trial, weights):
    ring = _campaign_rings(seed, trial, hypersurface=False)
    rng = random.Random(f"pair|{seed}|{trial}")
    m = corpus_module(ring, f"{seed}|{trial}|M", "finite-length", gens=(1, 2), rels=(1, 2))
    n = corpus_module(ring, f"{seed}|{trial}|N", "finite-length", gens=(1, 2), rels=(1, 2))
    g = grade(m)
    i = 1 if g is INFINITE or g <= 2 else 1 + rng.randrange(g - 1)
    return check_xi_chi_bridge(m, n, i, seed=f"{seed}|{trial}")


def _trial_jothilingam(seed, trial, weights):
    ring = _campaign_rings(seed, trial, hypersurface=False)
    rng = random.Random(f"pair|{seed}|{trial}")
    # finite-length draws push grade up so an index below it exists
    kind = "finite-length" if rng.random() < 0.6 else draw_kind(rng, weights)
    m = corpus_module(ring, f"{seed}|{trial}|M", kind, gens=(1, 2), rels=(1, 2))
    if rng.random() < 0.3:
        n = ring_as_module(ring)
    else:
        n = corpus_module(ring, f"{seed}|{trial}|N", "syzygy", gens=(1, 2), rels=(1, 3))
    g = grade(m)
    index = 1 if g is INFINITE or g <= 2 else 1 + rng.randrange(g - 1)
    return check_jothilingam(m, n, index, seed=f"{seed}|{trial}")


CAMPAIGNS = {
    "ext_rigidity": _trial_ext_rigidity,
    "self_ext_nonvanishing": _trial_self_ext,
    "tor_rigidity_theta": _trial_theta,
    "lemma_ext_tor": _trial_lemma_ext_tor,
    "grade_drop": _trial_grade_drop,
    "xi_chi_bridge": _trial_xi_chi,
    "jothilingam": _trial_jothilingam,
}


def run_campaign(name: str, trials: int, seed, weights: dict | None = None) -> dict:
    """Run one checker across seeded trials and aggregate the verdicts."""
    if name not in CAMPAIGNS:
        raise HypothesisViolation(f"unknown campaign: {name}")
    runner = CAMPAIGNS[name]
    weights = dict(DEFAULT_WEIGHTS if weights is None else weights)
    verdicts = []
    counts = {PASS: 0, FAIL: 0, INAPPLICABLE: 0, INCONCLUSIVE: 0}
    genuine = 0
    for trial in range(trials):
        try:
            verdict = runner(seed, trial, weights)
        except ShapingError as exc:
            verdict = CheckVerdict(
                name, INCONCLUSIVE, {"reason": f"corpus shaping failed: {exc}"},
                {"seed": f"{seed}|{trial}", "caps": {}},
            )
        counts[verdict.status] += 1
        if verdict.status == PASS and verdict.witness.get("genuine"):
            genuine += 1
        verdicts.append(verdict)
    return {
        "campaign": name,
        "trials": trials,
        "seed": str(seed),
        "weights": {k: weights[k] for k in sorted(weights)},
        "counts": counts,
        "genuine_passes": genuine,
        "verdicts": [v.as_dict() for v in verdicts],
    }
