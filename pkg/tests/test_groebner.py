"""Completion correctness: the pair criterion, membership, and normal-form laws."""

import random

import pytest

from hyperext.groebner import groebner_basis, set_trace, vec_is_zero
from hyperext.orders import ModuleOrder, MonomialOrder

P = 32003
KEY = ModuleOrder(MonomialOrder("degrevlex"), "top").key


def _mul_vec(v, mono, c, p):
    return {
        (pos, tuple(a + b for a, b in zip(e, mono))): (coef * c) % p
        for (pos, e), coef in v.items()
    }


def _add_vec(a, b, p):
    out = dict(a)
    for t, c in b.items():
        s = (out.get(t, 0) + c) % p
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def _s_vector(gi, gj, keyf, p):
    """Classical S-vector of two elements whose leading terms share a position."""
    (pi, ei) = max(gi, key=lambda t: keyf(*t))
    (pj, ej) = max(gj, key=lambda t: keyf(*t))
    if pi != pj:
        return None
    lcm = tuple(max(a, b) for a, b in zip(ei, ej))
    ci = pow(gi[(pi, ei)], -1, p)
    cj = pow(gj[(pj, ej)], -1, p)
    left = _mul_vec(gi, tuple(a - b for a, b in zip(lcm, ei)), ci, p)
    right = _mul_vec(gj, tuple(a - b for a, b in zip(lcm, ej)), (p - cj) % p, p)
    return _add_vec(left, right, p)


def _random_ideal(rng, nvars, n_gens, max_deg):
    gens = []
    for _ in range(n_gens):
        d = rng.randrange(1, max_deg + 1)
        terms = {}
        for _ in range(rng.randrange(1, 4)):
            exps = [0] * nvars
            for _ in range(d):
                exps[rng.randrange(nvars)] += 1
            terms[(0, tuple(exps))] = rng.randrange(1, P)
        gens.append(terms)
    return gens


def _positions_used(gens):
    return sorted({pos for g in gens for (pos, _) in g})


@pytest.mark.parametrize("nvars", [2, 3])
def test_all_s_vectors_reduce_to_zero(nvars):
    rng = random.Random(f"spairs-{nvars}")
    for trial in range(12):
        gens = _random_ideal(rng, nvars, rng.randrange(2, 4), 3)
        gb = groebner_basis(gens, P, KEY, shifts=(0,))
        els = gb.elements
        for i in range(len(els)):
            for j in range(i):
                s = _s_vector(els[i], els[j], KEY, P)
                if s is None:
                    continue
                assert vec_is_zero(gb.normal_form(s)), (trial, i, j)


def test_ideal_membership_and_nf_laws():
    rng = random.Random("membership")
    for _ in range(12):
        gens = _random_ideal(rng, 3, 3, 3)
        gb = groebner_basis(gens, P, KEY, shifts=(0,))
        # random module combinations of the generators reduce to zero
        for _ in range(8):
            acc = {}
            for g in gens:
                mono = tuple(rng.randrange(3) for _ in range(3))
                acc = _add_vec(acc, _mul_vec(g, mono, rng.randrange(1, P), P), P)
            assert vec_is_zero(gb.normal_form(acc))
        # normal form is idempotent and compatible with addition
        a = _random_ideal(rng, 3, 1, 3)[0]
        b = _random_ideal(rng, 3, 1, 3)[0]
        na, nb = gb.normal_form(a), gb.normal_form(b)
        assert gb.normal_form(na) == na
        assert gb.normal_form(_add_vec(a, b, P)) == gb.normal_form(_add_vec(na, nb, P))


def test_monomial_ideal_hand_case():
    x2 = {(0, (2, 0)): 1}
    xy = {(0, (1, 1)): 1}
    gb = groebner_basis([x2, xy], P, KEY, shifts=(0,))
    assert gb.normal_form({(0, (3, 0)): 1}) == {}
    assert gb.normal_form({(0, (0, 2)): 5}) == {(0, (0, 2)): 5}
    # y * x^2 and x * xy are both in the ideal
    assert gb.normal_form({(0, (2, 1)): 1}) == {}


def test_reduced_basis_is_canonical():
    rng = random.Random("canon")
    for _ in range(8):
        gens = _random_ideal(rng, 2, 3, 3)
        gb1 = groebner_basis(gens, P, KEY, shifts=(0,))
        shuffled = list(gens)
        rng.shuffle(shuffled)
        scaled = [_mul_vec(g, (0, 0), rng.randrange(1, P), P) for g in shuffled]
        gb2 = groebner_basis(scaled, P, KEY, shifts=(0,))
        assert gb1.elements == gb2.elements
        # reduced: leading terms pairwise non-divisible, elements monic
        for i, (pos, e) in enumerate(gb1.lts):
            assert gb1.elements[i][(pos, e)] == 1
            for j, (pos2, e2) in enumerate(gb1.lts):
                if i != j and pos == pos2:
                    assert not all(a <= b for a, b in zip(e2, e))


def test_multi_position_spans():
    # relations of a rank-2 free module: leading terms live on both positions
    gens = [
        {(0, (1, 0)): 1, (1, (0, 1)): 1},
        {(1, (2, 0)): 1},
    ]
    gb = groebner_basis(gens, P, KEY, shifts=(0, 0))
    assert _positions_used(gb.elements) == [0, 1]
    probe = _add_vec(
        _mul_vec(gens[0], (2, 0), 7, P), _mul_vec(gens[1], (0, 3), 11, P), P
    )
    assert vec_is_zero(gb.normal_form(probe))


def test_global_trace_hook():
    lines = []
    set_trace(lines.append)
    try:
        groebner_basis([{(0, (2, 0)): 1}, {(0, (1, 1)): 1}], P, KEY, shifts=(0,))
    finally:
        set_trace(None)
    assert lines and all(isinstance(s, str) for s in lines)
