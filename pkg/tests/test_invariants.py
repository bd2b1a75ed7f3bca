"""Ext, Tor, and the derived numerical invariants on hand-checkable modules."""

from math import comb

import pytest

from hyperext.errors import HypothesisViolation
from hyperext.invariants import (
    chi,
    depth,
    e_module,
    ext,
    grade,
    module_summary,
    pdim,
    theta,
    tor,
    xi_bar,
)
from hyperext.modules import (
    INFINITE,
    cyclic_module,
    k_module,
    restrict_to_ambient,
    ring_as_module,
    zero_module,
)
from hyperext.resolution import minimal_resolution
from hyperext.ring import make_quotient, make_ring


@pytest.mark.parametrize("p,names", [
    (32003, ("x", "y")),
    (32003, ("x", "y", "z")),
    (101, ("x", "y", "z")),
])
def test_ext_of_k_against_ring_concentrates_at_top(p, names):
    ctx = make_ring(p, names)
    n = len(names)
    k = k_module(ctx)
    r = ring_as_module(ctx)
    for i in range(n + 1):
        e = ext(k, r, i)
        if i < n:
            assert e.is_zero()
        else:
            assert e.length() == 1
            # duality pushes the socle generator to degree -n
            assert e.gen_degrees == (-n,)


@pytest.mark.parametrize("names", [("x", "y"), ("x", "y", "z")])
def test_tor_of_k_with_k_is_exterior_algebra(names):
    ctx = make_ring(32003, names)
    n = len(names)
    k = k_module(ctx)
    for i in range(n + 2):
        t = tor(k, k, i)
        assert t.length() == (comb(n, i) if i <= n else 0)
        if i <= n:
            assert t.gen_degrees == tuple([i] * comb(n, i))


def test_ext_of_k_with_k(q3):
    k = k_module(q3)
    for i in range(4):
        assert ext(k, k, i).length() == comb(3, i)


def test_grade_values(q2, q3, cyclic_xx_xy_xz):
    assert grade(k_module(q2)) == 2
    assert grade(k_module(q3)) == 3
    assert grade(ring_as_module(q3)) == 0
    assert grade(cyclic_xx_xy_xz) == 1
    assert grade(zero_module(q2)) is INFINITE
    assert grade(cyclic_module(q2, ["x"])) == 1


def test_auslander_buchsbaum(q2, q3, cyclic_xx_xy_xz):
    cases = [
        (k_module(q3), q3),
        (ring_as_module(q3), q3),
        (cyclic_xx_xy_xz, q3),
        (cyclic_module(q2, ["x"]), q2),
        (cyclic_module(q2, ["x^2", "x*y", "y^2"]), q2),
    ]
    for m, ctx in cases:
        pd = pdim(m)
        assert pd is not INFINITE and pd is not None
        assert depth(m) + pd == ctx.nvars


def test_vanishing_below_codepth(q2):
    # finite length forces Ext^i(M, R) = 0 strictly below the variable count
    m = cyclic_module(q2, ["x^2", "y^2"])
    r = ring_as_module(q2)
    assert m.length() == 4
    assert ext(m, r, 0).is_zero() and ext(m, r, 1).is_zero()
    assert not ext(m, r, 2).is_zero()


def test_e_module_of_k(q3):
    e = e_module(k_module(q3))
    assert e.length() == 1
    assert e.gen_degrees == (-3,)


def test_e_module_of_free_is_free_dual(q3):
    from hyperext.modules import free_module

    e = e_module(free_module(q3, (2,)))
    assert e.n_relations == 0
    assert e.gen_degrees == (-2,)


def test_theta_control_pair(axis_pair):
    a, b = axis_pair
    assert theta(a, b) == 1
    lengths = [tor(a, b, i).length() for i in range(9)]
    assert lengths == [1, 0, 1, 0, 1, 0, 1, 0, 1]


def test_theta_vanishes_for_finite_pdim(r2):
    a = cyclic_module(r2, ["x + y"])
    b = cyclic_module(r2, ["x"])
    assert pdim(a) == 1
    assert theta(a, b) == 0
    assert theta(b, a) == 0


def test_theta_self_pairing_on_axis(r2):
    # tensoring the periodic resolution of R/x with itself kills the x steps
    # and keeps the y steps injective, so odd Tor is k and even Tor vanishes
    a = cyclic_module(r2, ["x"])
    assert [tor(a, a, i).length() for i in range(1, 6)] == [1, 0, 1, 0, 1]
    assert tor(a, a, 0).length() is INFINITE
    assert theta(a, a) == -1


def test_theta_needs_hypersurface(q2):
    k = k_module(q2)
    with pytest.raises(HypothesisViolation):
        theta(k, k)


def test_chi_alternating_sums(q2, q3):
    k2, k3 = k_module(q2), k_module(q3)
    assert [chi(k2, k2, j) for j in range(3)] == [0, 1, 1]
    assert [chi(k3, k3, j) for j in range(4)] == [0, 1, 2, 1]


def test_chi_needs_regular_context(r2):
    k = k_module(r2)
    with pytest.raises(HypothesisViolation):
        chi(k, k, 0)


def test_xi_bar_values(q3):
    k = k_module(q3)
    #  alternating Ext lengths: 3 - 1, then 3 - 3 + 1
    assert xi_bar(k, k, 1) == 2
    assert xi_bar(k, k, 2) == 1
    assert xi_bar(k, k, 0) == 1


def test_xi_bar_bridges_to_chi_of_dual(q2, q3):
    for ctx in (q2, q3):
        k = k_module(ctx)
        g = grade(k)
        e = e_module(k)
        for i in range(1, g):
            assert xi_bar(k, k, i) == chi(e, k, g - i)


def test_xi_bar_bounded_by_quotient_ext_length(r3):
    # the ambient alternating sum never exceeds the quotient Ext length
    k = k_module(r3)
    kq = restrict_to_ambient(k)
    g = grade(kq)
    assert g == 3
    for i in range(1, g):
        bound = ext(k, k, i).length()
        assert xi_bar(kq, kq, i) <= bound


def test_pdim_certified_infinite_over_hypersurface(r2):
    assert pdim(k_module(r2)) is INFINITE
    assert pdim(cyclic_module(r2, ["x"])) is INFINITE


def test_ext_tor_of_zero_module(q2):
    z = zero_module(q2)
    k = k_module(q2)
    assert ext(z, k, 0).is_zero()
    assert tor(k, z, 1).is_zero()


def test_tor_symmetry_in_lengths(q2):
    a = cyclic_module(q2, ["x^2", "y"])
    b = cyclic_module(q2, ["y^2"])
    for i in range(3):
        assert tor(a, b, i).length() == tor(b, a, i).length()


def test_ext_degree_window_example(q3, cyclic_xx_xy_xz):
    r = ring_as_module(q3)
    top = ext(cyclic_xx_xy_xz, r, 3)
    assert top.length() == 1
    assert top.gen_degrees == (-4,)
    assert ext(cyclic_xx_xy_xz, r, 2).is_zero()
    assert not ext(cyclic_xx_xy_xz, r, 1).is_zero()


def test_module_summary_shape(q3, cyclic_xx_xy_xz):
    s = module_summary(cyclic_xx_xy_xz)
    assert s["grade"] == 1 and s["pdim"] == 3 and s["depth"] == 0
    assert s["dim"] == 2 and s["length"] == "infinite"
    assert s["betti"]["(0, 0)"] == 1 and s["betti"]["(3, 4)"] == 1
    sk = module_summary(k_module(q3))
    assert sk["length"] == 1 and sk["depth"] == 0 and sk["dim"] == 0


def test_resolution_and_ext_consistency_on_quotient(r3):
    # self Ext of the residue field over the quadric never vanishes
    k = k_module(r3)
    for i in range(4):
        assert not ext(k, k, i).is_zero()
    res = minimal_resolution(k, 4)
    assert res.rank(1) == 3
