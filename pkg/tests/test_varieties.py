import pytest

import logacm as L
from logacm.errors import InputError, NonGeneralConfig
from logacm.varieties import matrix_rank, rat0_case, vneg, vsub

from conftest import catalog_surfaces, random_class


def test_intersection_examples():
    for e in range(0, 5):
        f = L.hirzebruch(e)
        assert f.intersect((1, 0), (1, 0)) == -e
        assert f.intersect((1, 0), (0, 1)) == 1
        assert f.intersect((3, 2), (0, 0)) == 0


def test_intersection_symmetry(rng):
    for x in catalog_surfaces():
        for _ in range(20):
            a, b = random_class(rng, x), random_class(rng, x)
            assert x.intersect(a, b) == x.intersect(b, a)


def test_noether_identity_all_catalog():
    for x in catalog_surfaces():
        k2 = x.intersect(x.canonical_class, x.canonical_class)
        assert 12 * x.chi_structure_sheaf == k2 + x.c2


def test_h0_tangent_catalog():
    assert L.projective_space(3).h0_tangent == 15
    assert L.hirzebruch(0).h0_tangent == 6
    assert L.hirzebruch(1).h0_tangent == 6
    assert L.hirzebruch(4).h0_tangent == 9
    assert L.blowup_p2(2).h0_tangent == 4
    assert L.blowup_p2(3).h0_tangent == 2
    assert L.blowup_p2(4).h0_tangent == 0
    assert L.surface_in_p3(3).h0_tangent == 0
    assert L.abelian_surface(2).h0_tangent == 2


def test_adjunction_examples():
    f0 = L.hirzebruch(0)
    assert f0.adjunction_genus((1, 1)) == 0
    # rational classes on F_e satisfy (a-1)(ae-2b+2) = 0
    for e in (0, 1, 2, 3):
        fe = L.hirzebruch(e)
        for b in range(e, e + 4):
            assert fe.adjunction_genus((1, b)) == 0
    # line on a quartic surface: D^2 = -2, K = 0
    x4 = L.surface_in_p3(4)
    comp = L.component_from_degree(x4, 1, 0)
    assert comp.self_int == -2


def test_riemann_roch_examples():
    ab = L.abelian_surface(2 * 3)  # polarization square 6, d = 3
    for t in range(-3, 4):
        assert ab.riemann_roch_chi((t,)) == 3 * t * t
    for x in catalog_surfaces():
        assert x.riemann_roch_chi((0,) * x.lattice_rank) == x.chi_structure_sheaf
    b2 = L.blowup_p2(2)
    assert b2.riemann_roch_chi(vneg(b2.canonical_class)) == 8


def test_riemann_roch_serre_symmetry(rng):
    for x in catalog_surfaces():
        for _ in range(25):
            l = random_class(rng, x)
            assert x.riemann_roch_chi(l) == x.riemann_roch_chi(vsub(x.canonical_class, l))


def test_chi_tangent():
    assert L.blowup_p2(2).chi_tangent() == 4
    assert L.surface_in_p3(3).chi_tangent() == -4
    assert L.abelian_surface(2).chi_tangent() == 0
    for e in range(0, 4):
        assert L.hirzebruch(e).chi_tangent() == 6


def test_is_ample():
    assert not L.hirzebruch(2).is_ample((1, 1))
    assert L.hirzebruch(1).is_ample((1, 2))
    assert not L.projective_space(3).is_ample((0,))
    b2 = L.blowup_p2(2)
    assert b2.is_ample(vneg(b2.canonical_class))
    assert not b2.is_ample((1, 0, 0))  # pullback of a line is nef, not ample
    assert L.quadric_surface().is_ample((2, 1))


def test_negative_curves_have_genus_zero():
    for k in (1, 2, 3, 4):
        x = L.blowup_p2(k)
        for c in x.negative_curves:
            assert x.adjunction_genus(c) == 0
            assert x.intersect(c, c) == -1


def test_rational_classes_on_Fe():
    out = L.rational_classes_on_Fe(1, 3)
    assert (2, 2) in out
    assert rat0_case(1, (2, 2)) == "v"
    out0 = L.rational_classes_on_Fe(0, 2)
    assert (1, 1) in out0 and (2, 1) in out0
    assert L.rational_classes_on_Fe(2, 0) == []
    for e in (0, 1, 2, 3):
        fe = L.hirzebruch(e)
        for c in L.rational_classes_on_Fe(e, 4):
            assert fe.adjunction_genus(c) == 0


def test_blowup_validation():
    with pytest.raises(NonGeneralConfig):
        L.blowup_p2(5)
    with pytest.raises(NonGeneralConfig):
        L.blowup_p2(2, general=False)


def test_class_length_validation():
    with pytest.raises(InputError):
        L.hirzebruch(1).intersect((1, 0, 0), (0, 1))


def test_arrangement_span_rank():
    x = L.blowup_p2(2)
    comps = [L.component_from_class(x, c) for c in [(0, 1, 0), (0, 0, 1), (1, -1, -1)]]
    arr = L.arrangement(x, comps)
    assert arr.span_rank == 3
    arr2 = L.arrangement(x, comps[:2])
    assert arr2.span_rank == 2
    with pytest.raises(InputError):
        L.arrangement(x, comps, span_rank=4)


def test_matrix_rank():
    assert matrix_rank([[1, 0], [0, 1]]) == 2
    assert matrix_rank([[1, 1], [2, 2]]) == 1
    assert matrix_rank([[0, 0]]) == 0


def test_subcanonical_detection():
    assert L.projective_space(3).is_subcanonical((1,)) == -4
    assert L.quadric_surface().is_subcanonical((1, 1)) == -2
    assert L.quadric_surface().is_subcanonical((2, 1)) is None
    assert L.surface_in_p3(4).is_subcanonical((1,)) == 0
    assert L.hirzebruch(2).is_subcanonical((1, 3)) is None
    assert L.hirzebruch(1).is_subcanonical((2, 3)) == -1
