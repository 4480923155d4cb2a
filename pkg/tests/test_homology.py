"""Exact integral invariants against published values.

The expected homology groups below are the textbook ones for the standard
spaces (spheres, the 7-vertex torus, the 6-vertex projective plane), which
keeps the checker honest without a second matrix algorithm in the loop.
"""

import pytest

from plmoves import (
    Complex,
    HomologyGroup,
    boundary_of_simplex,
    euler_characteristic,
    f_vector,
    homology,
    homology_summary,
    join,
)
from plmoves.demos import bipyramid, rp2_6, torus7


def groups(k):
    return [(g.betti, g.torsion) for g in homology(k)]


def test_f_vector_and_euler():
    assert f_vector(bipyramid()) == (5, 9, 6)
    assert f_vector(torus7()) == (7, 21, 14)
    assert f_vector(rp2_6()) == (6, 15, 10)
    assert f_vector(boundary_of_simplex(4)) == (5, 10, 10, 5)
    assert euler_characteristic(bipyramid()) == 2
    assert euler_characteristic(torus7()) == 0
    assert euler_characteristic(rp2_6()) == 1
    assert euler_characteristic(boundary_of_simplex(4)) == 0
    assert f_vector(Complex([(1,), (2,)])) == (2,)


def test_spheres():
    for n in range(1, 5):
        hs = groups(boundary_of_simplex(n + 1))
        expected = [(1, ())] + [(0, ())] * (n - 1) + [(1, ())]
        assert hs == expected, n


def test_bipyramid_is_a_2_sphere():
    assert groups(bipyramid()) == [(1, ()), (0, ()), (1, ())]


def test_torus():
    assert groups(torus7()) == [(1, ()), (2, ()), (1, ())]


def test_projective_plane_torsion():
    assert groups(rp2_6()) == [(1, ()), (0, (2,)), (0, ())]


def test_disconnected_and_contractible():
    two_points = Complex([(1,), (2,)])
    assert groups(two_points) == [(2, ())]
    solid = Complex([(1, 2, 3, 4)])
    assert groups(solid) == [(1, ()), (0, ()), (0, ()), (0, ())]


def test_nonpure_complex():
    # a triangle with a whisker is still contractible
    k = Complex([(1, 2, 3), (3, 4)])
    assert groups(k) == [(1, ()), (0, ()), (0, ())]


def test_join_with_two_points_suspends_homology():
    t = torus7()
    sus = join(t, Complex([(30,), (31,)]))
    assert groups(sus) == [(1, ()), (0, ()), (2, ()), (1, ())]


def test_homology_group_rendering():
    assert str(HomologyGroup(0, ())) == "0"
    assert str(HomologyGroup(1, ())) == "Z"
    assert str(HomologyGroup(2, (2,))) == "Z^2 + Z/2"
    summary = homology_summary(rp2_6())
    assert "Z/2" in summary
    assert summary.startswith("H_0")


def test_internal_chain_complex_check_can_be_disabled():
    t = torus7()
    assert homology(t, check=False) == homology(t)
