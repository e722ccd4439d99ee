import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from slkweights.multcomplex import lambda_one_normal
from slkweights.polyhedra import (ComplexOfCones, Cone, Polytope, PolyhedronError, affine_slice, common_refinement,
                                  cone_dual_description, intersect, lattice_points, polytope_from_halfspaces,
                                  refinement_certificate, support_cone, truncated_volume)

A1 = (2, -1, -1, 2, -1, -1)
A2 = (2, -1, -1, -1, 2, -1)
A3 = (2, -1, -1, -1, -1, 2)
B = (1, 0, -1, 0, 0, 0)
C1 = (1, 1, -2, -2, 1, 1)
C2 = (1, 1, -2, 1, -2, 1)
C3 = (1, 1, -2, 1, 1, -2)
# the six (lambda, beta) coordinates satisfy two sum-zero equations
SUMZERO = [(1, 1, 1, 0, 0, 0), (0, 0, 0, 1, 1, 1)]
# truncation lambda_1 <= 1 on the sum-zero space
LAM1 = ((1, 0, 0, 0, 0, 0), 1)


def test_quadrant_facets():
    c = cone_dual_description(generators=[(1, 0), (0, 1)])
    assert set(c.facets) == {(1, 0), (0, 1)}


def test_octant_rays():
    c = cone_dual_description(halfspaces=[(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert set(c.rays) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_tau1_cone():
    c = Cone.from_rays([B, A1, A2, A3], dim=6)
    assert c.dimension == 4
    assert len(c.facets) == 4
    assert len(c.equations) == 2
    c.check()


def test_intersections():
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    c = Cone.from_rays(e[:2])
    assert intersect(c, c) == c
    assert intersect(c, Cone.from_rays(e[1:])).rays == ((0, 1, 0),)
    a1, a2, a12 = (1, 0), (0, 1), (1, 1)
    assert intersect(Cone.from_rays([a1, a12]), Cone.from_rays([a2, a12])).rays == ((1, 1),)


def test_refinement_single_and_split():
    c = Cone.from_rays([(1, 0), (0, 1)])
    assert common_refinement([c]).cells == [c]
    cx = common_refinement([c, Cone.from_rays([(1, 0), (1, 1)]), Cone.from_rays([(0, 1), (1, 1)])])
    assert len(cx.cells) == 2


def test_truncated_volumes():
    assert truncated_volume(Cone.from_rays([(1, 0), (0, 1)]), (1, 1), 1) == Fraction(1, 2)
    assert truncated_volume(Cone.from_rays([(1, 0), (1, 1)]), (1, 0), 1) == Fraction(1, 2)


def test_a2_complex_volume_certificate():
    taus = [(B, A1, A2, A3), (B, C1, C2, C3), (B, A1, C2, C3), (B, A2, C1, C3), (B, A3, C1, C2),
            (B, A1, A2, C3), (B, A1, A3, C2), (B, A2, A3, C1)]
    parts = sum(truncated_volume(Cone.from_rays(t, dim=6), *LAM1) for t in taus)
    whole = truncated_volume(Cone.from_rays([A1, A2, A3, B, C1, C2, C3], dim=6), *LAM1)
    assert parts == whole > 0


def test_lattice_points_examples():
    seg = polytope_from_halfspaces([((1,), 1), ((-1,), 0)])
    assert lattice_points(seg) == [(0,), (1,)]
    empty = polytope_from_halfspaces([((3,), 2), ((-3,), -1)])
    assert lattice_points(empty) == []


def test_octant_slice_is_simplex():
    octant = Cone.orthant(3)
    s = affine_slice(octant, (1, 0, 0), [(-1, 1, 0), (-1, 0, 1)])
    assert len(s.vertices) == 3
    assert s.dimension == 2


def test_slice_missing_cone_is_empty():
    c = Cone.from_rays([(1, 0, 0), (0, 1, 0)])
    s = affine_slice(c, (0, 0, 1), [(1, 0, 0), (0, 1, 0)])
    assert s.is_empty


def test_cone_json_roundtrip():
    c = Cone.from_rays([B, A1, A2, A3], dim=6)
    assert Cone.from_json(json.loads(json.dumps(c.to_json()))) == c


def test_complex_hash_detects_corruption():
    cx = common_refinement([Cone.orthant(2), Cone.from_rays([(1, 0), (1, 1)])])
    data = cx.to_json()
    assert ComplexOfCones.from_json(data).cells == cx.cells
    data["cells"][0]["rays"][0][0] += 1
    with pytest.raises(PolyhedronError):
        ComplexOfCones.from_json(data)


small_vecs = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 3))


@settings(max_examples=40, deadline=None)
@given(st.lists(small_vecs, min_size=3, max_size=6))
def test_cone_invariants(gens):
    gens = [g for g in gens if any(g)]
    if not gens:
        return
    c = Cone.from_rays(gens, dim=3)
    c.check()
    for r in c.rays:
        assert all(sum(a * b for a, b in zip(n, r)) >= 0 for n in c.facets)
    for n in c.facets:
        tight = [r for r in c.rays if sum(a * b for a, b in zip(n, r)) == 0]
        assert len(tight) + len(c.lineality) >= c.dimension - 1 - len(c.lineality) or not c.is_pointed


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(1, 3)), min_size=2, max_size=4),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(1, 3)), min_size=2, max_size=4),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(1, 3)), min_size=2, max_size=4))
def test_intersection_commutative_associative(g1, g2, g3):
    a, b, c = (Cone.from_rays(g, dim=3) for g in (g1, g2, g3))
    assert intersect(a, b) == intersect(b, a)
    assert intersect(intersect(a, b), c) == intersect(a, intersect(b, c))


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(1, 3)), min_size=3, max_size=5),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(1, 3)), min_size=3, max_size=5))
def test_refinement_volume_certificate(g1, g2):
    a, b = (Cone.from_rays(g, dim=3) for g in (g1, g2))
    if not (a.is_full_dimensional and b.is_full_dimensional):
        return
    cx = common_refinement([a, b])
    vol = lambda c: truncated_volume(c, (0, 0, 1), 1)
    ab = intersect(a, b)
    union = vol(a) + vol(b) - (vol(ab) if ab.is_full_dimensional else 0)
    assert sum(vol(c) for c in cx.cells) == union


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-6, 6)), min_size=1, max_size=4))
def test_lattice_points_against_box(extra):
    ineqs = [((1, 0), 4), ((-1, 0), 4), ((0, 1), 4), ((0, -1), 4)] + [((a, b), c) for a, b, c in extra]
    poly = polytope_from_halfspaces(ineqs, dim=2)
    brute = [p for p in itertools.product(range(-4, 5), repeat=2)
             if all(a[0] * p[0] + a[1] * p[1] <= c for a, c in ineqs)]
    assert sorted(lattice_points(poly)) == sorted(brute)


def test_polytope_volume_and_contains():
    sq = Polytope.from_vertices([(0, 0), (2, 0), (0, 2), (2, 2)])
    assert sq.volume() == 4
    assert sq.contains((1, 2)) and not sq.contains_in_interior((1, 2))
    assert sq.centroid() == (1, 1)
