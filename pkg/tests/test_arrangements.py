import itertools
import random
from fractions import Fraction

import pytest

from slkweights.arrangements import (AffineHyperplane, NonGenericError, adjacent_jumps, boundary_facets,
                                     check_boundary_factors, check_jump_factors, degenerate_jump_forms,
                                     delta_shift, kostant_arrangement, max_shift, piecewise_multiplicity,
                                     quadratic_square_form, slice_jump_factor_counts, type_vector,
                                     verify_factorizations)
from slkweights.exact import MultiPoly, lb_variables
from slkweights.kostant import conjugate_weight_normals, kpf_wall_normals, multiplicity_kmf
from slkweights.multcomplex import slice_regions
from slkweights.typea import permutahedron_facets


def test_delta_shift():
    assert delta_shift((1,), (1,), 3) == 0
    assert delta_shift((0,), (1,), 3) == 1
    for k in range(2, 7):
        for j in range(1, k):
            assert delta_shift(tuple(range(j)), tuple(range(k - j, k)), k) == max_shift(j, k)
    with pytest.raises(ValueError):
        delta_shift((0,), (1, 2), 3)


def test_complement_folding():
    h = AffineHyperplane.make(4, (1, 2, 3), (0, 1, 3), 2)
    assert h == AffineHyperplane.make(4, (0,), (2,), -2)
    assert AffineHyperplane.make(4, (2, 3), (0, 1), 4) == AffineHyperplane.make(4, (0, 1), (2, 3), -4)


def test_arrangement_contains_shifted_plane():
    union = kostant_arrangement((1, 0, -1))
    target = AffineHyperplane.make(3, (0,), (0,), 2)
    assert target in union
    # a fixed positive system only reaches shifts <= 0 on beta_1 = lambda_1
    ident = kostant_arrangement((1, 0, -1), psi=(0, 1, 2))
    assert target not in ident
    assert max(h.shift for h in ident if h.U == (0,) and h.V == (0,)) == 0


@pytest.mark.parametrize("k", [3, 4])
def test_facet_planes_have_shift_zero_members(k):
    lam = tuple(range(k - 1, -1, -1))
    arr = set(kostant_arrangement(lam))
    for U, side, _ in permutahedron_facets(lam):
        j = len(U)
        V = tuple(range(j)) if side == "top" else tuple(range(k - j, k))
        assert AffineHyperplane.make(k, U, V, 0) in arr


@pytest.mark.parametrize("k", [3, 4, 5])
def test_outer_shifts(k):
    for j in range(1, k):
        top, bottom = tuple(range(j)), tuple(range(k - j, k))
        for W in itertools.combinations(range(k), j):
            assert delta_shift(top, W, k) >= 0
            assert delta_shift(bottom, W, k) <= 0


@pytest.mark.parametrize("k", [3, 4])
def test_arrangement_normals_cover_kpf_walls(k, kpf2, kpf3):
    kpf = kpf2 if k == 3 else kpf3
    assert kpf_wall_normals(kpf) == conjugate_weight_normals(k - 1)


def _random_pair(rng, k, top=12):
    lam = sorted((rng.randint(0, top) for _ in range(k)), reverse=True)
    beta = [rng.randint(-2, top) for _ in range(k - 1)]
    beta.append(sum(lam) - sum(beta))
    return lam, beta


def test_piecewise_equals_kmf_k3(kpf2):
    rng = random.Random(11)
    perms = list(itertools.permutations(range(3)))
    done = 0
    psis = set()
    while done < 100:
        lam, beta = _random_pair(rng, 3)
        psi = rng.choice(perms)
        try:
            value, poly = piecewise_multiplicity(lam, beta, psi, kpf2)
        except NonGenericError:
            continue
        assert value == multiplicity_kmf(lam, beta)
        done += 1
        psis.add(psi)
    assert len(psis) == 6


def test_piecewise_polynomial_is_regional(kpf2):
    lam, beta = (40, 17, 0), (30, 12, 15)
    tv = type_vector(lam, beta, (0, 1, 2), kpf2)
    value, poly = piecewise_multiplicity(lam, beta, (0, 1, 2), kpf2)
    assert value == multiplicity_kmf(lam, beta)
    # a nearby point with the same type vector is served by the same polynomial
    lam2, beta2 = (41, 17, 0), (31, 12, 15)
    assert type_vector(lam2, beta2, (0, 1, 2), kpf2) == tv
    from slkweights.typea import Weight
    l2 = Weight.of(lam2).fundamental()
    b2 = Weight.of(beta2).fundamental()
    assert poly.evaluate(tuple(l2) + tuple(b2)) == multiplicity_kmf(lam2, beta2)


def test_piecewise_k4(kpf3):
    rng = random.Random(5)
    done = 0
    while done < 10:
        lam, beta = _random_pair(rng, 4, 9)
        try:
            value, _ = piecewise_multiplicity(lam, beta, (0, 1, 2, 3), kpf3, symbolic=False)
        except NonGenericError:
            continue
        assert value == multiplicity_kmf(lam, beta)
        done += 1


def test_far_outside_is_zero(kpf2):
    tv = type_vector((2, 1, 0), (61, -30, -28), (0, 1, 2), kpf2)
    assert set(tv.labels) == {0}
    value, poly = piecewise_multiplicity((2, 1, 0), (61, -30, -28), (0, 1, 2), kpf2)
    assert value == 0 and poly.is_zero()


def test_non_generic_rejected(kpf2):
    with pytest.raises(NonGenericError) as info:
        type_vector((4, 0, -4), (0, 0, 0), (0, 1, 2), kpf2)
    assert len(info.value.sigma) == 3


def test_boundary_factors_k3(glued3):
    facets = boundary_facets(glued3)
    assert len(facets) == 6
    for f in facets:
        rep = check_boundary_factors(glued3, *f)
        assert rep.ok and len(rep.factors) == 1


def test_boundary_factors_k4(glued4):
    counts = {}
    for f in boundary_facets(glued4):
        rep = check_boundary_factors(glued4, *f)
        assert rep.ok, rep.to_json()
        counts.setdefault(len(rep.U), set()).add(len(rep.factors))
    assert counts == {1: {2}, 2: {3}}


def test_boundary_factors_on_slice(glued4):
    lam = (11, 4, -2, -13)
    for f in boundary_facets(glued4)[:10]:
        assert check_boundary_factors(glued4, *f, lam=lam).ok


def test_boundary_rejects_interior_facet(glued4):
    with pytest.raises(ValueError):
        check_boundary_factors(glued4, 0, (0, 1), (0, 2), 1)


def test_jump_factors_k3(glued3):
    boundary, jumps = verify_factorizations(glued3)
    assert jumps and all(r.ok and len(r.factors) == 1 for r in jumps)


def test_jump_factors_k4_sample(glued4):
    pairs = adjacent_jumps(glued4)
    rng = random.Random(2)
    for a, b, U, V in rng.sample(pairs, 150):
        rep, windows = check_jump_factors(glued4.polynomials[a], glued4.polynomials[b], 4, U, V)
        assert rep.ok
        J = max_shift(len(U), 4)
        assert all(sm + sp == J for sm, sp in windows)
        assert len(rep.factors) == J - 1


def test_zero_jump():
    p = MultiPoly.linear(lb_variables(3), [1, 0, 0, 0], 1)
    rep, windows = check_jump_factors(p, p, 3, (0,), (0,))
    assert rep.ok and windows == []


def test_quadratic_square_form():
    names = lb_variables(4)
    g = MultiPoly.linear(names, [0, 0, 0, Fraction(3, 4), Fraction(1, 2), Fraction(1, 4)], 2)  # beta_1 + 2
    q = g * (g + 1) * Fraction(1, 2)
    c, U, e = quadratic_square_form(q, 4)
    assert (c, U, e) == (Fraction(1, 2), (0,), 2)
    assert quadratic_square_form(MultiPoly.constant(names, 21), 4, Fraction(1, 2))[2] == 6


@pytest.mark.parametrize("lam", [(9, 1, 1, -11), (7, 2, 2, -11)])
def test_degenerate_middle_pair(glued4, lam):
    forms = degenerate_jump_forms(glued4, lam)
    assert len(slice_regions(glued4, lam)) == 15
    assert forms and all(ok for *_, ok in forms)


@pytest.mark.parametrize("lam,count", [((6, 6, -1, -11), 49), ((11, -3, -4, -4), 49), ((6, 6, -5, -7), 61)])
def test_degenerate_outer_pair(glued4, lam, count):
    assert len(slice_regions(glued4, lam)) == count
    counts = slice_jump_factor_counts(glued4, lam)
    assert counts and all(c == (2, True) for c in counts)
