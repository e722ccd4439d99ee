"""Acceptance criteria, one test per criterion, at the exact tolerances.

Run alone with ``pytest tests/test_acceptance.py -v``; the terminal summary
prints one PASS/FAIL line per criterion.  Criteria 4 and 6 use the k = 4
complex from the on-disk cache (built on first use, a few minutes).
"""
import itertools
import random
from fractions import Fraction

import pytest

from slkweights.exact import MultiPoly, lb_variables
from slkweights.gt import build_spf_system, count_gt, multiplicity_spf
from slkweights.kostant import (conjugate_weight_normals, enumerate_bases, is_unimodular, kpf_matrix,
                                kpf_wall_normals, multiplicity_kmf)
from slkweights.multcomplex import (assign_polynomials, beta_orbits, central_domain_polynomial,
                                    central_polynomials, compare_with_dh_walls, facet_normal_directions,
                                    lambda_complex, restricted_base_cones, restricted_chamber_complex,
                                    scaling_polynomial, slice_for_lambda)
from slkweights.arrangements import (check_boundary_factors, boundary_facets, degenerate_jump_forms,
                                     verify_factorizations)
from slkweights.typea import Weight, fundamental_weight, is_generic, partition_permutahedron, weyl_dimension

ALLOWED_K4 = {213, 229, 261, 277, 325, 337}


def _generic_sl4(rng):
    while True:
        lam = sorted(rng.sample(range(-30, 31), 4), reverse=True)
        lam = [4 * x - sum(lam) for x in lam]
        if is_generic(lam):
            return lam


@pytest.mark.acceptance(1, "three-method oracle equality and Weyl dimension")
def test_criterion_1_oracle():
    triples = 0
    for k in (2, 3, 4):
        spf = build_spf_system(k)
        for lam in itertools.combinations_with_replacement(range(8, -1, -1), k):
            total = 0
            for head in itertools.product(range(9), repeat=k - 1):
                last = sum(lam) - sum(head)
                if not 0 <= last <= 8:
                    continue
                beta = head + (last,)
                m = count_gt(lam, beta)
                assert m == multiplicity_kmf(lam, beta) == multiplicity_spf(spf, lam, beta), (lam, beta)
                total += m
                triples += 1
            assert total == weyl_dimension(lam), lam
    assert triples >= 500
    print(f"criterion 1: {triples} triples agree")


A_RAYS = [(2, -1, -1, 2, -1, -1), (2, -1, -1, -1, 2, -1), (2, -1, -1, -1, -1, 2)]
B_RAY = (1, 0, -1, 0, 0, 0)
C_RAYS = [(1, 1, -2, -2, 1, 1), (1, 1, -2, 1, -2, 1), (1, 1, -2, 1, 1, -2)]
A1, A2, A3 = A_RAYS
C1, C2, C3 = C_RAYS
CELLS_K3 = {
    (B_RAY, A1, A2, A3): (0, 3, 0, 0), (B_RAY, C1, C2, C3): (3, 0, 0, 0),
    (B_RAY, A1, C2, C3): (2, 1, -2, -1), (B_RAY, A2, C1, C3): (2, 1, 1, -1),
    (B_RAY, A3, C1, C2): (2, 1, 1, 2), (B_RAY, A1, A2, C3): (1, 2, -1, -2),
    (B_RAY, A1, A3, C2): (1, 2, -1, 1), (B_RAY, A2, A3, C1): (1, 2, 2, 1),
}


@pytest.mark.acceptance(2, "A2 chamber complex: 8 cones, rays and polynomial table")
def test_criterion_2_k3_complex():
    mc = assign_polynomials(restricted_chamber_complex(3))
    assert len(mc.cells) == 8
    names = lb_variables(3)
    expected = {tuple(sorted(rays)): MultiPoly.linear(names, [Fraction(c, 3) for c in coeffs], 1)
                for rays, coeffs in CELLS_K3.items()}
    got = {tuple(sorted(mc.rays_lambda_beta(i))): mc.polynomials[i] for i in range(8)}
    assert got == expected


@pytest.mark.acceptance(3, "Kostant partition function structure")
def test_criterion_3_kpf(kpf3):
    assert len(enumerate_bases(kpf_matrix(3))) == 16
    assert len(kpf3.complex.cells) == 7
    for n in range(1, 5):
        assert is_unimodular(kpf_matrix(n))
    for n, inst in ((3, kpf3),):
        assert kpf_wall_normals(inst) == conjugate_weight_normals(n)


@pytest.mark.acceptance(4, "A3 multiplicity complex counts and wall derivation")
def test_criterion_4_k4_complex(raw4, glued4, walls4):
    bases, cones = restricted_base_cones(4)
    assert len(bases) == 146
    assert len(cones) == 132
    assert len(raw4.cells) == 1202
    assert len(glued4.cells) == 612
    assert len(beta_orbits(glued4)) == 64
    lc = lambda_complex(glued4)
    assert len(lc.cells) == 50
    assert len(lc.symmetric_classes()) == 25
    assert len(facet_normal_directions(glued4)) == 37
    assert len({w.normal for w in walls4}) == 37
    rng = random.Random(2024)
    for _ in range(20):
        lam = _generic_sl4(rng)
        ok, extra, missing = compare_with_dh_walls(walls4, lam)
        assert ok, (lam, len(extra), len(missing))


@pytest.mark.acceptance(5, "region counts of generic sl4 permutahedra")
def test_criterion_5_region_counts():
    rng = random.Random(5)
    seen = set()
    for _ in range(50):
        lam = _generic_sl4(rng)
        count = partition_permutahedron(lam).count
        assert count in ALLOWED_K4, (lam, count)
        seen.add(count)
    assert partition_permutahedron(fundamental_weight(3, 1)).count == 1
    print(f"criterion 5: counts seen {sorted(seen)}")


@pytest.mark.acceptance(6, "boundary, jump and degenerate factorizations")
def test_criterion_6_factorization(glued3, glued4):
    for f in boundary_facets(glued3):
        rep = check_boundary_factors(glued3, *f)
        assert rep.ok and len(rep.factors) == 1
    boundary, jumps = verify_factorizations(glued4)
    counts = {}
    for rep in boundary:
        assert rep.ok, rep.to_json()
        counts.setdefault(len(rep.U), set()).add(len(rep.factors))
    assert counts == {1: {2}, 2: {3}}
    assert jumps
    for rep in jumps:
        assert rep.ok, rep.to_json()
        j = len(rep.U)
        assert sum(rep.window) == j * (4 - j)
    forms = degenerate_jump_forms(glued4, (9, 1, 1, -11))
    assert forms and all(ok for *_, ok in forms)


@pytest.mark.acceptance(7, "scaling polynomiality in t")
def test_criterion_7_scaling():
    t = MultiPoly.var(("t",), 0)
    assert scaling_polynomial((2, 1, 0), (1, 1, 1)) == t + 1
    rng = random.Random(7)
    for i in range(30):
        k = 3 if i % 2 else 4
        lam = sorted((rng.randint(0, 4) for _ in range(k)), reverse=True)
        beta = [rng.randint(0, 4) for _ in range(k - 1)]
        beta.append(sum(lam) - sum(beta))
        deg = 2 * (k - 1) * (k - 2) // 2
        p = scaling_polynomial(lam, beta, t_max=deg + 4)
        assert p.degree() <= deg


@pytest.mark.acceptance(8, "central-domain polynomials of sl4")
def test_criterion_8_central(glued4):
    forms = central_polynomials()
    rng = random.Random(8)
    sides = {"light": 0, "dark": 0}
    while min(sides.values()) < 5:
        l = [rng.randint(1, 40) for _ in range(3)]
        lam = Weight.from_fundamental(l).coords
        if not lam[0] < -lam[3] or lam[2] == 0:
            continue
        side = "light" if lam[2] > 0 else "dark"
        if sides[side] >= 5:
            continue
        assert central_domain_polynomial(glued4, l) == forms[side], (l, side)
        sides[side] += 1


def _slice_bound(lam):
    k = len(lam)
    blocks = {}
    for x in lam:
        blocks[x] = blocks.get(x, 0) + 1
    return (k * k - sum(m * m for m in blocks.values())) // 2 - k + 1


@pytest.mark.acceptance(9, "degree budgets")
def test_criterion_9_degrees(complex3, glued4):
    from slkweights.multcomplex import cached_complex
    poly4 = cached_complex(4, "poly")
    for mc in (complex3, poly4, glued4):
        n = mc.k - 1
        d = n * (n - 1) // 2
        for p in mc.polynomials:
            assert p.degree(range(n)) <= d
            assert p.degree(range(n, 2 * n)) <= d
    for lam in [(11, 4, -2, -13), (9, 1, 1, -11), (6, 6, -5, -7), (11, -3, -4, -4), (5, 5, -5, -5), (3, 3, 3, -9)]:
        bound = _slice_bound(lam)
        for _, p, _ in slice_for_lambda(glued4, lam):
            assert p.degree(range(3, 6)) <= bound, (lam, p)
