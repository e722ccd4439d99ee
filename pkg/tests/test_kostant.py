from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from slkweights.kostant import (conjugate_weight_normals, dh_density, enumerate_bases, is_unimodular,
                                kostant_pf, kostant_pf_recursive, kpf_matrix, kpf_wall_normals, multiplicity_kmf,
                                positive_roots_simple)


def test_roots_and_matrix():
    assert len(positive_roots_simple(3)) == 6
    M = kpf_matrix(2)
    assert [list(r) for r in M] == [[1, 0, 1], [0, 1, 1]]
    assert is_unimodular(kpf_matrix(3))


def test_small_partition_values():
    assert kostant_pf(2, (3, 5)) == 4  # min + 1
    assert kostant_pf(3, (1, 1, 1)) == 4
    assert kostant_pf(3, (1, -1, 0)) == 0
    assert kostant_pf(1, (7,)) == 1


@given(st.lists(st.integers(-1, 5), min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_box_kernel_matches_recursion(v):
    assert kostant_pf(3, v) == kostant_pf_recursive(3, v)


def test_a2_bases():
    assert len(enumerate_bases(kpf_matrix(2))) == 3


def test_a3_chambers(kpf3):
    assert len(kpf3.complex.cells) == 7
    assert kpf_wall_normals(kpf3) <= conjugate_weight_normals(3)


def test_a3_polynomials_match_counts(kpf3):
    for v in [(3, 4, 2), (5, 2, 6), (1, 6, 1), (4, 4, 4), (6, 1, 2)]:
        assert kpf3.evaluate(v) == kostant_pf(3, v)
    assert kpf3.label((-1, 0, 0)) == 0
    with pytest.raises(ValueError):
        kpf3.label((0, 0, 0))


def test_kpf2_polynomials(kpf2):
    assert len(kpf2.complex.cells) == 2
    for v in [(3, 7), (7, 3)]:
        assert kpf2.evaluate(v) == min(v) + 1


def test_kmf_weyl_character_value():
    assert multiplicity_kmf((2, 1, 0), (1, 1, 1)) == 2
    assert multiplicity_kmf((3, 0, 0), (1, 1, 1)) == 1
    assert multiplicity_kmf((2, 2, 0, 0), (1, 1, 1, 1)) == 2


def test_density_is_leading_coefficient_k3():
    lam, beta = (2, 0, -2), (Fraction(1, 3), Fraction(1, 5), Fraction(-8, 15))
    d = dh_density(lam, beta)
    s = 60
    m = [multiplicity_kmf([s * t * x for x in lam], [s * t * x for x in beta]) for t in (1, 2)]
    assert Fraction(m[1] - m[0], s) == d


def test_density_is_leading_coefficient_k4():
    lam = (7, 2, -3, -6)
    beta = (Fraction(3, 2), Fraction(-1, 3), Fraction(1, 4), Fraction(-17, 12))
    d = dh_density(lam, beta)
    s = 12
    m = [multiplicity_kmf([s * t * x for x in lam], [s * t * x for x in beta]) for t in (1, 2, 3, 4)]
    assert Fraction(m[3] - 3 * m[2] + 3 * m[1] - m[0], 6 * s ** 3) == d


def test_density_rejects_wall_points():
    with pytest.raises(ValueError):
        dh_density((2, 0, -2), (0, 0, 0))
