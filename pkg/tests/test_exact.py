from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from slkweights.exact import (FitError, MultiPoly, determinant, fit_polynomial, interpolate_simplex_grid, inverse,
                              lb_variables, mat_mul, monomials, nullspace, primitive, rank, rref, solve_linear)
from slkweights.gt import build_spf_system
from slkweights.kostant import kpf_matrix

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n))


def test_identity_solve():
    sol = solve_linear([[1, 0], [0, 1]], [3, Fraction(1, 2)])
    assert sol.feasible and sol.unique
    assert list(sol.particular) == [3, Fraction(1, 2)]


def test_underdetermined_solve():
    sol = solve_linear([[1, 1]], [1])
    assert list(sol.particular) == [1, 0]
    assert len(sol.kernel) == 1
    v = sol.kernel[0]
    assert v[0] == -v[1] != 0


def test_infeasible_solve():
    assert not solve_linear([[1, 1], [2, 2]], [1, 3]).feasible


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_linear([[1, 2]], [1, 2])


def test_gt_row_sum_elimination_k3():
    # unknowns x11 >= x21 >= ... ; row sums give x[1][1] and x[2][2] from beta and x[2][1]
    # variables (x21, x22, x11), equations x11 = b1, x21 + x22 = b1 + b2
    sol = solve_linear([[0, 0, 1], [1, 1, 0]], [5, 7])
    assert sol.particular[2] == 5
    assert len(sol.kernel) == 1 and sol.kernel[0][2] == 0


def test_determinants():
    assert determinant([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    M = kpf_matrix(3)
    assert determinant([[row[j] for j in range(3)] for row in M]) == 1
    assert rank(build_spf_system(3).E) == 5


@given(matrices)
def test_inverse_and_rank(A):
    r = rank(A)
    n = len(A)
    assert r == len(rref(A)[1])
    assert len(nullspace(A, n)) == n - r
    if determinant(A) != 0:
        I = mat_mul(A, inverse(A))
        assert I == [[int(i == j) for j in range(n)] for i in range(n)]
    else:
        assert r < n


@given(fracs, fracs, fracs)
def test_rational_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    if a and b:
        assert (a / b) * (b / a) == 1


def test_primitive():
    assert primitive([Fraction(2, 3), Fraction(-4, 3), 0]) == (1, -2, 0)


def test_poly_arithmetic_and_text():
    names = lb_variables(3)
    l1 = MultiPoly.var(names, "l1")
    b2 = MultiPoly.var(names, "b2")
    p = (l1 + 1) * (l1 - b2)
    assert p.evaluate((2, 0, 0, 1)) == 3
    assert p.degree() == 2
    assert p.degree([2, 3]) == 1
    assert MultiPoly.from_json(p.to_json()) == p
    assert (l1 * Fraction(2, 3) + 1).to_text() == "1 + (2/3)*l1"


def test_poly_hyperplane_divisibility():
    names = ("x", "y")
    x, y = MultiPoly.var(names, 0), MultiPoly.var(names, 1)
    p = (x - y + 2) * (x + 3)
    assert p.divisible_by_linear([1, -1], 2)
    assert p.divisible_by_linear([1, 0], 3)
    assert not p.divisible_by_linear([1, 0], 2)
    assert p.restrict_to_hyperplane([1, 0], 3).is_zero()


def test_fit_constant():
    p = fit_polynomial([((0,), 1), ((1,), 1), ((2,), 1)], ("x",), total_degree=0)
    assert p == MultiPoly.constant(("x",), 1)


def test_fit_one_plus_l2():
    names = ("l1", "l2")
    samples = [((a, b), 1 + b) for a in range(3) for b in range(3)]
    assert fit_polynomial(samples, names, total_degree=2) == MultiPoly.linear(names, [0, 1], 1)


def test_fit_kpf_a2_branch():
    # K(a, b - a, -b) = min(a, b) + 1; the branch a < b is a + 1
    samples = [((a, b), min(a, b) + 1) for a in range(4) for b in range(a + 1, a + 5)]
    assert fit_polynomial(samples, ("a", "b"), total_degree=2) == MultiPoly.linear(("a", "b"), [1, 0], 1)


def test_fit_inconsistent_raises():
    with pytest.raises(FitError):
        fit_polynomial([((0,), 0), ((1,), 1), ((2,), 0)], ("x",), total_degree=1)


@settings(max_examples=30)
@given(st.lists(fracs, min_size=6, max_size=6), st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_grid_interpolation_reproduces_quadratics(coeffs, base):
    names = ("x", "y")
    mons = monomials(2, total_degree=2)
    target = MultiPoly(names, dict(zip(mons, coeffs)))
    got = interpolate_simplex_grid(lambda v: target.evaluate(v), base, 3, 2, names)
    assert got == target


def test_fit_reproduces_samples():
    names = ("x", "y")
    pts = [(a, b) for a in range(4) for b in range(4)]
    f = lambda x, y: Fraction(x * x, 2) - 3 * x * y + y + 7
    p = fit_polynomial([(q, f(*q)) for q in pts], names, total_degree=2)
    assert all(p.evaluate(q) == f(*q) for q in pts)
