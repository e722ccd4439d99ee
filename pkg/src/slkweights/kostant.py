"""Kostant partition function of A_n, its chamber complex and Kostant's formula."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import _accel
from .exact import MultiPoly, determinant, dot, interpolate_simplex_grid, rank, rat
from .polyhedra import (ComplexOfCones, Cone, Polytope, common_refinement, lattice_points,
                        refinement_certificate, support_cone)
from .typea import dh_walls, normalize_pair, permutation_sign, to_x, Weight


def positive_roots_simple(n: int) -> list[tuple[int, ...]]:
    """Positive roots of A_n in simple-root coordinates, simple roots first.

    Ordered by height, then by leftmost simple root, so for A_3 the columns
    are a1, a2, a3, a1+a2, a2+a3, a1+a2+a3.
    """
    out = []
    for h in range(1, n + 1):
        for i in range(n - h + 1):
            out.append(tuple(int(i <= t < i + h) for t in range(n)))
    return out


def kpf_matrix(n: int) -> list[list[int]]:
    """M_{A_n}: n rows, one column per positive root."""
    cols = positive_roots_simple(n)
    return [[c[i] for c in cols] for i in range(n)]


def _columns(M) -> list[tuple]:
    return [tuple(row[j] for row in M) for j in range(len(M[0]))]


def kostant_pf(n: int, v: Sequence[int], use_numba: bool | None = None) -> int:
    """Number of ways to write v (simple-root coordinates) as a sum of positive roots."""
    v = [int(x) for x in v]
    if len(v) != n:
        raise ValueError("wrong dimension")
    if any(x < 0 for x in v):
        return 0
    if n <= 1:
        return 1
    rest = positive_roots_simple(n)[n:]
    # simple-root multiplicities are v - sum(rest), so they must stay >= 0
    A = [[c[i] for c in rest] for i in range(n)]
    bound = max(v)
    return _accel.count_points_box(A, v, [0] * len(rest), [bound] * len(rest), use_numba=use_numba)


def kostant_pf_recursive(n: int, v: Sequence[int]) -> int:
    """Reference implementation: memoized recursion over the positive roots."""
    roots = positive_roots_simple(n)

    @lru_cache(maxsize=None)
    def rec(i: int, w: tuple[int, ...]) -> int:
        if any(x < 0 for x in w):
            return 0
        if i == len(roots):
            return int(not any(w))
        r = roots[i]
        total = 0
        cur = w
        while all(x >= 0 for x in cur):
            total += rec(i + 1, cur)
            cur = tuple(a - b for a, b in zip(cur, r))
        return total

    return rec(0, tuple(int(x) for x in v))


def enumerate_bases(M) -> list[tuple[int, ...]]:
    """Column subsets of size rank(M) with nonzero determinant (0-based, sorted)."""
    d = len(M)
    if rank(M) != d:
        raise ValueError("matrix is not of full row rank")
    cols = _columns(M)
    out = []
    for s in itertools.combinations(range(len(cols)), d):
        if determinant([cols[i] for i in s]) != 0:
            out.append(s)
    return out


def is_unimodular(M) -> bool:
    cols = _columns(M)
    d = len(M)
    if rank(M) != d:
        raise ValueError("matrix is not of full row rank")
    for s in itertools.combinations(range(len(cols)), d):
        det = determinant([cols[i] for i in s])
        if det not in (0, 1, -1):
            return False
    return True


def basis_cone(M, sigma: Sequence[int]) -> Cone:
    cols = _columns(M)
    return Cone.from_rays([cols[i] for i in sigma], dim=len(M))


def kpf_variables(n: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(1, n + 1))


def _deep_base(cell: Cone, degree: int, step: int = 1) -> tuple[int, ...]:
    """Integer point p with every ``p + step*a`` (a >= 0, |a| <= degree) interior."""
    s = cell.interior_point()
    t = 1
    while True:
        p = tuple(t * x for x in s)
        if all(dot(nrm, p) > step * degree * max(0, -min(nrm)) for nrm in cell.facets):
            return p
        t += 1


@dataclass
class KPFInstance:
    n: int
    M: list[list[int]]
    bases: list[tuple[int, ...]]
    complex: ComplexOfCones
    polynomials: list[MultiPoly]
    support: Cone

    @property
    def variables(self) -> tuple[str, ...]:
        return kpf_variables(self.n)

    def label(self, v: Sequence, strict: bool = True) -> int:
        """Chamber label of v: 1..r for chambers, 0 outside the support.

        With ``strict`` a point on a wall (including the support boundary)
        raises ValueError.
        """
        v = [rat(x) for x in v]
        if not self.support.contains(v):
            return 0
        hits = [i for i, c in enumerate(self.complex.cells) if c.contains(v)]
        inner = [i for i in hits if self.complex.cells[i].contains_in_interior(v)]
        if len(inner) == 1 and len(hits) == 1:
            return inner[0] + 1
        if strict:
            raise ValueError(f"point {tuple(map(str, v))} lies on a chamber wall")
        return hits[0] + 1

    def polynomial(self, label: int) -> MultiPoly:
        if label == 0:
            return MultiPoly(self.variables)
        return self.polynomials[label - 1]

    def evaluate(self, v: Sequence) -> Fraction:
        return self.polynomial(self.label(v, strict=False)).evaluate(v)

    def to_json(self) -> dict:
        return {"n": self.n, "bases": [list(b) for b in self.bases],
                "chambers": [{"label": i + 1, "cone": c.to_json(), "polynomial": p.to_text()}
                             for i, (c, p) in enumerate(zip(self.complex.cells, self.polynomials))],
                "exterior_label": 0}


def kpf_chamber_complex(n: int, stretch: bool = False, check_bound: int = 6) -> KPFInstance:
    """Chamber complex of M_{A_n} with one interpolated polynomial per chamber."""
    if n < 1:
        raise ValueError("n >= 1")
    if n > 3 and not stretch:
        raise ValueError("A_n with n > 3 needs stretch=True")
    M = kpf_matrix(n)
    bases = enumerate_bases(M)
    cones = [basis_cone(M, s) for s in bases]
    cx = common_refinement(cones)
    sup = support_cone(cones)
    names = kpf_variables(n)
    degree = math.comb(n, 2)
    polys = []
    for cell in cx.cells:
        base = _deep_base(cell, degree)
        p = interpolate_simplex_grid(lambda v: kostant_pf(n, v), base, 1, degree, names)
        polys.append(p)
    inst = KPFInstance(n, M, bases, cx, polys, sup)
    if check_bound:
        verify_kpf_polynomials(inst, check_bound)
    return inst


def verify_kpf_polynomials(inst: KPFInstance, bound: int) -> int:
    """Check every chamber polynomial at all lattice points of its closed chamber
    with coordinate sum <= bound.  Returns the number of points checked."""
    n = inst.n
    checked = 0
    for cell, p in zip(inst.complex.cells, inst.polynomials):
        poly = Polytope.from_halfspaces([(tuple(-x for x in nrm), 0) for nrm in cell.facets]
                                        + [((1,) * n, bound)], dim=n)
        for pt in lattice_points(poly):
            if p.evaluate(pt) != kostant_pf(n, pt):
                raise AssertionError(f"chamber polynomial {p} fails at {pt}")
            checked += 1
    return checked


def conjugate_weight_normals(n: int) -> set[tuple[int, ...]]:
    """Conjugates of fundamental weights as functionals in simple-root coordinates.

    e_U pairs with alpha_i to [i in U] - [i+1 in U]; normals are taken up to
    sign.
    """
    k = n + 1
    out = set()
    for j in range(1, k):
        for U in itertools.combinations(range(k), j):
            h = tuple(int(i in U) - int(i + 1 in U) for i in range(n))
            out.add(_up_to_sign(h))
    return out


def _up_to_sign(v):
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def kpf_wall_normals(inst_or_n) -> set[tuple[int, ...]]:
    inst = inst_or_n if isinstance(inst_or_n, KPFInstance) else kpf_chamber_complex(inst_or_n, check_bound=0)
    out = set()
    for c in inst.complex.cells:
        for nrm in c.facets:
            out.add(_up_to_sign(nrm))
    return out


# ---------------------------------------------------------------------------
# Kostant's multiplicity formula

def _simple_coords(w: Sequence[int]) -> list[int]:
    """Root-lattice vector (sum zero) in simple-root coordinates."""
    out, acc = [], 0
    for x in w[:-1]:
        acc += x
        out.append(acc)
    return out


def multiplicity_kmf(lam: Sequence, beta: Sequence, use_numba: bool | None = None) -> int:
    """sum over S_k of sign(sigma) K(sigma(lambda+delta) - (beta+delta))."""
    lam_gl, beta_gl, _ = normalize_pair(lam, beta)
    if beta_gl is None:
        return 0
    k = len(lam_gl)
    d = [k - 1 - i for i in range(k)]
    ld = [a + b for a, b in zip(lam_gl, d)]
    bd = [a + b for a, b in zip(beta_gl, d)]
    total = 0
    for perm in itertools.permutations(range(k)):
        w = [ld[perm[i]] - bd[i] for i in range(k)]
        v = _simple_coords(w)
        if any(x < 0 for x in v):
            continue
        total += permutation_sign(perm) * kostant_pf(k - 1, v, use_numba)
    return total


def _volume_k(n: int, v: Sequence) -> Fraction:
    """Volume of {kappa >= 0 : M kappa = v} in the non-simple coordinates."""
    v = [rat(x) for x in v]
    if any(x < 0 for x in v):
        return Fraction(0)
    if n <= 1:
        return Fraction(1)
    rest = positive_roots_simple(n)[n:]
    m = len(rest)
    ineqs = [([c[i] for c in rest], v[i]) for i in range(n)]
    ineqs += [(tuple(-int(i == j) for j in range(m)), 0) for i in range(m)]
    poly = Polytope.from_halfspaces(ineqs, dim=m)
    if poly.is_empty or poly.dimension < m:
        return Fraction(0)
    return poly.volume()


def dh_density(lam, beta, check_regular: bool = True) -> Fraction:
    """Alternating sum of the volumes {kappa >= 0 : sum kappa_a a = sigma(lambda) - beta}."""
    lam = Weight.of(lam) if not isinstance(lam, Weight) else lam
    beta = [rat(x) for x in beta]
    beta = [b - sum(beta) / len(beta) for b in beta]
    k = lam.k
    if check_regular:
        x = to_x(beta)
        for w in dh_walls(lam):
            if w.polytope.contains(x):
                raise ValueError("beta lies on a wall; the density is not smooth there")
    total = Fraction(0)
    for perm in itertools.permutations(range(k)):
        w = [lam[perm[i]] - beta[i] for i in range(k)]
        v = []
        acc = Fraction(0)
        for x in w[:-1]:
            acc += x
            v.append(acc)
        total += permutation_sign(perm) * _volume_k(k - 1, v)
    return total
