"""Kostant arrangements, type vectors and parallel-factor checks.

A point (lambda, beta) has, for each sigma in S_k, the Kostant-chamber label
of ``sigma(lambda + delta) - (psi(beta) + delta)``.  Inside a region of the
arrangement these labels are fixed, and the multiplicity is the alternating
sum of the chamber polynomials.  Polynomials of the multiplicity complex are
checked for the parallel linear factors this forces near walls.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import MultiPoly, lb_variables, rat
from .kostant import KPFInstance
from .multcomplex import MultComplex, _share_facet, _subset_data, _up_to_sign, slice_regions
from .typea import Weight, fundamental_weight, permutation_sign, rho


def delta_shift(V: Sequence[int], W: Sequence[int], k: int) -> Fraction:
    """sum(delta_v) - sum(delta_w) with 0-based indices."""
    if len(V) != len(W):
        raise ValueError("V and W must have the same size")
    d = rho(k)
    return sum((d[v] for v in V), Fraction(0)) - sum((d[w] for w in W), Fraction(0))


@dataclass(frozen=True)
class AffineHyperplane:
    """``beta_U - lambda_V - shift = 0`` (0-based index sets)."""

    k: int
    U: tuple[int, ...]
    V: tuple[int, ...]
    shift: Fraction

    @classmethod
    def make(cls, k, U, V, shift=0) -> "AffineHyperplane":
        U, V = tuple(sorted(U)), tuple(sorted(V))
        if len(U) != len(V) or not U:
            raise ValueError("U and V must be nonempty and of equal size")
        shift = rat(shift)
        if 2 * len(U) > k or (2 * len(U) == k and 0 not in U):
            # complements describe the same hyperplane with negated data
            U = tuple(i for i in range(k) if i not in U)
            V = tuple(i for i in range(k) if i not in V)
            shift = -shift
        return cls(k, U, V, shift)

    @property
    def j(self) -> int:
        return len(self.U)

    def value(self, lam: Sequence, beta: Sequence) -> Fraction:
        lam = Weight.of(lam).coords
        beta = Weight.of(beta).coords
        return sum(beta[u] for u in self.U) - sum(lam[v] for v in self.V) - self.shift

    def gamma_lb(self) -> tuple[list[Fraction], Fraction]:
        """Defining equation as (coefficients on (l, b), constant)."""
        return gamma_lb(self.k, self.U, self.V), -self.shift

    def gamma(self) -> MultiPoly:
        coeffs, const = self.gamma_lb()
        return MultiPoly.linear(lb_variables(self.k), coeffs, const)

    def text(self) -> str:
        bs = " + ".join(f"beta_{u + 1}" for u in self.U)
        ls = " + ".join(f"lambda_{v + 1}" for v in self.V)
        return f"{bs} = {ls} + {self.shift}"


def gamma_lb(k: int, U: Sequence[int], V: Sequence[int]) -> list[Fraction]:
    """beta_U - lambda_V as a linear form in (l, b)."""
    n = k - 1
    out = [Fraction(0)] * (2 * n)
    for i in range(n):
        w = fundamental_weight(k, i + 1)
        out[i] = -sum(w[v] for v in V)
        out[n + i] = sum(w[u] for u in U)
    return out


def _subsets(k):
    for j in range(1, k // 2 + 1):
        yield from itertools.combinations(range(k), j)


def kostant_arrangement(lam, psi: Sequence[int] | None = None, k: int | None = None) -> list[AffineHyperplane]:
    """Hyperplanes ``beta_U = lambda_V + shift(V, W)`` with lambda kept symbolic.

    With ``psi`` the family of that positive system (U = psi^{-1}(W));
    without it the union over all choices, where U, V, W are independent.
    ``lam`` only fixes k when given; the data are symbolic in lambda.
    """
    if k is None:
        k = len(lam)
    out = set()
    for V in _subsets(k):
        for W in itertools.combinations(range(k), len(V)):
            sh = delta_shift(V, W, k)
            if psi is None:
                Us = itertools.combinations(range(k), len(V))
            else:
                inv = [0] * k
                for i, p in enumerate(psi):
                    inv[p] = i
                Us = [tuple(sorted(inv[w] for w in W))]
            for U in Us:
                out.add(AffineHyperplane.make(k, U, V, sh))
    return sorted(out, key=lambda h: (h.j, h.U, h.V, h.shift))


# ---------------------------------------------------------------------------
# type vectors

class NonGenericError(ValueError):
    def __init__(self, sigma, point):
        super().__init__(f"sigma={sigma}: argument {tuple(map(str, point))} lies on a Kostant chamber wall")
        self.sigma = sigma
        self.point = point


def _apply_perm(sigma: Sequence[int], x: Sequence) -> list:
    """(sigma x)_i = x_{sigma^{-1}(i)}."""
    out = [None] * len(x)
    for i, s in enumerate(sigma):
        out[s] = x[i]
    return out


def kpf_argument(lam, beta, sigma, psi) -> list[Fraction]:
    """sigma(lambda + delta) - (psi(beta) + delta) in simple-root coordinates."""
    lam = Weight.of(lam).coords
    beta = Weight.of(beta).coords
    d = rho(len(lam))
    ld = _apply_perm(sigma, [a + b for a, b in zip(lam, d)])
    pb = _apply_perm(psi, beta)
    w = [x - y - z for x, y, z in zip(ld, pb, d)]
    out, acc = [], Fraction(0)
    for x in w[:-1]:
        acc += x
        out.append(acc)
    return out


@dataclass(frozen=True)
class TypeVector:
    psi: tuple[int, ...]
    perms: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(zip(self.perms, self.labels))


def type_vector(lam, beta, psi: Sequence[int], kpf: KPFInstance) -> TypeVector:
    k = kpf.n + 1
    perms = tuple(itertools.permutations(range(k)))
    labels = []
    for sigma in perms:
        v = kpf_argument(lam, beta, sigma, psi)
        try:
            labels.append(kpf.label(v, strict=True))
        except ValueError:
            raise NonGenericError(sigma, v) from None
    return TypeVector(tuple(psi), perms, tuple(labels))


def _kpf_argument_lb(k: int, sigma, psi) -> list[MultiPoly]:
    """Simple-root coordinates of the Kostant argument as polynomials in (l, b)."""
    names = lb_variables(k)
    n = k - 1
    d = rho(k)
    lam = [MultiPoly.constant(names, 0)] * k
    beta = [MultiPoly.constant(names, 0)] * k
    for i in range(n):
        w = fundamental_weight(k, i + 1)
        li = MultiPoly.var(names, i)
        bi = MultiPoly.var(names, n + i)
        lam = [a + li * w[t] for t, a in enumerate(lam)]
        beta = [a + bi * w[t] for t, a in enumerate(beta)]
    ld = _apply_perm(sigma, [a + d[t] for t, a in enumerate(lam)])
    pb = _apply_perm(psi, beta)
    w = [x - y - d[t] for t, (x, y) in enumerate(zip(ld, pb))]
    out, acc = [], MultiPoly.constant(names, 0)
    for x in w[:-1]:
        acc = acc + x
        out.append(acc)
    return out


def piecewise_multiplicity(lam, beta, psi: Sequence[int], kpf: KPFInstance,
                           symbolic: bool = True) -> tuple[Fraction, MultiPoly | None]:
    """Alternating sum of Kostant chamber polynomials for a fixed type vector.

    Returns the value at (lambda, beta) and, with ``symbolic``, the
    polynomial in (l, b) valid on the whole arrangement region.
    """
    tv = type_vector(lam, beta, psi, kpf)
    k = kpf.n + 1
    total = Fraction(0)
    poly = MultiPoly.constant(lb_variables(k), 0) if symbolic else None
    for sigma, label in zip(tv.perms, tv.labels):
        if label == 0:
            continue
        sign = permutation_sign(sigma)
        p = kpf.polynomial(label)
        total += sign * p.evaluate(kpf_argument(lam, beta, sigma, psi))
        if symbolic:
            poly = poly + p.compose(_kpf_argument_lb(k, sigma, psi)) * sign
    return total, poly


# ---------------------------------------------------------------------------
# factor checks

def max_shift(j: int, k: int) -> int:
    return j * (k - j)


@dataclass
class FactorReport:
    check: str
    ok: bool
    cell: int | tuple[int, int]
    U: tuple[int, ...]
    V: tuple[int, ...]
    factors: list[int]
    missing: list[int]
    polynomial: str
    window: tuple[int, int] | None = None

    def to_json(self) -> dict:
        out = {"check": self.check, "ok": self.ok, "cell": self.cell, "U": list(self.U), "V": list(self.V),
               "factors": self.factors, "missing_factor": self.missing, "polynomial": self.polynomial}
        if self.window is not None:
            out["s_minus"], out["s_plus"] = self.window
        return out


def _restrict_l(p: MultiPoly, gamma: list, const, lam_l):
    if lam_l is None:
        return p, gamma, const
    n = len(lam_l)
    p = p.substitute({i: lam_l[i] for i in range(n)})
    const = const + sum(gamma[i] * lam_l[i] for i in range(n))
    gamma = [0] * n + list(gamma[n:])
    return p, gamma, const


def boundary_facets(mc: MultComplex):
    """(cell, U, V, side) for every cell facet on the permutahedron boundary.

    ``side`` is +1 when the cell lies in gamma >= 0, -1 when in gamma <= 0.
    """
    k = mc.k
    out = []
    for i, cell in enumerate(mc.cells):
        for nrm in cell.facets:
            if not any(nrm[k - 1:]):
                continue
            sub = _subset_data(nrm, k)
            if sub is None:
                continue
            U, V = sub
            j = len(V)
            top, bottom = tuple(range(j)), tuple(range(k - j, k))
            if V not in (top, bottom):
                continue
            g = gamma_lb(k, U, V)
            side = 1 if sum(a * b for a, b in zip(g, nrm)) > 0 else -1
            out.append((i, U, V, side))
    return out


def check_boundary_factors(mc: MultComplex, cell: int, U, V, side: int, lam=None) -> FactorReport:
    """Trial-divide a boundary cell polynomial by the parallel shifts of gamma.

    For a cell in gamma <= 0 the factors are gamma+1 .. gamma+J-1, for
    gamma >= 0 they are gamma-1 .. gamma-(J-1), J = j(k-j).  With ``lam``
    the check runs on the lambda-slice instead of the lifted polynomial.
    """
    k = mc.k
    j = len(U)
    if tuple(V) not in (tuple(range(j)), tuple(range(k - j, k))):
        raise ValueError("facet is not on the permutahedron boundary")
    J = max_shift(j, k)
    g = gamma_lb(k, U, V)
    lam_l = None if lam is None else list(Weight.of(lam).fundamental())
    p, gg, c0 = _restrict_l(mc.polynomials[cell], g, Fraction(0), lam_l)
    factors, missing = [], []
    for t in range(1, J):
        c = side * t
        (factors if p.divisible_by_linear(gg, c0 + c) else missing).append(c)
    return FactorReport("boundary", not missing, cell, tuple(U), tuple(V), factors, missing, p.to_text())


def parallel_factors(p: MultiPoly, gamma: Sequence, const, span: int) -> list[int]:
    """Integers c in [-span, span] with gamma + const + c dividing p."""
    return [c for c in range(-span, span + 1) if p.divisible_by_linear(gamma, rat(const) + c)]


def check_jump_factors(p1: MultiPoly, p2: MultiPoly, k: int, U, V, lam=None):
    """Search the window (gamma - s_minus + 1) ... (gamma + s_plus - 1) in p1 - p2.

    Returns (report, windows) where windows lists every (s_minus, s_plus)
    with s_minus + s_plus = j(k-j) whose factors all divide the jump.  A
    zero jump returns an empty window list with ``ok`` set.
    """
    j = len(U)
    J = max_shift(j, k)
    g = gamma_lb(k, U, V)
    lam_l = None if lam is None else list(Weight.of(lam).fundamental())
    diff, gg, c0 = _restrict_l(p1 - p2, g, Fraction(0), lam_l)
    if diff.is_zero():
        return FactorReport("jump", True, (-1, -1), tuple(U), tuple(V), [], [], "0"), []
    found = parallel_factors(diff, gg, c0, J)
    windows = []
    for sm in range(J + 1):
        sp = J - sm
        need = range(-sm + 1, sp)
        if all(c in found for c in need):
            windows.append((sm, sp))
    missing = [] if windows else [c for c in range(-J + 1, J) if c not in found]
    rep = FactorReport("jump", bool(windows), (-1, -1), tuple(U), tuple(V), found, missing, diff.to_text(),
                       windows[0] if windows else None)
    return rep, windows


def adjacent_jumps(mc: MultComplex):
    """(i, j, U, V) for adjacent cells meeting along a beta-wall."""
    k = mc.k
    out = []
    for a, b in mc.adjacency:
        ca, cb = mc.cells[a], mc.cells[b]
        shared = [n for n in ca.facets if tuple(-x for x in n) in set(cb.facets)]
        for n in shared:
            if not any(n[k - 1:]):
                continue
            sub = _subset_data(n, k)
            if sub is None:
                continue
            out.append((a, b) + sub)
    return out


def verify_factorizations(mc: MultComplex, lam=None) -> tuple[list[FactorReport], list[FactorReport]]:
    boundary = [check_boundary_factors(mc, i, U, V, s, lam) for i, U, V, s in boundary_facets(mc)]
    jumps = []
    for a, b, U, V in adjacent_jumps(mc):
        rep, _ = check_jump_factors(mc.polynomials[a], mc.polynomials[b], mc.k, U, V, lam)
        rep.cell = (a, b)
        jumps.append(rep)
    return boundary, jumps


# ---------------------------------------------------------------------------
# degenerate slices

def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    return Fraction(a, b) if a * a == x.numerator and b * b == x.denominator else None


def quadratic_square_form(q: MultiPoly, k: int, c: Fraction | None = None):
    """Write q = c * g * (g + 1) with g = beta_U + e, or return None.

    Only the b-variables of q may occur.  Returns (c, U, e).  A constant q
    needs ``c`` and then gives U = () (g constant).
    """
    n = k - 1
    if any(any(e[:n]) for e in q.terms):
        return None
    if q.degree() == 0 and c:
        r = _rational_sqrt(1 + 4 * q.evaluate((0,) * (2 * n)) / c)
        return None if r is None else (c, (), (r - 1) / 2)
    if q.degree() != 2:
        return None
    for U in _subsets(k):
        f = gamma_lb(k, U, ())[n:]
        g = MultiPoly.linear(q.variables, [0] * n + f)
        quad = MultiPoly(q.variables, {e: c for e, c in q.terms.items() if sum(e) == 2})
        g2 = g * g
        e0, c0 = next(iter(g2.terms.items()))
        c = quad.terms.get(e0, Fraction(0)) / c0
        if not c or quad != g2 * c:
            continue
        lin = MultiPoly(q.variables, {e: v for e, v in q.terms.items() if sum(e) == 1})
        # c*g(g+1) with g -> g + e has linear part c*(2e+1)*g
        e1, v1 = next(iter(g.terms.items()))
        mu = lin.terms.get(e1, Fraction(0)) / (c * v1)
        if lin != g * (c * mu):
            continue
        e = (mu - 1) / 2
        if q.terms.get((0,) * (2 * n), Fraction(0)) == c * (e * e + e):
            return c, U, e
    return None


def degenerate_jump_forms(mc: MultComplex, lam) -> list[tuple[MultiPoly, MultiPoly, bool]]:
    """For adjacent slice regions, check q_i = c g_i(g_i + 1), so that
    q_1 - q_2 = c (g_1 - g_2)(g_1 + g_2 + 1)."""
    regions = slice_regions(mc, lam)
    k = mc.k
    out = []
    for (P, p), (Q, q) in itertools.combinations(regions, 2):
        if p == q or not _share_facet(P, Q, k - 1):
            continue
        fp, fq = quadratic_square_form(p, k), quadratic_square_form(q, k)
        if fp is None and fq is not None:
            fp = quadratic_square_form(p, k, fq[0])
        elif fq is None and fp is not None:
            fq = quadratic_square_form(q, k, fp[0])
        ok = fp is not None and fq is not None and fp[0] == fq[0]
        if ok:
            names = p.variables
            c = fp[0]
            g1 = MultiPoly.linear(names, [0] * (k - 1) + gamma_lb(k, fp[1], ())[k - 1:], fp[2])
            g2 = MultiPoly.linear(names, [0] * (k - 1) + gamma_lb(k, fq[1], ())[k - 1:], fq[2])
            ok = (p - q) == (g1 - g2) * (g1 + g2 + 1) * c
        out.append((p, q, ok))
    return out


def jump_hyperplane(P, Q):
    """The shared facet hyperplane (a, c) of two adjacent slice polytopes."""
    for a, c in P.ineqs:
        if (tuple(-x for x in a), -c) in Q.ineqs:
            return a, c
    return None


def slice_jump_factor_counts(mc: MultComplex, lam) -> list[tuple[int, bool]]:
    """Number of parallel factors of each nonzero jump across adjacent slice regions.

    Returns (count, contains_gamma) per pair; the jump polynomial is written in
    x = (beta_1..beta_{k-1}) coordinates through the b-variables.
    """
    regions = slice_regions(mc, lam)
    k = mc.k
    n = k - 1
    W = [[fundamental_weight(k, j + 1)[i] for j in range(n)] for i in range(n)]  # x = W b
    out = []
    for (P, p), (Q, q) in itertools.combinations(regions, 2):
        if p == q or not _share_facet(P, Q, n):
            continue
        a, c = jump_hyperplane(P, Q)
        # a·x - c = a·W b - c
        coeffs = [0] * n + [sum(a[i] * W[i][j] for i in range(n)) for j in range(n)]
        span = 2 * n * n
        found = [t for t in range(-span, span + 1) if (p - q).divisible_by_linear(coeffs, -rat(c) + t)]
        # group by consecutive runs containing 0 (gamma itself)
        out.append((len(found), 0 in found))
    return out


def up_to_sign(v):
    return _up_to_sign(v)
