"""Exact rational linear algebra and multivariate polynomials.

Every quantity in the package is a :class:`fractions.Fraction` or a Python
``int``; nothing here touches floating point.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

Rat = Fraction


def rat(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"2/3"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def rat_matrix(rows) -> list[list[Fraction]]:
    return [[rat(x) for x in row] for row in rows]


def _shape(A) -> tuple[int, int]:
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    return m, n


def _clear_denominators(A) -> list[list[int]]:
    """Scale every row to integers (rank and zero pattern are preserved)."""
    out = []
    for row in A:
        row = [rat(x) for x in row]
        den = math.lcm(*[x.denominator for x in row]) if row else 1
        out.append([int(x * den) for x in row])
    return out


def bareiss(A) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free Gaussian elimination on an integer copy of ``A``.

    Returns ``(echelon, pivot_columns, sign)`` where ``sign`` tracks row swaps.
    The last pivot of a square full-rank input equals its determinant.
    """
    M = _clear_denominators(A)
    m, n = _shape(M)
    pivots: list[int] = []
    sign = 1
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            sign = -sign
        piv = M[r][c]
        for i in range(r + 1, m):
            a = M[i][c]
            row_i, row_r = M[i], M[r]
            for j in range(c + 1, n):
                row_i[j] = (piv * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        # columns skipped before c are already zero below row r
        prev = piv
        pivots.append(c)
        r += 1
    return M, pivots, sign


def determinant(A) -> Fraction:
    m, n = _shape(A)
    if m != n:
        raise ValueError(f"determinant needs a square matrix, got {m}x{n}")
    if m == 0:
        return Fraction(1)
    scale = Fraction(1)
    for row in A:
        den = math.lcm(*[rat(x).denominator for x in row])
        scale /= den
    # Bareiss needs every skipped column to be zero below the pivot row;
    # a square matrix with a missing pivot is singular.
    M, pivots, sign = bareiss(A)
    if len(pivots) < m:
        return Fraction(0)
    return scale * sign * M[m - 1][m - 1]


def rank(A) -> int:
    if not A or not A[0]:
        return 0
    return len(bareiss(A)[1])


def rref(A) -> tuple[list[list[Fraction]], list[int]]:
    M = rat_matrix(A)
    m, n = _shape(M)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def nullspace(A, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}`` (one vector per free column)."""
    if not A:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = rref(A)
    n = len(R[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def primitive(v: Iterable) -> tuple[int, ...]:
    """Smallest integer vector on the same ray as ``v``."""
    v = [rat(x) for x in v]
    den = math.lcm(*[x.denominator for x in v]) if v else 1
    w = [int(x * den) for x in v]
    g = math.gcd(*w)
    if g == 0:
        return tuple(w)
    return tuple(x // g for x in w)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def mat_vec(A, v):
    return [dot(row, v) for row in A]


def mat_mul(A, B):
    Bt = list(zip(*B))
    return [[dot(row, col) for col in Bt] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def inverse(A) -> list[list[Fraction]]:
    m, n = _shape(A)
    if m != n:
        raise ValueError("inverse needs a square matrix")
    aug = [list(map(rat, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


@dataclass(frozen=True)
class LinearSolution:
    """Solution set of ``A x = b``: ``particular + span(kernel)``.

    ``feasible`` is False when the system has no solution; the other fields
    are then empty.
    """

    feasible: bool
    particular: tuple[Fraction, ...] = ()
    kernel: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def unique(self) -> bool:
        return self.feasible and not self.kernel


def solve_linear(A, b) -> LinearSolution:
    m, n = _shape(A)
    if len(b) != m:
        raise ValueError(f"matrix has {m} rows but right-hand side has {len(b)}")
    aug = [list(map(rat, row)) + [rat(x)] for row, x in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        return LinearSolution(False)
    x = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    kernel = tuple(tuple(v) for v in nullspace(A, n)) if m else tuple(
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    return LinearSolution(True, tuple(x), kernel)


# ---------------------------------------------------------------------------
# multivariate polynomials

Exponent = tuple[int, ...]


def _fmt_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"({c.numerator}/{c.denominator})"


class MultiPoly:
    """Polynomial with rational coefficients over a fixed ordered variable list.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] = ()):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[Exponent, Fraction] = {}
        for e, c in dict(terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match {n} variables")
            c = rat(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def constant(cls, variables, c) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, name_or_index) -> "MultiPoly":
        variables = tuple(variables)
        i = name_or_index if isinstance(name_or_index, int) else variables.index(name_or_index)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def linear(cls, variables, coeffs, const=0) -> "MultiPoly":
        n = len(variables)
        terms = {(0,) * n: const}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(variables, terms)

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("variable lists differ")
            return other
        return MultiPoly.constant(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return MultiPoly(self.variables, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = rat(other)
            return MultiPoly(self.variables, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        t: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = MultiPoly.constant(self.variables, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if not self.terms:
            return rat(other) == 0
        return set(self.terms) == {(0,) * len(self.variables)} and self.terms[
            (0,) * len(self.variables)] == rat(other)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, indices: Iterable[int] | None = None) -> int:
        """Total degree, optionally restricted to a group of variable indices."""
        if not self.terms:
            return -1
        idx = range(len(self.variables)) if indices is None else list(indices)
        return max(sum(e[i] for i in idx) for e in self.terms)

    def __call__(self, point) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point) -> Fraction:
        point = [rat(x) for x in point]
        if len(point) != len(self.variables):
            raise ValueError("point has wrong dimension")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def compose(self, substitutions: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute polynomial ``substitutions[i]`` for variable ``i``."""
        if len(substitutions) != len(self.variables):
            raise ValueError("need one substitution per variable")
        target = substitutions[0].variables if substitutions else ()
        cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = substitutions[i] ** k if k > 1 else substitutions[i]
            return cache[(i, k)]

        out = MultiPoly(target)
        for e, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def substitute(self, values: Mapping[int, object]) -> "MultiPoly":
        """Fix some variables to rational values (variable list unchanged)."""
        t: dict[Exponent, Fraction] = {}
        vals = {i: rat(v) for i, v in values.items()}
        for e, c in self.terms.items():
            e2 = list(e)
            for i, v in vals.items():
                if e2[i]:
                    c = c * v ** e2[i]
                    e2[i] = 0
            t[tuple(e2)] = t.get(tuple(e2), 0) + c
        return MultiPoly(self.variables, t)

    def restrict_to_hyperplane(self, coeffs: Sequence, const) -> "MultiPoly":
        """Eliminate one variable using ``sum(coeffs[i]*x_i) + const = 0``."""
        coeffs = [rat(c) for c in coeffs]
        piv = max((i for i, c in enumerate(coeffs) if c), default=None)
        if piv is None:
            raise ValueError("zero linear form")
        subs = []
        for i in range(len(self.variables)):
            if i == piv:
                rest = [-c / coeffs[piv] if j != piv else 0 for j, c in enumerate(coeffs)]
                subs.append(MultiPoly.linear(self.variables, rest, -rat(const) / coeffs[piv]))
            else:
                subs.append(MultiPoly.var(self.variables, i))
        return self.compose(subs)

    def divisible_by_linear(self, coeffs: Sequence, const) -> bool:
        """Exact test that ``sum(coeffs[i]*x_i) + const`` divides this polynomial."""
        return self.restrict_to_hyperplane(coeffs, const).is_zero()

    # -- serialization ---------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        # graded lex: degree ascending, then earlier variables first
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
            else:
                body = _fmt_coeff(a)
            if idx == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "terms": [[list(e), str(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data) -> "MultiPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["variables"], {tuple(e): Fraction(c) for e, c in data["terms"]})


def lb_variables(k: int) -> tuple[str, ...]:
    """Canonical fundamental-weight variable names ``l1..l{k-1}, b1..b{k-1}``."""
    return tuple(f"l{i}" for i in range(1, k)) + tuple(f"b{i}" for i in range(1, k))


def monomials(nvars: int, group_bounds: Sequence[tuple[Sequence[int], int]] = (),
              total_degree: int | None = None) -> list[Exponent]:
    """Exponent vectors allowed by per-group degree caps and a total cap."""
    if total_degree is None and not group_bounds:
        raise ValueError("need a total degree or group bounds")
    caps = [math.inf] * nvars
    for idx, bound in group_bounds:
        for i in idx:
            caps[i] = min(caps[i], bound)
    top = total_degree if total_degree is not None else sum(
        b for _, b in group_bounds)
    out = []

    def rec(i, left, prefix):
        if i == nvars:
            e = tuple(prefix)
            if all(sum(e[j] for j in idx) <= b for idx, b in group_bounds):
                out.append(e)
            return
        for d in range(0, int(min(left, caps[i])) + 1):
            prefix.append(d)
            rec(i + 1, left - d, prefix)
            prefix.pop()

    rec(0, top, [])
    return sorted(out, key=lambda e: (sum(e), tuple(-x for x in e)))


class FitError(ValueError):
    """Raised when samples do not determine a unique polynomial."""


def fit_polynomial(samples: Sequence[tuple[Sequence, object]], variables: Sequence[str],
                   group_bounds: Sequence[tuple[Sequence[int], int]] = (),
                   total_degree: int | None = None) -> MultiPoly:
    """Interpolate the unique polynomial through ``(point, value)`` samples.

    The monomial support is everything allowed by ``group_bounds`` (pairs of
    variable indices and a degree cap for that group) and ``total_degree``.
    Raises :class:`FitError` when the fit is ambiguous or the samples are
    inconsistent with any polynomial in that support.
    """
    n = len(variables)
    monos = monomials(n, group_bounds, total_degree)
    if len(samples) < len(monos):
        raise FitError(f"{len(samples)} samples for {len(monos)} unknown coefficients")
    rows, rhs = [], []
    for point, value in samples:
        point = [rat(x) for x in point]
        rows.append([math.prod(x ** k for x, k in zip(point, e)) for e in monos])
        rhs.append(rat(value))
    sol = solve_linear(rows, rhs)
    if not sol.feasible:
        raise FitError("samples are inconsistent with the degree bounds")
    if sol.kernel:
        raise FitError(f"fit is underdetermined ({len(sol.kernel)}-dimensional family)")
    return MultiPoly(variables, dict(zip(monos, sol.particular)))


def interpolate_simplex_grid(f: Callable[[tuple[int, ...]], object], base: Sequence[int],
                             step: int, degree: int, variables: Sequence[str]) -> MultiPoly:
    """Newton interpolation on ``base + step*a`` for ``a >= 0``, ``|a| <= degree``.

    The principal lattice of a simplex is unisolvent for total degree
    ``degree``; forward differences at ``base`` give the Newton coefficients
    directly, so no linear system is solved.
    """
    n = len(base)
    grid = [e for e in itertools.product(range(degree + 1), repeat=n) if sum(e) <= degree]
    values = {a: rat(f(tuple(b + step * x for b, x in zip(base, a)))) for a in grid}
    # forward differences, one axis at a time
    diff = dict(values)
    for axis in range(n):
        new = {}
        for a in grid:
            # Delta along axis applied a[axis] times
            total = Fraction(0)
            m = a[axis]
            for j in range(m + 1):
                b = list(a)
                b[axis] = j
                total += (-1) ** (m - j) * math.comb(m, j) * diff[tuple(b)]
            new[a] = total
        diff = new
    # f(base + step*a) = sum_m diff[m] * prod C(a_i, m_i); a_i = (x_i - base_i)/step
    x = [MultiPoly.var(variables, i) for i in range(n)]
    scaled = [(x[i] - base[i]) * Fraction(1, step) for i in range(n)]
    binoms: dict[tuple[int, int], MultiPoly] = {}

    def binom(i, m):
        if (i, m) not in binoms:
            p = MultiPoly.constant(variables, 1)
            for j in range(m):
                p = p * (scaled[i] - j) * Fraction(1, j + 1)
            binoms[(i, m)] = p
        return binoms[(i, m)]

    out = MultiPoly(variables)
    for m, c in diff.items():
        if c:
            term = MultiPoly.constant(variables, c)
            for i, mi in enumerate(m):
                if mi:
                    term = term * binom(i, mi)
            out = out + term
    return out
