"""Gelfand-Tsetlin patterns, their polytopes, and the slack-variable system.

Patterns are stored top row first.  The slack-variable system rewrites the
interlacing inequalities of a pattern with fixed weight as
``{x >= 0 : [A | I] x = B(lambda, beta)}``: the diagonal entries are
eliminated with the row sums and the remaining entries are replaced by the
differences ``s[m][j] = row_m[j] - row_{m+1}[j+1]``.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import _accel
from .exact import rat
from .polyhedra import Polytope, lattice_points
from .typea import fundamental_weight, normalize_pair


@dataclass(frozen=True)
class GTPattern:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.rows)
        for m, row in enumerate(self.rows):
            if len(row) != k - m:
                raise ValueError("pattern rows must shrink by one")
        for upper, lower in zip(self.rows, self.rows[1:]):
            for j, x in enumerate(lower):
                if not upper[j] >= x >= upper[j + 1]:
                    raise ValueError(f"interlacing fails at {upper} / {lower}")

    @property
    def k(self) -> int:
        return len(self.rows)

    def weight(self) -> tuple[int, ...]:
        return pattern_weight(self)

    def to_text(self) -> str:
        width = max(len(str(x)) for row in self.rows for x in row) + 1
        k = self.k
        lines = []
        for m, row in enumerate(self.rows):
            pad = " " * (m * width // 2 + m % 2 * (width % 2))
            lines.append((pad + "".join(str(x).rjust(width) for x in row)).rstrip())
        return "\n".join(lines)

    __str__ = to_text


def _check_top(lam: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"top row {lam} is not weakly decreasing")
    return lam


def _rows_below(row: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    ranges = [range(row[j + 1], row[j] + 1) for j in range(len(row) - 1)]
    for r in itertools.product(*ranges):
        yield tuple(r)


def iter_gt_patterns(lam: Sequence[int]) -> Iterator[GTPattern]:
    lam = _check_top(lam)

    def rec(rows):
        if len(rows[-1]) == 1:
            yield GTPattern(tuple(rows))
            return
        for r in _rows_below(rows[-1]):
            yield from rec(rows + [r])

    if len(lam) == 0:
        return
    yield from rec([lam])


def enumerate_gt_patterns(lam: Sequence[int]) -> list[GTPattern]:
    """All Gelfand-Tsetlin patterns with top row ``lam`` (gl integers)."""
    return list(iter_gt_patterns(lam))


def pattern_weight(p: GTPattern) -> tuple[int, ...]:
    """beta_m = (sum of row of length m) - (sum of row of length m-1)."""
    sums = [sum(r) for r in reversed(p.rows)]  # lengths 1..k
    return tuple(sums[m] - (sums[m - 1] if m else 0) for m in range(len(sums)))


def count_gt(lam: Sequence, beta: Sequence, use_numba: bool | None = None) -> int:
    """Weight multiplicity m_lambda(beta) as a count of patterns.

    Accepts sl (sum-zero rational) or gl (integer) vectors; returns 0 when
    beta is not in lambda plus the root lattice.
    """
    lam_gl, beta_gl, _ = normalize_pair(lam, beta)
    if beta_gl is None:
        return 0
    return _accel.count_gt(lam_gl, beta_gl, use_numba=use_numba)


def count_gt_bruteforce(lam: Sequence[int], beta: Sequence[int]) -> int:
    beta = tuple(int(x) for x in beta)
    return sum(1 for p in iter_gt_patterns(lam) if pattern_weight(p) == beta)


# ---------------------------------------------------------------------------
# polytopes

def _gt_variables(k: int) -> list[tuple[int, int]]:
    """(row length m, index j) for every non-top entry, rows k-1 down to 1."""
    return [(m, j) for m in range(k - 1, 0, -1) for j in range(m)]


def _gt_halfspaces(lam: Sequence[int]):
    lam = _check_top(lam)
    k = len(lam)
    var = {v: i for i, v in enumerate(_gt_variables(k))}
    n = len(var)

    def form(m, j):
        """(coeffs, const) of entry j of the row of length m."""
        if m == k:
            return [0] * n, lam[j]
        c = [0] * n
        c[var[(m, j)]] = 1
        return c, 0

    ineqs = []
    for m in range(k - 1, 0, -1):
        for j in range(m):
            x, _ = form(m, j)
            up, cu = form(m + 1, j)
            lo, cl = form(m + 1, j + 1)
            # lower: row_{m+1}[j+1] - x <= 0 ; upper: x - row_{m+1}[j] <= 0
            ineqs.append(([a - b for a, b in zip(lo, x)], -cl))
            ineqs.append(([a - b for a, b in zip(x, up)], cu))
    return ineqs, var, n


def gt_polytope(lam: Sequence[int]) -> Polytope:
    ineqs, _, _ = _gt_halfspaces(lam)
    return Polytope.from_halfspaces(ineqs)


def gt_polytope_slice(lam: Sequence[int], beta: Sequence[int]) -> Polytope:
    """GT polytope with the row sums fixed by the weight beta."""
    ineqs, var, n = _gt_halfspaces(lam)
    k = len(lam)
    beta = [rat(b) for b in beta]
    eqs = []
    for m in range(1, k):
        row = [0] * n
        for j in range(m):
            row[var[(m, j)]] = 1
        eqs.append((row, sum(beta[:m])))
    if sum(beta) != sum(rat(x) for x in lam):
        return Polytope.empty(n)
    return Polytope.from_halfspaces(ineqs, eqs, n)


def count_gt_polytope(lam: Sequence[int], beta: Sequence[int]) -> int:
    return len(lattice_points(gt_polytope_slice(lam, beta)))


# ---------------------------------------------------------------------------
# slack-variable system

@dataclass(frozen=True)
class SPFSystem:
    """``E = [A | I_N]`` and ``b = B·(lambda, beta)``.

    ``B`` has 2k columns: coefficients of lambda_1..lambda_k then
    beta_1..beta_k.  ``row_labels`` names the interlacing inequality each
    row came from, ``column_labels`` the difference variable of each column
    of ``A``.
    """

    k: int
    A: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]
    row_labels: tuple[str, ...]
    column_labels: tuple[str, ...]

    @property
    def N(self) -> int:
        return len(self.A)

    @property
    def K(self) -> int:
        return len(self.column_labels)

    @property
    def E(self) -> tuple[tuple[int, ...], ...]:
        N = self.N
        return tuple(tuple(row) + tuple(int(i == j) for j in range(N)) for i, row in enumerate(self.A))

    def rhs(self, lam: Sequence, beta: Sequence) -> tuple:
        v = [rat(x) for x in lam] + [rat(x) for x in beta]
        out = []
        for row in self.B:
            out.append(sum(c * x for c, x in zip(row, v)))
        return tuple(int(x) if x.denominator == 1 else x for x in out)

    def to_json(self) -> dict:
        return {"k": self.k, "A": [list(r) for r in self.A], "B": [list(r) for r in self.B],
                "E": [list(r) for r in self.E], "rows": list(self.row_labels),
                "columns": list(self.column_labels) + [f"slack{i + 1}" for i in range(self.N)]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def _entry(m, j):
    return f"x[{m}][{j + 1}]"


def build_spf_system(k: int) -> SPFSystem:
    if k < 2:
        raise ValueError("need k >= 2")
    scols = [(m, j) for m in range(k - 1, 1, -1) for j in range(m - 1)]
    K = len(scols)
    sidx = {c: i for i, c in enumerate(scols)}
    nvb = 2 * k

    def lam_form(i):
        v = [0] * nvb
        v[i] = 1
        return [0] * K, v

    def add(f, g, sign=1):
        return ([a + sign * b for a, b in zip(f[0], g[0])], [a + sign * b for a, b in zip(f[1], g[1])])

    # affine forms (s-part, (lambda,beta)-part) of every entry
    entry = {}
    for j in range(k):
        entry[(k, j)] = lam_form(j)
    for m in range(k - 1, 0, -1):
        for j in range(m - 1):
            s = [0] * K
            s[sidx[(m, j)]] = 1
            entry[(m, j)] = add((s, [0] * nvb), entry[(m + 1, j + 1)])
        # diagonal from the row sum beta_1 + ... + beta_m
        total = ([0] * K, [0] * k + [1 if i < m else 0 for i in range(k)])
        for j in range(m - 1):
            total = add(total, entry[(m, j)], -1)
        entry[(m, m - 1)] = total
    A, B, labels = [], [], []
    for m in range(k - 1, 0, -1):
        for j in range(m):
            x = entry[(m, j)]
            for kind, diff in (("lower", add(x, entry[(m + 1, j + 1)], -1)),
                               ("upper", add(entry[(m + 1, j)], x, -1))):
                s_part, vb = diff
                if not any(vb) and sum(1 for c in s_part if c) == 1 and max(s_part) == 1:
                    continue  # reduces to s >= 0
                # s_part·s + vb·(lam,beta) >= 0  ->  (-s_part)·s <= vb·(lam,beta)
                A.append(tuple(-c for c in s_part))
                B.append(tuple(vb))
                bound = f"{_entry(m + 1, j + 1)} <= {_entry(m, j)}" if kind == "lower" else f"{_entry(m, j)} <= {_entry(m + 1, j)}"
                labels.append(bound)
    cols = tuple(f"s[{m}][{j + 1}]" for m, j in scols)
    return SPFSystem(k, tuple(A), tuple(B), tuple(labels), cols)


def multiplicity_spf(sys: SPFSystem, lam: Sequence, beta: Sequence, use_numba: bool | None = None) -> int:
    """Lattice points of ``{x >= 0 : E x = B(lambda, beta)}`` on the gl representatives."""
    lam_gl, beta_gl, _ = normalize_pair(lam, beta)
    if len(lam_gl) != sys.k:
        raise ValueError("system built for a different k")
    if beta_gl is None:
        return 0
    b = sys.rhs(lam_gl, beta_gl)
    if any(isinstance(x, Fraction) for x in b):
        raise ValueError("non-integral right-hand side")
    K = sys.K
    bound = lam_gl[0] - lam_gl[-1]
    return _accel.count_points_box(
        [list(r) for r in sys.A] if K else [[] for _ in sys.A], list(b), [0] * K, [bound] * K,
        use_numba=use_numba)


def restricted_rhs_matrix(sys: SPFSystem) -> list[list[Fraction]]:
    """B as a map from fundamental-weight coordinates (l, b) to R^N."""
    k = sys.k

    cols = []
    for i in range(1, k):
        w = fundamental_weight(k, i)
        cols.append(list(w) + [Fraction(0)] * k)
    for i in range(1, k):
        w = fundamental_weight(k, i)
        cols.append([Fraction(0)] * k + list(w))
    return [[sum(c * x for c, x in zip(row, col)) for col in cols] for row in sys.B]
