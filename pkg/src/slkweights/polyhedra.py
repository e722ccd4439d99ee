"""Exact polyhedral cones and polytopes.

Conversion between generators and inequalities uses the double description
method on primitive integer vectors with a combinatorial adjacency test, so
no rational number ever grows beyond what the input forces.  Polytopes are
handled through their homogenizing cones.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exact import determinant, dot, nullspace, primitive, rank, rat, rref

IntVec = tuple[int, ...]


class PolyhedronError(ValueError):
    pass


class UnboundedError(PolyhedronError):
    pass


def _prim_rows(rows: Iterable[Sequence]) -> list[IntVec]:
    out = []
    seen = set()
    for r in rows:
        p = primitive(r)
        if any(p) and p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _canonical_basis(rows: Sequence[Sequence], d: int) -> tuple[IntVec, ...]:
    """Reduced row echelon basis of a row space, scaled to primitive integers."""
    rows = [list(map(rat, r)) for r in rows if any(r)]
    if not rows:
        return ()
    R, piv = rref(rows)
    return tuple(primitive(R[i]) for i in range(len(piv)))


def _dd_pointed(A: list[IntVec], d: int) -> list[IntVec]:
    """Extreme rays of the pointed cone ``{z : A z >= 0}`` (rank A == d)."""
    if d == 0:
        return []
    # pick d independent rows for the initial simplicial cone
    chosen: list[int] = []
    for i, row in enumerate(A):
        if rank([A[j] for j in chosen] + [row]) > len(chosen):
            chosen.append(i)
            if len(chosen) == d:
                break
    if len(chosen) < d:
        raise PolyhedronError("inequality system is not pointed")
    B = [list(map(Fraction, A[i])) for i in chosen]
    # columns of B^{-1}
    aug = [row + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(B)]
    R, _ = rref(aug)
    inv = [r[d:] for r in R]
    rays: list[IntVec] = []
    zeros: list[int] = []
    full = 0
    for i in chosen:
        full |= 1 << i
    for c in range(d):
        col = [inv[r][c] for r in range(d)]
        rays.append(primitive(col))
        zeros.append(full & ~(1 << chosen[c]))
    done = set(chosen)
    for idx, a in enumerate(A):
        if idx in done:
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        bit = 1 << idx
        if not neg:
            for i in zer:
                zeros[i] |= bit
            done.add(idx)
            continue
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_zero = [zeros[i] for i in pos] + [zeros[i] | bit for i in zer]
        need = d - 2
        nr = len(rays)
        for p in pos:
            zp = zeros[p]
            for n in neg:
                common = zp & zeros[n]
                if common.bit_count() < need:
                    continue
                adjacent = True
                for t in range(nr):
                    if t != p and t != n and (zeros[t] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vn = vals[p], vals[n]
                r = tuple(vp * x - vn * y for x, y in zip(rays[n], rays[p]))
                new_rays.append(primitive(r))
                new_zero.append(common | bit)
        rays, zeros = new_rays, new_zero
        done.add(idx)
    return rays


def cone_dd(ineqs: Sequence[Sequence], eqs: Sequence[Sequence], d: int) -> tuple[list[IntVec], list[IntVec]]:
    """Generators of ``{x : ineqs·x >= 0, eqs·x = 0}``.

    Returns ``(rays, lineality)``.  Rays are primitive, lie in the orthogonal
    complement of the lineality space and are sorted.
    """
    ineqs = _prim_rows(ineqs)
    eqs = _prim_rows(eqs)
    lin = [primitive(v) for v in nullspace(ineqs + eqs, d)] if (ineqs or eqs) else [
        tuple(int(i == j) for j in range(d)) for i in range(d)]
    lin = list(_canonical_basis(lin, d))
    sub = [primitive(v) for v in nullspace(eqs + lin, d)] if (eqs or lin) else [
        tuple(int(i == j) for j in range(d)) for i in range(d)]
    m = len(sub)
    if m == 0:
        return [], lin
    # coordinates in the subspace: x = P z with P columns = sub
    A = _prim_rows([[dot(a, s) for s in sub] for a in ineqs])
    zrays = _dd_pointed(A, m)
    rays = sorted({primitive([sum(z[j] * sub[j][i] for j in range(m)) for i in range(d)]) for z in zrays})
    return rays, lin


def _project_away(v: Sequence, basis: Sequence[Sequence]) -> list[Fraction]:
    """Orthogonal projection of ``v`` onto the complement of span(basis)."""
    v = [rat(x) for x in v]
    if not basis:
        return v
    # solve Gram system
    G = [[Fraction(dot(a, b)) for b in basis] for a in basis]
    rhs = [dot(a, v) for a in basis]
    aug = [row + [r] for row, r in zip(G, rhs)]
    R, _ = rref(aug)
    coef = [row[-1] for row in R]
    return [x - sum(c * b[i] for c, b in zip(coef, basis)) for i, x in enumerate(v)]


@dataclass(frozen=True)
class Cone:
    """Polyhedral cone with both descriptions.

    ``facets`` are inward normals (``n·x >= 0``) projected into the linear
    span of the cone, ``equations`` span the orthogonal complement of that
    span.  Everything is primitive and sorted, so two Cones describing the
    same set compare equal.
    """

    dim: int
    rays: tuple[IntVec, ...]
    lineality: tuple[IntVec, ...] = ()
    facets: tuple[IntVec, ...] = ()
    equations: tuple[IntVec, ...] = ()

    # -- construction --------------------------------------------------------
    @classmethod
    def from_halfspaces(cls, ineqs: Sequence[Sequence], eqs: Sequence[Sequence] = (), dim: int | None = None) -> "Cone":
        if dim is None:
            rows = list(ineqs) + list(eqs)
            if not rows:
                raise PolyhedronError("ambient dimension unknown")
            dim = len(rows[0])
        rays, lin = cone_dd(ineqs, eqs, dim)
        return cls._finish(dim, rays, lin)

    @classmethod
    def from_rays(cls, rays: Sequence[Sequence], lineality: Sequence[Sequence] = (), dim: int | None = None) -> "Cone":
        rows = list(rays) + list(lineality)
        if dim is None:
            if not rows:
                raise PolyhedronError("ambient dimension unknown")
            dim = len(rows[0])
        lin = list(_canonical_basis(lineality, dim))
        gens = _prim_rows(_project_away(r, lin) for r in rays) if lin else _prim_rows(rays)
        # redundant generators are filtered by recomputing from the H-description
        normals, eqs = cone_dd(gens, lin, dim)
        full_rays, lin2 = cone_dd(normals, eqs, dim)
        return cls(dim, tuple(sorted(full_rays)), tuple(lin2), tuple(sorted(normals)),
                   _canonical_basis(eqs, dim))

    @classmethod
    def _finish(cls, dim, rays, lin) -> "Cone":
        normals, eqs = cone_dd(rays, lin, dim)
        return cls(dim, tuple(sorted(rays)), tuple(lin), tuple(sorted(normals)),
                   _canonical_basis(eqs, dim))

    @classmethod
    def zero(cls, dim: int) -> "Cone":
        return cls(dim, (), (), (), tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @classmethod
    def orthant(cls, dim: int) -> "Cone":
        e = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
        return cls(dim, tuple(sorted(e)), (), tuple(sorted(e)), ())

    # -- queries ---------------------------------------------------------------
    @cached_property
    def dimension(self) -> int:
        return rank(list(self.rays) + list(self.lineality)) if (self.rays or self.lineality) else 0

    @property
    def is_full_dimensional(self) -> bool:
        return self.dimension == self.dim

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_zero(self) -> bool:
        return not self.rays and not self.lineality

    def contains(self, x: Sequence) -> bool:
        return all(dot(e, x) == 0 for e in self.equations) and all(dot(n, x) >= 0 for n in self.facets)

    def contains_in_interior(self, x: Sequence) -> bool:
        """Relative interior membership."""
        return all(dot(e, x) == 0 for e in self.equations) and all(dot(n, x) > 0 for n in self.facets)

    def interior_point(self) -> IntVec:
        """Sum of rays: a point of the relative interior of a pointed cone."""
        if not self.rays:
            return (0,) * self.dim
        return tuple(sum(c) for c in zip(*self.rays))

    def facet_rays(self, normal: Sequence) -> tuple[IntVec, ...]:
        return tuple(r for r in self.rays if dot(normal, r) == 0)

    def facet_cone(self, normal: Sequence) -> "Cone":
        return Cone.from_rays(self.facet_rays(normal), self.lineality, dim=self.dim)

    def intersect(self, other: "Cone") -> "Cone":
        return intersect(self, other)

    def key(self) -> tuple:
        return (self.rays, self.lineality)

    def __lt__(self, other: "Cone"):
        return self.key() < other.key()

    def to_json(self) -> dict:
        return {"dim": self.dim, "rays": [list(r) for r in self.rays],
                "lineality": [list(r) for r in self.lineality],
                "facets": [list(r) for r in self.facets],
                "equations": [list(r) for r in self.equations]}

    @classmethod
    def from_json(cls, data) -> "Cone":
        return cls(int(data["dim"]), tuple(tuple(r) for r in data["rays"]),
                   tuple(tuple(r) for r in data["lineality"]),
                   tuple(tuple(r) for r in data["facets"]),
                   tuple(tuple(r) for r in data["equations"]))

    def check(self) -> None:
        """Assert the two descriptions agree (rays feasible, facets supported)."""
        for r in self.rays:
            if not self.contains(r):
                raise PolyhedronError(f"ray {r} violates the inequality description")
        dimc = self.dimension
        for n in self.facets:
            tight = self.facet_rays(n)
            if rank(list(tight) + list(self.lineality) or [[0] * self.dim]) != dimc - 1:
                raise PolyhedronError(f"normal {n} does not define a facet")


def cone_dual_description(generators: Sequence[Sequence] | None = None,
                          halfspaces: Sequence[Sequence] | None = None,
                          equations: Sequence[Sequence] = (), lineality: Sequence[Sequence] = (),
                          dim: int | None = None) -> Cone:
    """Build a Cone from either description; a zero-dimensional result is an error."""
    if (generators is None) == (halfspaces is None):
        raise PolyhedronError("give exactly one of generators or halfspaces")
    if generators is not None:
        if not any(any(g) for g in generators) and not lineality:
            raise PolyhedronError("no nonzero generators")
        c = Cone.from_rays(generators, lineality, dim)
    else:
        c = Cone.from_halfspaces(halfspaces, equations, dim)
    if c.is_zero:
        raise PolyhedronError("the described cone is the origin only")
    c.check()
    return c


def intersect(c1: Cone, c2: Cone) -> Cone:
    if c1.dim != c2.dim:
        raise PolyhedronError("ambient dimensions differ")
    return Cone.from_halfspaces(list(c1.facets) + list(c2.facets),
                                list(c1.equations) + list(c2.equations), c1.dim)


def intersect_all(cones: Sequence[Cone]) -> Cone:
    if not cones:
        raise PolyhedronError("nothing to intersect")
    ineqs, eqs = [], []
    for c in cones:
        ineqs.extend(c.facets)
        eqs.extend(c.equations)
    return Cone.from_halfspaces(ineqs, eqs, cones[0].dim)


# ---------------------------------------------------------------------------
# volumes

def _lattice_det(vectors: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by ``vectors`` inside its saturation.

    Equals the gcd of all maximal minors; for a square matrix this is |det|.
    """
    m = len(vectors)
    if m == 0:
        return 1
    n = len(vectors[0])
    if m == n:
        return abs(int(determinant(vectors)))
    g = 0
    cols = list(zip(*vectors))
    for idx in itertools.combinations(range(n), m):
        minor = [[cols[i][j] for i in idx] for j in range(m)]
        g = math.gcd(g, int(determinant(minor)))
        if g == 1:
            break
    return g


def triangulate(cone: Cone) -> list[tuple[int, ...]]:
    """Triangulation of a pointed cone into simplicial cones on its own rays.

    Pulling triangulation: cone the first ray over a triangulation of every
    facet that avoids it.  Returns tuples of indices into ``cone.rays``.
    """
    if not cone.is_pointed:
        raise PolyhedronError("triangulation needs a pointed cone")
    rays = cone.rays
    if not rays:
        return []
    facet_masks = []
    for n in cone.facets:
        mask = 0
        for i, r in enumerate(rays):
            if dot(n, r) == 0:
                mask |= 1 << i
        facet_masks.append(mask)

    def members(mask):
        return [i for i in range(len(rays)) if mask >> i & 1]

    memo: dict[int, list[tuple[int, ...]]] = {}

    def rank_of(mask):
        return rank([rays[i] for i in members(mask)])

    def faces_below(mask: int, dimg: int) -> list[int]:
        cands = set()
        for fm in facet_masks:
            sub = mask & fm
            if sub != mask and sub:
                cands.add(sub)
        out = []
        for s in cands:
            if rank_of(s) == dimg - 1:
                out.append(s)
        # keep maximal ones only (a facet is not contained in another candidate)
        return [s for s in out if not any(s != t and (s & t) == s for t in out)]

    def rec(mask: int, dimg: int) -> list[tuple[int, ...]]:
        if mask in memo:
            return memo[mask]
        idx = members(mask)
        if len(idx) == dimg:
            res = [tuple(idx)]
        else:
            v0 = idx[0]
            res = []
            for f in faces_below(mask, dimg):
                if f >> v0 & 1:
                    continue
                for simp in rec(f, dimg - 1):
                    res.append((v0,) + simp)
        memo[mask] = res
        return res

    return rec((1 << len(rays)) - 1, cone.dimension)


def truncated_volume(cone: Cone, normal: Sequence, offset) -> Fraction:
    """Volume of ``cone ∩ {normal·x <= offset}`` in the lattice of the cone's span.

    Normalized so that the standard unit simplex of the span's lattice has
    volume ``1/d!``.
    """
    offset = rat(offset)
    if cone.is_zero:
        return Fraction(0)
    if not cone.is_pointed:
        raise UnboundedError("cone has a lineality space")
    heights = {}
    for r in cone.rays:
        h = dot(normal, r)
        if h <= 0:
            raise UnboundedError(f"ray {r} is not bounded by the truncation")
        heights[r] = Fraction(h)
    d = cone.dimension
    total = Fraction(0)
    for simp in triangulate(cone):
        vecs = [cone.rays[i] for i in simp]
        scale = Fraction(1)
        for v in vecs:
            scale *= offset / heights[v]
        total += _lattice_det(vecs) * scale
    return total / math.factorial(d)


# ---------------------------------------------------------------------------
# polytopes

Halfspace = tuple[IntVec, Fraction]


@dataclass(frozen=True)
class Polytope:
    """Bounded polyhedron ``{x : a·x <= c for (a, c) in ineqs, a·x = c for eqs}``."""

    dim: int
    vertices: tuple[tuple[Fraction, ...], ...]
    ineqs: tuple[Halfspace, ...] = ()
    eqs: tuple[Halfspace, ...] = ()

    @classmethod
    def empty(cls, dim: int) -> "Polytope":
        return cls(dim, (), (), ())

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @classmethod
    def _from_cone(cls, dim: int, cone: Cone) -> "Polytope":
        if cone.lineality:
            raise UnboundedError("polytope is unbounded")
        verts = []
        for r in cone.rays:
            if r[0] == 0:
                raise UnboundedError("polytope is unbounded")
            verts.append(tuple(Fraction(x, r[0]) for x in r[1:]))
        if not verts:
            return cls.empty(dim)
        ineqs = []
        if len(verts) > 1:
            for n in cone.facets:
                # n0 t + n'·x >= 0  ->  -n'·x <= n0
                ineqs.append((tuple(-x for x in n[1:]), Fraction(n[0])))
        eqs = []
        for e in cone.equations:
            a = tuple(-x for x in e[1:])
            if any(a):
                eqs.append((a, Fraction(e[0])))
        eqs = _canonical_affine(eqs, dim)
        return cls(dim, tuple(sorted(verts)), tuple(sorted(ineqs)), eqs)

    @classmethod
    def from_halfspaces(cls, ineqs: Sequence[tuple[Sequence, object]], eqs: Sequence[tuple[Sequence, object]] = (),
                        dim: int | None = None) -> "Polytope":
        if dim is None:
            rows = list(ineqs) + list(eqs)
            if not rows:
                raise PolyhedronError("ambient dimension unknown")
            dim = len(rows[0][0])
        hin = [[rat(c)] + [-rat(x) for x in a] for a, c in ineqs]
        hin.append([1] + [0] * dim)
        heq = [[rat(c)] + [-rat(x) for x in a] for a, c in eqs]
        cone = Cone.from_halfspaces(hin, heq, dim + 1)
        return cls._from_cone(dim, cone)

    @classmethod
    def from_vertices(cls, points: Sequence[Sequence]) -> "Polytope":
        pts = [tuple(rat(x) for x in p) for p in points]
        if not pts:
            raise PolyhedronError("no points")
        dim = len(pts[0])
        gens = [(1,) + p for p in pts]
        cone = Cone.from_rays(gens, dim=dim + 1)
        return cls._from_cone(dim, cone)

    @cached_property
    def cone(self) -> Cone:
        """Homogenizing cone ``pos({(1, v)})``."""
        if self.is_empty:
            return Cone.zero(self.dim + 1)
        return Cone.from_rays([(1,) + v for v in self.vertices], dim=self.dim + 1)

    @cached_property
    def dimension(self) -> int:
        if self.is_empty:
            return -1
        return self.cone.dimension - 1

    def contains(self, x: Sequence) -> bool:
        x = [rat(v) for v in x]
        return (all(dot(a, x) <= c for a, c in self.ineqs)
                and all(dot(a, x) == c for a, c in self.eqs))

    def contains_in_interior(self, x: Sequence) -> bool:
        x = [rat(v) for v in x]
        return (all(dot(a, x) < c for a, c in self.ineqs)
                and all(dot(a, x) == c for a, c in self.eqs))

    def centroid(self) -> tuple[Fraction, ...]:
        """Vertex average (a relative-interior point)."""
        n = len(self.vertices)
        return tuple(sum(c) / n for c in zip(*self.vertices))

    def volume(self) -> Fraction:
        """Volume relative to the lattice of the homogenizing cone's span.

        For full-dimensional polytopes this is the ordinary Euclidean volume.
        """
        if self.is_empty:
            return Fraction(0)
        d = self.dimension
        e0 = (1,) + (0,) * self.dim
        return (d + 1) * truncated_volume(self.cone, e0, 1)

    def intersect_halfspaces(self, ineqs=(), eqs=()) -> "Polytope":
        return Polytope.from_halfspaces(list(self.ineqs) + list(ineqs), list(self.eqs) + list(eqs), self.dim)

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [[str(x) for x in v] for v in self.vertices],
                "ineqs": [[list(a), str(c)] for a, c in self.ineqs],
                "eqs": [[list(a), str(c)] for a, c in self.eqs]}


def _canonical_affine(eqs, dim) -> tuple[Halfspace, ...]:
    if not eqs:
        return ()
    rows = [[rat(x) for x in a] + [rat(c)] for a, c in eqs]
    R, piv = rref(rows)
    out = []
    for i in range(len(piv)):
        row = R[i]
        den = math.lcm(*[x.denominator for x in row])
        ints = [x * den for x in row]
        g = math.gcd(*[int(x) for x in ints[:-1]])
        out.append((tuple(int(x) // g for x in ints[:-1]), ints[-1] / g))
    return tuple(out)


def polytope_from_halfspaces(ineqs, eqs=(), dim=None) -> Polytope:
    return Polytope.from_halfspaces(ineqs, eqs, dim)


def affine_slice(cone: Cone, basepoint: Sequence, basis: Sequence[Sequence]):
    """Intersect ``cone`` with ``basepoint + span(basis)`` in the basis coordinates.

    Returns a Cone when the slice passes through the origin, a Polytope
    otherwise (possibly empty).
    """
    p = [rat(x) for x in basepoint]
    U = [[rat(x) for x in u] for u in basis]
    m = len(U)
    ineq_rows = [[dot(n, u) for u in U] for n in cone.facets]
    ineq_rhs = [dot(n, p) for n in cone.facets]
    eq_rows = [[dot(e, u) for u in U] for e in cone.equations]
    eq_rhs = [dot(e, p) for e in cone.equations]
    if not any(p):
        return Cone.from_halfspaces(ineq_rows, eq_rows, m)
    # n·(p + U y) >= 0  ->  -(nU)·y <= n·p
    ineqs = [([-x for x in r], c) for r, c in zip(ineq_rows, ineq_rhs)]
    eqs = [(r, -c) for r, c in zip(eq_rows, eq_rhs)]
    inconsistent = [c for r, c in eqs if not any(r) and c != 0]
    if inconsistent:
        return Polytope.empty(m)
    eqs = [(r, c) for r, c in eqs if any(r)]
    bad = [c for r, c in ineqs if not any(r) and c < 0]
    if bad:
        return Polytope.empty(m)
    ineqs = [(r, c) for r, c in ineqs if any(r)]
    if not ineqs and not eqs:
        raise UnboundedError("slice is a whole affine subspace")
    return Polytope.from_halfspaces(ineqs, eqs, m)


# ---------------------------------------------------------------------------
# lattice points

def _integer_system(poly: Polytope, origin=None, basis=None):
    """Rows ``A z <= b`` over integers describing lattice points of ``poly``."""
    d = poly.dim
    if basis is None:
        origin = [Fraction(0)] * d
        basis = [[int(i == j) for j in range(d)] for i in range(d)]
    origin = [rat(x) for x in origin]
    A, b = [], []

    def add(row, rhs):
        row = [rat(x) for x in row]
        den = math.lcm(*[x.denominator for x in row])
        ints = [int(x * den) for x in row]
        rhs = rat(rhs) * den
        g = math.gcd(*ints)
        if g == 0:
            return rhs >= 0
        A.append([x // g for x in ints])
        b.append(math.floor(rhs / g))
        return True

    ok = True
    for a, c in poly.ineqs:
        ok &= add([dot(a, u) for u in basis], c - dot(a, origin))
    for a, c in poly.eqs:
        row = [dot(a, u) for u in basis]
        rhs = c - dot(a, origin)
        ok &= add(row, rhs)
        ok &= add([-x for x in row], -rhs)
    return A, b, ok


def lattice_points(poly: Polytope, origin: Sequence | None = None, basis: Sequence[Sequence] | None = None) -> list[tuple[int, ...]]:
    """All points of ``origin + Z·basis`` inside ``poly`` (default: ``Z^d``).

    Returned in lattice coordinates when a basis is given, otherwise as
    integer points.  Enumeration descends coordinate by coordinate, clipping
    each coordinate's interval against every inequality using the bounding
    box of the coordinates not yet fixed.
    """
    if poly.is_empty:
        return []
    d = poly.dim
    if basis is not None:
        # bounding box in lattice coordinates from the vertices
        Binv_rows = _left_inverse([[rat(x) for x in u] for u in basis], d)
        o = [rat(x) for x in origin] if origin is not None else [Fraction(0)] * d
        coords = [[dot(row, [v - oo for v, oo in zip(vert, o)]) for row in Binv_rows] for vert in poly.vertices]
        n = len(basis)
    else:
        coords = [list(v) for v in poly.vertices]
        n = d
    lo = [math.ceil(min(c[i] for c in coords)) for i in range(n)]
    hi = [math.floor(max(c[i] for c in coords)) for i in range(n)]
    if any(l > h for l, h in zip(lo, hi)):
        return []
    A, b, ok = _integer_system(poly, origin, basis)
    if not ok:
        return []
    return list(_enumerate_box(A, b, lo, hi))


def _left_inverse(U: list[list[Fraction]], d: int) -> list[list[Fraction]]:
    """Rows R with R·(U^T y) = y, for U of full row rank."""
    m = len(U)
    # solve (U U^T) R' = U
    G = [[dot(a, b) for b in U] for a in U]
    aug = [G[i] + U[i] for i in range(m)]
    R, _ = rref(aug)
    return [row[m:] for row in R]


def _enumerate_box(A, b, lo, hi):
    n = len(lo)
    m = len(A)
    minrest = [[0] * (n + 1) for _ in range(m)]
    for i in range(m):
        acc = 0
        for j in range(n - 1, -1, -1):
            a = A[i][j]
            acc += a * (lo[j] if a > 0 else hi[j])
            minrest[i][j] = acc

    def rec(depth, partial, prefix):
        if depth == n:
            yield tuple(prefix)
            return
        l, h = lo[depth], hi[depth]
        for i in range(m):
            a = A[i][depth]
            slack = b[i] - partial[i] - minrest[i][depth + 1]
            if a > 0:
                h = min(h, slack // a)
            elif a < 0:
                l = max(l, -((-slack) // a))
            elif slack < 0:
                return
        for x in range(l, h + 1):
            yield from rec(depth + 1, [p + A[i][depth] * x for i, p in enumerate(partial)], prefix + [x])

    yield from rec(0, [0] * m, [])


# ---------------------------------------------------------------------------
# complexes

def _orient(v: IntVec) -> IntVec:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


@dataclass
class ComplexOfCones:
    """Maximal cones of a fan-like complex with their facet adjacencies."""

    dim: int
    cells: list[Cone]
    adjacency: list[tuple[int, int]] = field(default_factory=list)
    boundary: list[tuple[int, IntVec]] = field(default_factory=list)

    def __len__(self):
        return len(self.cells)

    def locate(self, x: Sequence) -> list[int]:
        """Indices of cells containing ``x`` (closed cells)."""
        return [i for i, c in enumerate(self.cells) if c.contains(x)]

    def to_json(self) -> dict:
        body = {"dim": self.dim, "cells": [c.to_json() for c in self.cells],
                "adjacency": [list(p) for p in self.adjacency],
                "boundary": [[i, list(n)] for i, n in self.boundary]}
        body["hash"] = content_hash(body)
        return body

    @classmethod
    def from_json(cls, data) -> "ComplexOfCones":
        body = {k: v for k, v in data.items() if k != "hash"}
        if "hash" in data and content_hash(body) != data["hash"]:
            raise PolyhedronError("complex content hash mismatch")
        return cls(int(data["dim"]), [Cone.from_json(c) for c in data["cells"]],
                   [tuple(p) for p in data["adjacency"]],
                   [(int(i), tuple(n)) for i, n in data["boundary"]])


def content_hash(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


class _Arrangement:
    """Distinct linear hyperplanes (up to sign) of a cone collection."""

    def __init__(self, cones: Sequence[Cone]):
        hs = set()
        for c in cones:
            for n in c.facets:
                hs.add(_orient(n))
        self.normals = sorted(hs)


def common_refinement(cones: Sequence[Cone], seed: int = 0) -> ComplexOfCones:
    """Chamber complex of a family of full-dimensional cones.

    Each chamber is the intersection of all input cones containing one of its
    generic points.  Starting from a generic point of the first cone, the
    complex is explored by stepping just across every facet of every chamber
    found so far; the step point is chosen off all input hyperplanes so its
    containing set of cones is unambiguous.
    """
    if not cones:
        raise PolyhedronError("no cones")
    d = cones[0].dim
    full = [c for c in cones if c.dimension == d]
    if len(full) < len(cones):
        warnings.warn(f"discarding {len(cones) - len(full)} lower-dimensional cones")
    if not full:
        return ComplexOfCones(d, [])
    rng = random.Random(seed)
    arr = _Arrangement(full)
    facet_sets = [c.facets for c in full]

    def signature(x) -> frozenset:
        sig = []
        for i, fs in enumerate(facet_sets):
            if all(dot(n, x) > 0 for n in fs):
                sig.append(i)
        return frozenset(sig)

    def generic_point(rays, avoid_parallel=None, tries=200):
        spread = 7
        for t in range(tries):
            w = [rng.randint(1, spread) for _ in rays]
            p = tuple(sum(wi * r[i] for wi, r in zip(w, rays)) for i in range(d))
            ok = True
            for h in arr.normals:
                if dot(h, p) == 0:
                    if avoid_parallel is not None and _parallel(h, avoid_parallel):
                        continue
                    ok = False
                    break
            if ok:
                return p
            spread = spread * 2 + 1
        raise PolyhedronError("could not find a generic point")

    overlap_cache: dict[frozenset, list[int]] = {}

    def overlapping(sig) -> list[int]:
        """Cones outside ``sig`` that still meet the chamber of ``sig`` in full dimension."""
        if sig not in overlap_cache:
            base = _halfspace_cone(sig)
            overlap_cache[sig] = [j for j in range(len(full)) if j not in sig
                                  and not _separated(base, full[j])
                                  and base.intersect(full[j]).is_full_dimensional]
        return overlap_cache[sig]

    def _halfspace_cone(sig) -> Cone:
        ineqs = set()
        for i in sig:
            ineqs.update(facet_sets[i])
        return Cone.from_halfspaces(sorted(ineqs), (), d)

    def key_of(x):
        """Signature plus, for overlapping outside cones, the side of each of
        their facet hyperplanes; families forming a complex never need the
        second part."""
        sig = signature(x)
        if not sig:
            return sig, ()
        sides = tuple((j, tuple(dot(n, x) > 0 for n in facet_sets[j])) for j in overlapping(sig))
        return sig, sides

    def cell_of(key) -> Cone:
        sig, sides = key
        ineqs = set()
        for i in sig:
            ineqs.update(facet_sets[i])
        for j, pattern in sides:
            for n, pos in zip(facet_sets[j], pattern):
                ineqs.add(tuple(n) if pos else tuple(-x for x in n))
        return Cone.from_halfspaces(sorted(ineqs), (), d)

    start = generic_point(full[0].rays)
    s0 = key_of(start)
    cells: dict[tuple, Cone] = {s0: cell_of(s0)}
    order = [s0]
    adjacency = set()
    boundary = []
    queue = [s0]
    seeds = [generic_point(c.rays) for c in full[1:]]
    while queue or seeds:
        if not queue:
            # unions need not be facet-connected: restart inside an unreached cone
            s1 = key_of(seeds.pop())
            if s1 not in cells:
                cells[s1] = cell_of(s1)
                order.append(s1)
                queue.append(s1)
            continue
        sig = queue.pop()
        cell = cells[sig]
        for n in cell.facets:
            frays = cell.facet_rays(n)
            p = generic_point(frays, avoid_parallel=n)
            t = 1
            for h in arr.normals:
                hp = dot(h, p)
                if hp:
                    t = max(t, abs(dot(h, n)) // abs(hp) + 1)
            q = tuple(t * pi - ni for pi, ni in zip(p, n))
            s2 = key_of(q)
            if not s2[0]:
                boundary.append((sig, n))
                continue
            if s2 not in cells:
                cells[s2] = cell_of(s2)
                order.append(s2)
                queue.append(s2)
            adjacency.add(frozenset((sig, s2)))
    keyed = sorted(order, key=lambda s: cells[s].key())
    index = {s: i for i, s in enumerate(keyed)}
    adj = sorted(tuple(sorted(index[s] for s in pair)) for pair in adjacency if len(pair) == 2)
    bnd = sorted((index[s], n) for s, n in boundary)
    return ComplexOfCones(d, [cells[s] for s in keyed], adj, bnd)


def _separated(a: Cone, b: Cone) -> bool:
    """True if a facet hyperplane of one cone has the other on its far side."""
    for x, y in ((a, b), (b, a)):
        for n in x.facets:
            if all(dot(n, r) <= 0 for r in y.rays) and not y.lineality:
                return True
    return False


def _parallel(u, v) -> bool:
    return _orient(primitive(u)) == _orient(primitive(v))


def refinement_certificate(cx: ComplexOfCones, support: Cone, normal: Sequence, offset=1) -> tuple[Fraction, Fraction]:
    """(sum of truncated cell volumes, truncated volume of the support)."""
    total = sum((truncated_volume(c, normal, offset) for c in cx.cells), Fraction(0))
    return total, truncated_volume(support, normal, offset)


def support_cone(cones: Sequence[Cone]) -> Cone:
    rays = sorted({r for c in cones for r in c.rays})
    return Cone.from_rays(rays, dim=cones[0].dim)
