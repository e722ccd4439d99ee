"""The multiplicity chamber complex in fundamental-weight coordinates.

Cells live in R^{2k-2} with coordinates ``(l_1..l_{k-1}, b_1..b_{k-1})``
where ``lambda = sum l_i omega_i`` and ``beta = sum b_i omega_i``.  The raw
complex refines the base cones of the slack-variable system pulled back
along ``B``; gluing merges cells that carry the same polynomial.
"""
from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _accel
from .exact import (FitError, MultiPoly, dot, fit_polynomial, interpolate_simplex_grid, inverse,
                    lb_variables, mat_mul, primitive, rat)
from .gt import build_spf_system, count_gt, restricted_rhs_matrix
from .kostant import enumerate_bases
from .polyhedra import (ComplexOfCones, Cone, Polytope, PolyhedronError, affine_slice, common_refinement,
                        content_hash, refinement_certificate, support_cone, truncated_volume)
from .typea import (SubsetHyperplane, Weight, dh_walls, from_x, fundamental_weight, to_x)

CODE_VERSION = "1"


class GluingError(RuntimeError):
    pass


class ScaleCapExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# coordinates

def lb_to_lambda_beta(v: Sequence, k: int) -> tuple[Fraction, ...]:
    """(l, b) -> (lambda_1..lambda_k, beta_1..beta_k), sum-zero coordinates."""
    lam = Weight.from_fundamental(v[:k - 1]).coords
    beta = Weight.from_fundamental(v[k - 1:]).coords
    return lam + beta


def ray_in_lambda_beta(ray: Sequence[int], k: int) -> tuple[int, ...]:
    """Primitive integer (lambda, beta) vector on the ray."""
    return primitive(lb_to_lambda_beta(ray, k))


def gl_from_lb(l: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int] | None]:
    """Integral gl pair with lambda_k = 0 from integer (l, b); None if off-lattice."""
    k = len(l) + 1
    lam = [sum(l[i:]) for i in range(k - 1)] + [0]
    shift_num = sum((j + 1) * (l[j] - b[j]) for j in range(k - 1))
    if shift_num % k:
        return lam, None
    shift = shift_num // k
    beta = [sum(b[i:]) + shift for i in range(k - 1)] + [shift]
    return lam, beta


def multiplicity_lb(l: Sequence[int], b: Sequence[int]) -> int:
    lam, beta = gl_from_lb(l, b)
    if beta is None:
        return 0
    return _accel.count_gt(lam, beta)


def lambda_one_normal(k: int) -> tuple[tuple[int, ...], int]:
    """Truncation ``lambda_1 <= 1`` as an integer halfspace ``n·x <= c``."""
    return tuple(k - i for i in range(1, k)) + (0,) * (k - 1), k


def beta_action(k: int, perm: Sequence[int]) -> list[list[int]]:
    """Integer matrix acting on (l, b) by permuting the coordinates of beta."""
    n = 2 * k - 2
    cols = []
    for t in range(n):
        e = [0] * n
        e[t] = 1
        if t < k - 1:
            cols.append(e)
            continue
        beta = Weight.from_fundamental(e[k - 1:]).coords
        moved = [beta[perm[i]] for i in range(k)]
        b = [moved[i] - moved[i + 1] for i in range(k - 1)]
        cols.append([0] * (k - 1) + [int(x) for x in b])
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _apply(Mx, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in Mx)


def transform_cone(c: Cone, Mx) -> Cone:
    return Cone.from_rays([_apply(Mx, r) for r in c.rays], dim=c.dim)


# ---------------------------------------------------------------------------
# complexes

@dataclass
class MultComplex:
    k: int
    cells: list[Cone]
    polynomials: list[MultiPoly] | None = None
    glued: bool = False
    members: list[list[int]] | None = None
    adjacency: list[tuple[int, int]] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def variables(self) -> tuple[str, ...]:
        return lb_variables(self.k)

    def __len__(self):
        return len(self.cells)

    def locate(self, l: Sequence, b: Sequence) -> list[int]:
        x = tuple(l) + tuple(b)
        return [i for i, c in enumerate(self.cells) if c.contains(x)]

    def evaluate(self, l: Sequence, b: Sequence) -> Fraction:
        """Polynomial value of any closed cell containing (l, b); 0 outside."""
        hits = self.locate(l, b)
        if not hits:
            return Fraction(0)
        return self.polynomials[hits[0]].evaluate(tuple(l) + tuple(b))

    def rays_lambda_beta(self, i: int) -> list[tuple[int, ...]]:
        return sorted(ray_in_lambda_beta(r, self.k) for r in self.cells[i].rays)

    def to_json(self) -> dict:
        body = {
            "schema": 1, "k": self.k, "glued": self.glued, "version": CODE_VERSION,
            "cells": [c.to_json() for c in self.cells],
            "polynomials": None if self.polynomials is None else [p.to_json() for p in self.polynomials],
            "members": self.members,
            "adjacency": [list(p) for p in self.adjacency],
            "info": self.info,
        }
        body["hash"] = content_hash(body)
        return body

    @classmethod
    def from_json(cls, data) -> "MultComplex":
        body = {k: v for k, v in data.items() if k != "hash"}
        if content_hash(body) != data.get("hash"):
            raise PolyhedronError("complex content hash mismatch")
        polys = data["polynomials"]
        return cls(int(data["k"]), [Cone.from_json(c) for c in data["cells"]],
                   None if polys is None else [MultiPoly.from_json(p) for p in polys],
                   bool(data["glued"]), data["members"],
                   [tuple(p) for p in data["adjacency"]], data["info"])


def restricted_base_cones(k: int) -> tuple[list[tuple[int, ...]], list[Cone]]:
    """Bases of E_k and the distinct nonzero cones {x : E_sigma^{-1} B x >= 0}."""
    sys = build_spf_system(k)
    Bp = restricted_rhs_matrix(sys)
    E = sys.E
    bases = enumerate_bases(E)
    seen: dict[Cone, None] = {}
    for sig in bases:
        Es = [[E[i][j] for j in sig] for i in range(len(E))]
        H = mat_mul(inverse(Es), Bp)
        c = Cone.from_halfspaces(H, (), 2 * k - 2)
        if not c.is_zero:
            seen.setdefault(c, None)
    return bases, list(seen)


def restricted_chamber_complex(k: int, seed: int = 0) -> MultComplex:
    if k not in (2, 3, 4):
        raise ValueError("restricted complexes are supported for k in {2, 3, 4}")
    bases, cones = restricted_base_cones(k)
    full = [c for c in cones if c.is_full_dimensional]
    cx = common_refinement(full, seed=seed)
    nrm, off = lambda_one_normal(k)
    total, whole = refinement_certificate(cx, support_cone(full), nrm, off)
    if total != whole:
        raise GluingError(f"refinement volume certificate failed: {total} != {whole}")
    info = {"bases": len(bases), "restricted_cones": len(cones),
            "full_dimensional_cones": len(full), "cells": len(cx.cells), "volume": str(total)}
    return MultComplex(k, cx.cells, adjacency=list(cx.adjacency), info=info)


def _deep_lattice_point(cell: Cone, k: int, degree: int, scale_cap: int) -> tuple[int, ...]:
    """A root-lattice point p with p + k*a interior for all a >= 0, |a| <= degree."""
    s = cell.interior_point()
    u = 1
    while u <= scale_cap:
        p = tuple(k * u * x for x in s)
        if all(dot(n, p) > k * degree * max(0, -min(n)) for n in cell.facets):
            return p
        u *= 2
    raise ScaleCapExceeded(f"no interpolation base within scale cap {scale_cap}")


def fit_cell_polynomial(cell: Cone, k: int, scale_cap: int = 1 << 12, checks: int = 6,
                        rng: random.Random | None = None) -> tuple[MultiPoly, int]:
    """Interpolate the multiplicity on one cell; returns (polynomial, base scale)."""
    degree = math.comb(k - 1, 2)
    names = lb_variables(k)
    n = k - 1
    base = _deep_lattice_point(cell, k, degree, scale_cap)
    p = interpolate_simplex_grid(lambda v: multiplicity_lb(v[:n], v[n:]), base, k, degree, names)
    rng = rng or random.Random(0)
    # held-out points: beyond the grid and in the other root-lattice cosets
    tested = 0
    tries = 0
    while tested < checks and tries < 50 * checks:
        tries += 1
        a = [rng.randint(0, degree + 2) for _ in base]
        off = [rng.randint(-1, 1) for _ in base]
        q = tuple(2 * x + k * y + z for x, y, z in zip(base, a, off))
        if not cell.contains(q):
            continue
        l, b = q[:n], q[n:]
        lam, beta = gl_from_lb(l, b)
        if beta is None:
            continue
        tested += 1
        if p.evaluate(q) != _accel.count_gt(lam, beta):
            raise FitError(f"held-out point {q} disagrees with the interpolated polynomial")
    scale = max(abs(x) for x in base)
    return p, scale


def _fit_job(job):
    cell, k, scale_cap, checks, seed = job
    return fit_cell_polynomial(cell, k, scale_cap, checks, random.Random(seed))


def assign_polynomials(mc: MultComplex, scale_cap: int = 1 << 12, checks: int = 6, seed: int = 0,
                       workers: int = 1) -> MultComplex:
    """Fit every cell; each cell draws held-out points from its own seed, so
    the result does not depend on ``workers``."""
    jobs = [(cell, mc.k, scale_cap, checks, seed * 1_000_003 + i) for i, cell in enumerate(mc.cells)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_fit_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_fit_job(j) for j in jobs]
    polys = [p for p, _ in results]
    info = dict(mc.info)
    info["max_interpolation_coordinate"] = max((s for _, s in results), default=0)
    return MultComplex(mc.k, mc.cells, polys, mc.glued, mc.members, mc.adjacency, info)


def glue_by_polynomial(mc: MultComplex) -> MultComplex:
    """Merge cells sharing a polynomial; each union must be a convex cone.

    The union is certified by comparing the sum of the truncated volumes of
    the pieces with the truncated volume of the cone spanned by all their
    rays (truncation lambda_1 <= 1).
    """
    if mc.polynomials is None:
        raise ValueError("assign polynomials first")
    groups: dict[MultiPoly, list[int]] = {}
    for i, p in enumerate(mc.polynomials):
        groups.setdefault(p, []).append(i)
    nrm, off = lambda_one_normal(mc.k)
    cells, polys, members = [], [], []
    for p, idx in groups.items():
        if len(idx) == 1:
            cand = mc.cells[idx[0]]
        else:
            cand = Cone.from_rays(sorted({r for i in idx for r in mc.cells[i].rays}), dim=mc.cells[0].dim)
            parts = sum((truncated_volume(mc.cells[i], nrm, off) for i in idx), Fraction(0))
            whole = truncated_volume(cand, nrm, off)
            if parts != whole:
                raise GluingError(f"cells {idx} with polynomial {p} do not glue to a convex cone "
                                  f"({parts} != {whole})")
        cells.append(cand)
        polys.append(p)
        members.append(sorted(idx))
    order = sorted(range(len(cells)), key=lambda i: cells[i].key())
    cells = [cells[i] for i in order]
    polys = [polys[i] for i in order]
    members = [members[i] for i in order]
    # adjacency: two glued cells sharing a facet
    raw_owner = {}
    for g, mem in enumerate(members):
        for i in mem:
            raw_owner[i] = g
    adj = sorted({tuple(sorted((raw_owner[a], raw_owner[b]))) for a, b in mc.adjacency
                  if raw_owner[a] != raw_owner[b]})
    info = dict(mc.info)
    info["glued_cells"] = len(cells)
    return MultComplex(mc.k, cells, polys, True, members, adj, info)


def beta_orbits(mc: MultComplex) -> list[list[int]]:
    """Orbits of the cells under S_k permuting beta; errors if not closed."""
    index = {c: i for i, c in enumerate(mc.cells)}
    gens = []
    k = mc.k
    for t in range(k - 1):
        perm = list(range(k))
        perm[t], perm[t + 1] = perm[t + 1], perm[t]
        gens.append(beta_action(k, perm))
    parent = list(range(len(mc.cells)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, c in enumerate(mc.cells):
        for g in gens:
            img = transform_cone(c, g)
            j = index.get(img)
            if j is None:
                raise GluingError(f"cell {i} has no image under a beta transposition")
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    orbits: dict[int, list[int]] = {}
    for i in range(len(mc.cells)):
        orbits.setdefault(find(i), []).append(i)
    return sorted(orbits.values())


def is_beta_symmetric(mc: MultComplex) -> bool:
    try:
        beta_orbits(mc)
    except GluingError:
        return False
    return True


# ---------------------------------------------------------------------------
# lambda-space

def projected_generators(c: Cone, k: int) -> frozenset:
    """Primitive lambda-parts of the rays, without removing redundant ones."""
    return frozenset(primitive(r[:k - 1]) for r in c.rays if any(r[:k - 1]))


def project_lambda(c: Cone, k: int) -> Cone:
    return Cone.from_rays(sorted(projected_generators(c, k)), dim=k - 1)


@dataclass
class LambdaComplex:
    """``projections`` are the distinct projected cones; ``generator_sets``
    the distinct unreduced sets of projected ray directions, which can
    describe one cone in several ways."""

    k: int
    projections: list[Cone]
    cells: list[Cone]
    classification: list[list[int]]
    generator_sets: list[frozenset] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"schema": 1, "k": self.k, "projections": [c.to_json() for c in self.projections],
                "generator_sets": [sorted(map(list, g)) for g in self.generator_sets],
                "cells": [c.to_json() for c in self.cells], "classification": self.classification}

    def symmetric_classes(self) -> list[list[int]]:
        """Cells grouped under lambda -> -lambda^rev, i.e. l -> reversed l."""
        index = {c: i for i, c in enumerate(self.cells)}
        seen, out = set(), []
        for i, c in enumerate(self.cells):
            if i in seen:
                continue
            img = Cone.from_rays([tuple(reversed(r)) for r in c.rays], dim=c.dim)
            j = index.get(img, i)
            grp = sorted({i, j})
            seen.update(grp)
            out.append(grp)
        return out


def lambda_complex(mc: MultComplex, seed: int = 0) -> LambdaComplex:
    """Common refinement of the lambda-projections of all cells."""
    k = mc.k
    proj_of = [project_lambda(c, k) for c in mc.cells]
    distinct = sorted(set(proj_of), key=lambda c: c.key())
    full = [c for c in distinct if c.is_full_dimensional]
    cx = common_refinement(full, seed=seed)
    classification = []
    for cell in cx.cells:
        x = cell.interior_point()
        classification.append([i for i, c in enumerate(proj_of) if c.contains(x)])
    gens = sorted({projected_generators(c, k) for c in mc.cells}, key=sorted)
    return LambdaComplex(k, distinct, cx.cells, classification, gens)


def lambda_complex_svg(lc: LambdaComplex, size: int = 420) -> str:
    """Cross-section of a k = 4 lambda-complex with l_1 + l_2 + l_3 = 1.

    Rays are normalised onto the section and drawn in barycentric
    coordinates; the mirror axis is the symmetry lambda -> -lambda^rev.
    """
    if lc.k != 4:
        raise ValueError("the cross-section figure is for k = 4")
    corners = [(0.5, 0.06), (0.04, 0.86), (0.96, 0.86)]

    def px(r):
        t = sum(r)
        x = sum(float(a / t) * c[0] for a, c in zip(r, corners))
        y = sum(float(a / t) * c[1] for a, c in zip(r, corners))
        return x * size, y * size

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    for i, cell in enumerate(lc.cells):
        pts = [px(r) for r in cell.rays]
        cx = sum(p[0] for p in pts) / len(pts)
        cy = sum(p[1] for p in pts) / len(pts)
        pts.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
        shade = 235 - 6 * (len(lc.classification[i]) % 20)
        out.append(f'<polygon points="{" ".join(f"{x:.2f},{y:.2f}" for x, y in pts)}" '
                   f'fill="rgb({shade},{shade},255)" stroke="#333" stroke-width="0.7"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def slice_for_lambda(mc: MultComplex, lam) -> list[tuple[Polytope, MultiPoly, int]]:
    """Full-dimensional pieces of the cells over a fixed lambda.

    Returns (polytope in x = beta_1..beta_{k-1}, polynomial with lambda
    substituted, cell index).
    """
    lam = lam if isinstance(lam, Weight) else Weight.of(lam)
    k = mc.k
    l = lam.fundamental()
    n = k - 1
    basis = [tuple(int(i == n + j) for i in range(2 * n)) for j in range(n)]
    base = tuple(l) + (0,) * n
    W = [[fundamental_weight(k, j + 1)[i] for j in range(n)] for i in range(n)]  # x = W b
    out = []
    for idx, cell in enumerate(mc.cells):
        s = affine_slice(cell, base, basis)
        if isinstance(s, Cone):
            raise ValueError("lambda = 0 has no slice")
        if s.is_empty or s.dimension < n:
            continue
        verts = [tuple(sum(W[i][j] * v[j] for j in range(n)) for i in range(n)) for v in s.vertices]
        poly = Polytope.from_vertices(verts)
        p = None
        if mc.polynomials is not None:
            p = mc.polynomials[idx].substitute({i: l[i] for i in range(n)})
        out.append((poly, p, idx))
    return out


def slice_regions(mc: MultComplex, lam) -> list[tuple[Polytope, MultiPoly]]:
    """Pieces over lambda merged across shared facets when polynomials agree."""
    pieces = slice_for_lambda(mc, lam)
    n = mc.k - 1
    parent = list(range(len(pieces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(pieces)), 2):
        if pieces[i][1] != pieces[j][1]:
            continue
        if _share_facet(pieces[i][0], pieces[j][0], n):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(len(pieces)):
        groups.setdefault(find(i), []).append(i)
    out = []
    for mem in groups.values():
        pts = sorted({v for m in mem for v in pieces[m][0].vertices})
        region = Polytope.from_vertices(pts)
        if len(mem) > 1:
            parts = sum((pieces[m][0].volume() for m in mem), Fraction(0))
            if parts != region.volume():
                raise GluingError("merged slice pieces are not convex")
        out.append((region, pieces[mem[0]][1]))
    out.sort(key=lambda t: t[0].vertices)
    return out


def _share_facet(p: Polytope, q: Polytope, n: int) -> bool:
    for a, c in p.ineqs:
        neg = (tuple(-x for x in a), -c)
        if neg not in q.ineqs:
            continue
        fp = [v for v in p.vertices if dot(a, v) == c]
        fq = [v for v in q.vertices if dot(a, v) == c]
        if len(fp) < n or len(fq) < n:
            continue
        inter = Polytope.from_vertices(fp).intersect_halfspaces(
            [h for h in q.ineqs if h != neg], [(a, c)])
        if not inter.is_empty and inter.dimension == n - 1:
            return True
    return False


# ---------------------------------------------------------------------------
# wall derivation

def _up_to_sign(v):
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


@dataclass
class DerivedWall:
    normal: tuple[int, ...]           # in (l, b) coordinates, up to sign
    kind: str                         # "chamber" (lambda-wall), "interior" or "boundary"
    cone: Cone                        # union of the cell facets on the hyperplane
    hyperplane: SubsetHyperplane | None = None
    U: tuple[int, ...] = ()
    V: tuple[int, ...] = ()


def facet_normal_directions(mc: MultComplex) -> list[tuple[int, ...]]:
    return sorted({_up_to_sign(n) for c in mc.cells for n in c.facets})


def _subset_data(normal: Sequence[int], k: int):
    """Recognize ``beta_U - lambda_V`` (up to scale) from an (l, b) normal."""
    n = k - 1
    for j in range(1, k // 2 + 1):
        for U in itertools.combinations(range(k), j):
            for V in itertools.combinations(range(k), j):
                # linear form beta_U - lambda_V in (l, b) coordinates
                f = [Fraction(0)] * (2 * n)
                for i in range(n):
                    w = fundamental_weight(k, i + 1)
                    f[i] = -sum(w[v] for v in V)
                    f[n + i] = sum(w[u] for u in U)
                if _up_to_sign(primitive(f)) == _up_to_sign(tuple(normal)):
                    return U, V
    return None


def derive_walls(mc: MultComplex) -> list[DerivedWall]:
    """Collect the facets of all cells by hyperplane and certify each union.

    For every hyperplane the facets coming from the cells on one side are
    united; the union must be one convex cone (volume certificate in the
    lattice of the hyperplane).
    """
    k = mc.k
    nrm, off = lambda_one_normal(k)
    by_dir: dict[tuple[int, ...], dict[int, list[Cone]]] = {}
    for c in mc.cells:
        for n in c.facets:
            d = _up_to_sign(n)
            side = 1 if d == n else -1
            by_dir.setdefault(d, {}).setdefault(side, []).append(c.facet_cone(n))
    walls = []
    for d in sorted(by_dir):
        sides = by_dir[d]
        unions = []
        for side, facets in sorted(sides.items()):
            union = Cone.from_rays(sorted({r for f in facets for r in f.rays}), dim=mc.cells[0].dim)
            parts = sum((truncated_volume(f, nrm, off) for f in facets), Fraction(0))
            whole = truncated_volume(union, nrm, off)
            if parts != whole:
                raise GluingError(f"facets on hyperplane {d} do not form a convex cone")
            unions.append(union)
        if len(unions) == 2 and unions[0] != unions[1]:
            raise GluingError(f"the two sides of hyperplane {d} disagree")
        cone = unions[0]
        if not any(d[k - 1:]):
            walls.append(DerivedWall(d, "chamber", cone))
            continue
        sub = _subset_data(d, k)
        if sub is None:
            raise GluingError(f"hyperplane {d} is not of the form beta_U = lambda_V")
        U, V = sub
        kind = "interior" if len(unions) == 2 else "boundary"
        walls.append(DerivedWall(d, kind, cone, U=U, V=V))
    return walls


def wall_slices(walls: Sequence[DerivedWall], lam) -> list[frozenset]:
    """Vertex sets (x-coordinates) of the derived walls over a fixed lambda."""
    lam = lam if isinstance(lam, Weight) else Weight.of(lam)
    k = lam.k
    n = k - 1
    l = lam.fundamental()
    basis = [tuple(int(i == n + j) for i in range(2 * n)) for j in range(n)]
    W = [[fundamental_weight(k, j + 1)[i] for j in range(n)] for i in range(n)]
    out = []
    for w in walls:
        if w.kind == "chamber":
            continue
        s = affine_slice(w.cone, tuple(l) + (0,) * n, basis)
        if s.is_empty or s.dimension < n - 1:
            continue
        verts = frozenset(tuple(sum(W[i][j] * v[j] for j in range(n)) for i in range(n)) for v in s.vertices)
        out.append(verts)
    return out


def symbolic_wall(vertices: frozenset, lam: Weight) -> list[tuple[int, ...]]:
    """Write each vertex as a permutation of lambda (0-based, one-line form)."""
    coords = lam.coords
    perms = []
    for v in sorted(vertices):
        full = from_x(v)
        for p in itertools.permutations(range(lam.k)):
            if all(coords[p[i]] == full[i] for i in range(lam.k)):
                perms.append(p)
                break
        else:
            raise GluingError(f"wall vertex {v} is not in the orbit of lambda")
    return sorted(perms)


def compare_with_dh_walls(walls: Sequence[DerivedWall], lam) -> tuple[bool, set, set]:
    lam = lam if isinstance(lam, Weight) else Weight.of(lam)
    derived = set(wall_slices(walls, lam))
    expected = {w.vertex_set() for w in dh_walls(lam)}
    return derived == expected, derived - expected, expected - derived


# ---------------------------------------------------------------------------
# scaling

def scaling_polynomial(lam: Sequence, beta: Sequence, t_max: int | None = None) -> MultiPoly:
    """Fit t -> m_{t lambda}(t beta) exactly with degree <= 2*C(k-1, 2)."""
    k = len(lam)
    deg = 2 * math.comb(k - 1, 2)
    if t_max is None:
        t_max = deg + 4
    if t_max < deg + 2:
        raise ValueError("need at least 2*C(k-1,2) + 2 samples")
    samples = []
    for t in range(1, t_max + 1):
        samples.append(((t,), count_gt([t * rat(x) for x in lam], [t * rat(x) for x in beta])))
    return fit_polynomial(samples, ("t",), total_degree=deg)


# ---------------------------------------------------------------------------
# central domain (k = 4)

def sl_coordinates(k: int) -> tuple[list[MultiPoly], list[MultiPoly]]:
    """lambda_i and beta_i (sum-zero) as linear polynomials in (l, b)."""
    names = lb_variables(k)
    out = ([], [])
    for half, off in zip(out, (0, k - 1)):
        for i in range(k):
            coeffs = [0] * (2 * k - 2)
            for j in range(k - 1):
                coeffs[off + j] = fundamental_weight(k, j + 1)[i]
            half.append(MultiPoly.linear(names, coeffs))
    return out


def central_polynomials() -> dict[str, MultiPoly]:
    """Closed forms of the two central-domain polynomials of sl_4 when
    lambda_1 < -lambda_4, in (l, b) variables.

    "light" (lambda_3 > 0) does not depend on beta; "dark" (lambda_3 < 0)
    involves h_2(beta_1, beta_2, beta_3).
    """
    lam, beta = sl_coordinates(4)
    l1, l2, l3, l4 = lam
    b1, b2, b3 = beta[:3]
    h2 = b1 * b1 + b2 * b2 + b3 * b3 + b1 * b2 + b2 * b3 + b1 * b3
    half = Fraction(1, 2)
    light = half * (l2 - l3 + 1) * (l1 - l2 + 1) * (l1 - l3 + 2)
    dark = half * (l1 - l2 + 1) * (-l2 * l2 - 2 * l3 * l3 + l3 * l4 - l2 * l3 - l2 * l4 + l2 - l4 + 2 - 2 * h2)
    return {"light": light, "dark": dark}


def central_domain_polynomial(mc: MultComplex, l: Sequence[int], probes: int = 3, seed: int = 0) -> MultiPoly:
    """Polynomial of the glued cell around (l, beta = 0).

    Probes a few small generic beta offsets; they must all land in cells
    carrying the same polynomial, otherwise lambda is too close to a wall.
    """
    if not mc.glued:
        raise ValueError("needs a glued complex")
    rng = random.Random(seed)
    n = mc.k - 1
    found = set()
    for _ in range(probes):
        b = [Fraction(rng.randint(-97, 97), 10 ** 4) for _ in range(n)]
        found |= {mc.polynomials[i] for i in mc.locate(l, b)}
    if len(found) != 1:
        raise ValueError(f"beta = 0 is not interior to one domain for l = {tuple(l)}")
    return found.pop()


# ---------------------------------------------------------------------------
# cached entry points

def cached_complex(k: int, stage: str = "glued", directory=None, refresh: bool = False,
                   workers: int = 1, scale_cap: int = 1 << 12) -> MultComplex:
    """Raw ("raw"), polynomial ("poly") or glued ("glued") complex, cached on disk.

    ``workers`` and ``scale_cap`` only matter when something has to be built.
    """
    from .cache import load_or_build

    def build():
        if stage == "raw":
            return restricted_chamber_complex(k)
        if stage == "poly":
            return assign_polynomials(cached_complex(k, "raw", directory, refresh), scale_cap=scale_cap,
                                      workers=workers)
        if stage == "glued":
            return glue_by_polynomial(cached_complex(k, "poly", directory, refresh, workers, scale_cap))
        raise ValueError(f"unknown stage {stage!r}")

    return load_or_build(f"mult-k{k}-{stage}-v{CODE_VERSION}", build, MultComplex.to_json,
                         MultComplex.from_json, directory, refresh)
