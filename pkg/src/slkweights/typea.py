"""Root data for type A_{k-1}, permutahedra and their wall partitions.

Geometry in beta-space uses the coordinates ``x = (beta_1, ..., beta_{k-1})``
of the sum-zero hyperplane; ``beta_k`` is recovered as ``-sum(x)``.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import nullspace, primitive, rank, rat
from .polyhedra import Polytope


# ---------------------------------------------------------------------------
# weights

@dataclass(frozen=True)
class Weight:
    """Sum-zero rational vector of length k."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if sum(self.coords) != 0:
            raise ValueError(f"weight coordinates must sum to 0, got {self.coords}")

    @classmethod
    def of(cls, values: Iterable) -> "Weight":
        """Accept sum-zero rationals, or any integer vector (projected to sum 0)."""
        vals = [rat(v) for v in values]
        mean = sum(vals) / len(vals)
        return cls(tuple(v - mean for v in vals))

    @classmethod
    def from_fundamental(cls, l: Sequence) -> "Weight":
        k = len(l) + 1
        out = [Fraction(0)] * k
        for i, li in enumerate(l, start=1):
            w = fundamental_weight(k, i)
            out = [a + rat(li) * b for a, b in zip(out, w)]
        return cls(tuple(out))

    @property
    def k(self) -> int:
        return len(self.coords)

    def fundamental(self) -> tuple[Fraction, ...]:
        c = self.coords
        return tuple(c[i] - c[i + 1] for i in range(len(c) - 1))

    def is_dominant(self) -> bool:
        c = self.coords
        return all(c[i] >= c[i + 1] for i in range(len(c) - 1))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.fundamental())

    def permute(self, sigma: Sequence[int]) -> "Weight":
        """``(sigma·v)_{sigma(i)} = v_i`` with 0-based sigma."""
        out = [None] * self.k
        for i, s in enumerate(sigma):
            out[s] = self.coords[i]
        return Weight(tuple(out))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


def fundamental_weight(k: int, i: int) -> tuple[Fraction, ...]:
    """omega_i = e_1 + ... + e_i - (i/k)(1, ..., 1)."""
    return tuple(Fraction(int(j < i)) - Fraction(i, k) for j in range(k))


def rho(k: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(k - 1 - 2 * i, 2) for i in range(k))


@dataclass(frozen=True)
class RootSystem:
    k: int
    positive_roots: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[int, ...], ...]
    fundamental_weights: tuple[tuple[Fraction, ...], ...]
    delta: tuple[Fraction, ...]
    prefix_weights: tuple[tuple[int, ...], ...]


def root_system(k: int) -> RootSystem:
    if k < 2:
        raise ValueError("type A_{k-1} needs k >= 2")

    def e(i, j):
        v = [0] * k
        v[i] += 1
        v[j] -= 1
        return tuple(v)

    pos = tuple(e(i, j) for i in range(k) for j in range(i + 1, k))
    simple = tuple(e(i, i + 1) for i in range(k - 1))
    fund = tuple(fundamental_weight(k, i) for i in range(1, k))
    prefix = tuple(tuple(int(j < i) for j in range(k)) for i in range(1, k))
    return RootSystem(k, pos, simple, fund, rho(k), prefix)


def weyl_orbit(v: Sequence) -> list[tuple]:
    """Distinct coordinate permutations of ``v``, sorted decreasingly."""
    return sorted(set(itertools.permutations(tuple(v))), reverse=True)


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])


def permutation_sign(perm: Sequence[int]) -> int:
    return -1 if inversions(perm) % 2 else 1


# ---------------------------------------------------------------------------
# gl normalization

def normalize_pair(lam: Sequence, beta: Sequence) -> tuple[tuple[int, ...], tuple[int, ...] | None, Fraction]:
    """Integral gl representatives of (lambda, beta).

    Both vectors are shifted by the same constant so that ``lambda_k = 0``.
    ``beta`` comes back as None when it is not in ``lambda`` plus the root
    lattice (the multiplicity is then 0).  Raises if lambda is not an
    integral dominant weight.
    """
    lam = [rat(x) for x in lam]
    beta = [rat(x) for x in beta]
    if len(lam) != len(beta):
        raise ValueError("lambda and beta have different lengths")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"lambda {tuple(map(str, lam))} is not dominant (weakly decreasing)")
    shift = -lam[-1]
    lam_gl = [x + shift for x in lam]
    if any(x.denominator != 1 for x in lam_gl):
        raise ValueError("lambda is not an integral weight")
    lam_i = tuple(int(x) for x in lam_gl)
    if sum(lam) != sum(beta):
        return lam_i, None, shift
    beta_gl = [x + shift for x in beta]
    if any(x.denominator != 1 for x in beta_gl):
        return lam_i, None, shift
    return lam_i, tuple(int(x) for x in beta_gl), shift


def lb_to_gl(l: Sequence[int], b: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...] | None]:
    """Fundamental-weight coordinates to the integral gl pair (None if off-lattice)."""
    lam = Weight.from_fundamental(l)
    beta = Weight.from_fundamental(b)
    lam_gl, beta_gl, _ = normalize_pair(lam.coords, beta.coords)
    return lam_gl, beta_gl


def in_root_lattice(l: Sequence[int], b: Sequence[int]) -> bool:
    k = len(l) + 1
    return sum((i + 1) * (x - y) for i, (x, y) in enumerate(zip(l, b))) % k == 0


def weyl_dimension(lam: Sequence) -> int:
    lam = [rat(x) for x in lam]
    k = len(lam)
    num = Fraction(1)
    for i in range(k):
        for j in range(i + 1, k):
            num *= Fraction(lam[i] - lam[j] + j - i, j - i)
    return int(num)


# ---------------------------------------------------------------------------
# subset hyperplanes beta_U = c

def subset_form(U: Iterable[int], k: int) -> tuple[int, ...]:
    """Coefficients of ``beta_U`` in the coordinates ``x = beta_1..beta_{k-1}``."""
    U = set(U)
    if k - 1 in U:
        return tuple(-1 if i not in U else 0 for i in range(k - 1))
    return tuple(1 if i in U else 0 for i in range(k - 1))


@dataclass(frozen=True, order=True)
class SubsetHyperplane:
    """``sum_{u in U} beta_u = value`` in sum-zero beta-space (0-based U)."""

    k: int
    U: tuple[int, ...]
    value: Fraction

    @classmethod
    def make(cls, k: int, U: Iterable[int], value) -> "SubsetHyperplane":
        U = tuple(sorted(U))
        Uc = tuple(i for i in range(k) if i not in U)
        value = rat(value)
        # beta_U = c is the same hyperplane as beta_{U^c} = -c
        a = (len(U), U, value)
        b = (len(Uc), Uc, -value)
        U, value = (a[1], a[2]) if a <= b else (b[1], b[2])
        return cls(k, U, value)

    @property
    def normal(self) -> tuple[int, ...]:
        return tuple(int(i in self.U) for i in range(self.k))

    def affine(self) -> tuple[tuple[int, ...], Fraction]:
        """(a, c) with the hyperplane ``a·x = c`` in x-coordinates."""
        if self.k - 1 in self.U:
            Uc = [i for i in range(self.k) if i not in self.U]
            return subset_form(Uc, self.k), -self.value
        return subset_form(self.U, self.k), self.value

    def evaluate(self, beta: Sequence) -> Fraction:
        return sum((rat(beta[u]) for u in self.U), Fraction(0)) - self.value


def to_x(beta: Sequence) -> tuple[Fraction, ...]:
    return tuple(rat(b) for b in beta[:-1])


def from_x(x: Sequence) -> tuple[Fraction, ...]:
    x = [rat(v) for v in x]
    return tuple(x) + (-sum(x),)


def _as_weight(lam) -> Weight:
    return lam if isinstance(lam, Weight) else Weight.of(lam)


def permutahedron(lam) -> Polytope:
    lam = _as_weight(lam)
    if not any(lam.coords):
        raise ValueError("the permutahedron of 0 is a point")
    return Polytope.from_vertices([to_x(v) for v in weyl_orbit(lam.coords)])


def permutahedron_facets(lam) -> list[tuple[tuple[int, ...], str, SubsetHyperplane]]:
    """Facet hyperplanes as (U, 'top'|'bottom', hyperplane), |U| <= k/2."""
    lam = _as_weight(lam)
    if not any(lam.coords):
        raise ValueError("lambda = 0 has no facets")
    k = lam.k
    c = sorted(lam.coords, reverse=True)
    orbit = [to_x(v) for v in weyl_orbit(lam.coords)]
    out, seen = [], set()
    for j in range(1, k // 2 + 1):
        top = sum(c[:j])
        bottom = sum(c[k - j:])
        for U in itertools.combinations(range(k), j):
            for side, val in (("top", top), ("bottom", bottom)):
                h = SubsetHyperplane.make(k, U, val)
                if h in seen:
                    continue
                a, cc = h.affine()
                on = [v for v in orbit if sum(x * y for x, y in zip(a, v)) == cc]
                if _affine_dim(on) == k - 2:
                    seen.add(h)
                    out.append((U, side, h))
    return out


def _affine_dim(points) -> int:
    if not points:
        return -1
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    return rank(diffs) if diffs else 0


@dataclass(frozen=True)
class WallFamily:
    """Wall conv(W·sigma(lambda)) with W = S_U x S_{U^c}."""

    sigma: tuple[int, ...]
    U: tuple[int, ...]
    V: tuple[int, ...]
    hyperplane: SubsetHyperplane
    polytope: Polytope
    interior: bool

    @property
    def normal(self) -> tuple[int, ...]:
        return tuple(int(i in self.U) for i in range(len(self.sigma)))

    @property
    def parabolic(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.U, tuple(i for i in range(len(self.sigma)) if i not in self.U)

    def vertex_set(self) -> frozenset:
        return frozenset(self.polytope.vertices)


def _wall_sigma(k, U, V):
    """A permutation sending positions V to U and V^c to U^c (0-based)."""
    Vc = [i for i in range(k) if i not in V]
    Uc = [i for i in range(k) if i not in U]
    sigma = [0] * k
    for v, u in zip(V, U):
        sigma[v] = u
    for v, u in zip(Vc, Uc):
        sigma[v] = u
    return tuple(sigma)


def dh_walls(lam, include_lower: bool = False) -> list[WallFamily]:
    """Codimension-one walls conv(W·sigma(lambda)) inside the permutahedron.

    Each wall collects the orbit points whose values at positions U are the
    values of lambda at positions V.  Walls on a facet hyperplane of the
    permutahedron are kept and flagged ``interior=False``.
    """
    lam = _as_weight(lam)
    if not lam.is_dominant():
        raise ValueError("lambda must be dominant")
    k = lam.k
    c = lam.coords
    srt = sorted(c, reverse=True)
    out: list[WallFamily] = []
    seen = set()
    for j in range(1, k // 2 + 1):
        top, bottom = sum(srt[:j]), sum(srt[k - j:])
        for U in itertools.combinations(range(k), j):
            for V in itertools.combinations(range(k), j):
                if 2 * j == k and 0 not in U:
                    continue  # (U, V) ~ (U^c, V^c)
                sigma = _wall_sigma(k, U, V)
                base = lam.permute(sigma).coords
                Uc = [i for i in range(k) if i not in U]
                pts = set()
                for pu in set(itertools.permutations([base[u] for u in U])):
                    for pc in set(itertools.permutations([base[u] for u in Uc])):
                        v = [None] * k
                        for u, x in zip(U, pu):
                            v[u] = x
                        for u, x in zip(Uc, pc):
                            v[u] = x
                        pts.add(to_x(v))
                pts = sorted(pts)
                if _affine_dim(pts) != k - 2 and not include_lower:
                    continue
                key = frozenset(pts)
                if key in seen:
                    continue
                seen.add(key)
                val = sum(c[v] for v in V)
                h = SubsetHyperplane.make(k, U, val)
                poly = Polytope.from_vertices(pts)
                out.append(WallFamily(sigma, U, V, h, poly, val not in (top, bottom)))
    return out


@dataclass
class Partition:
    lam: Weight
    regions: list[Polytope]
    pieces: list[list[int]]

    @property
    def count(self) -> int:
        return len(self.regions)


def _all_subset_planes(lam: Weight) -> list[SubsetHyperplane]:
    k = lam.k
    c = lam.coords
    planes = set()
    for j in range(1, k // 2 + 1):
        for U in itertools.combinations(range(k), j):
            for V in itertools.combinations(range(k), j):
                planes.add(SubsetHyperplane.make(k, U, sum(c[v] for v in V)))
    return sorted(planes)


def _symbolic_planes(k: int) -> list[tuple[tuple[int, ...], tuple[Fraction, ...]]]:
    """beta_U = lambda_V as (normal in x-coordinates, offset as a sum-zero form in lambda)."""
    out = set()
    for j in range(1, k // 2 + 1):
        for U in itertools.combinations(range(k), j):
            for V in itertools.combinations(range(k), j):
                off = [Fraction(int(i in V)) - Fraction(j, k) for i in range(k)]
                if k - 1 in U:
                    U = tuple(i for i in range(k) if i not in U)
                    off = [-x for x in off]
                out.add((subset_form(U, k), tuple(off)))
    return sorted(out)


@functools.lru_cache(maxsize=None)
def resonance_forms(k: int) -> tuple[tuple[int, ...], ...]:
    """Linear forms f with f(lambda) = 0 exactly when some subset planes
    beta_U = lambda_V meet in a way they do not for typical lambda.

    Each comes from a minimal linear dependency among plane normals: the
    same dependency applied to the offsets must not vanish.  Forms that
    vanish identically are forced incidences and are skipped.
    """
    planes = _symbolic_planes(k)
    n = k - 1
    forms = set()
    for size in range(2, n + 2):
        for S in itertools.combinations(planes, size):
            normals = [a for a, _ in S]
            if rank(normals) != size - 1:
                continue
            if any(rank(normals[:i] + normals[i + 1:]) != size - 1 for i in range(size)):
                continue
            (d,) = nullspace([list(col) for col in zip(*normals)], size)
            f = [sum(di * off[t] for di, (_, off) in zip(d, S)) for t in range(k)]
            if any(f):
                f = primitive(f)
                forms.add(max(f, tuple(-x for x in f)))
    return tuple(sorted(forms))


def is_generic(lam) -> bool:
    """True when no resonance form vanishes at lambda (regular, and the
    subset planes meet only as they must)."""
    lam = _as_weight(lam)
    if len(set(lam.coords)) != lam.k:
        return False
    return all(sum(a * b for a, b in zip(f, lam.coords)) for f in resonance_forms(lam.k))


def partition_permutahedron(lam, stretch: bool = False) -> Partition:
    """Connected components of the permutahedron minus its interior walls.

    The permutahedron is cut by every hyperplane beta_U = lambda_V meeting
    its interior (the boundaries of all walls lie on such hyperplanes).
    Neighbouring cells across a hyperplane are then merged unless their
    common facet lies in a wall.  The merged regions are convex; this is
    certified by comparing volumes.
    """
    lam = _as_weight(lam)
    k = lam.k
    if k > 4 and not stretch:
        raise ValueError("region enumeration beyond k = 4 needs stretch=True")
    perm = permutahedron(lam)
    walls = [w for w in dh_walls(lam) if w.interior]
    planes = []
    for h in _all_subset_planes(lam):
        a, c = h.affine()
        vals = [sum(x * y for x, y in zip(a, v)) - c for v in perm.vertices]
        if any(v > 0 for v in vals) and any(v < 0 for v in vals):
            planes.append((h, a, c))
    cells: list[tuple[Polytope, tuple[int, ...]]] = [(perm, ())]
    for h, a, c in planes:
        nxt = []
        neg_a = tuple(-x for x in a)
        for poly, sig in cells:
            vals = [sum(x * y for x, y in zip(a, v)) - c for v in poly.vertices]
            if all(v >= 0 for v in vals):
                nxt.append((poly, sig + (1,)))
            elif all(v <= 0 for v in vals):
                nxt.append((poly, sig + (-1,)))
            else:
                nxt.append((poly.intersect_halfspaces([(neg_a, -c)]), sig + (1,)))
                nxt.append((poly.intersect_halfspaces([(a, c)]), sig + (-1,)))
        cells = nxt
    index = {sig: i for i, (_, sig) in enumerate(cells)}
    parent = list(range(len(cells)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    walls_on = {}
    for w in walls:
        walls_on.setdefault(w.hyperplane, []).append(w.polytope)
    for i, (poly, sig) in enumerate(cells):
        for t, (h, a, c) in enumerate(planes):
            if sig[t] != 1:
                continue
            other = sig[:t] + (-1,) + sig[t + 1:]
            j = index.get(other)
            if j is None:
                continue
            face = [v for v in poly.vertices if sum(x * y for x, y in zip(a, v)) == c]
            n = len(face)
            centre = tuple(sum(col) / n for col in zip(*face))
            if any(wp.contains(centre) for wp in walls_on.get(h, ())):
                continue
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(len(cells)):
        groups.setdefault(find(i), []).append(i)
    regions, pieces = [], []
    for members in groups.values():
        pts = sorted({v for m in members for v in cells[m][0].vertices})
        region = Polytope.from_vertices(pts)
        if len(members) > 1:
            parts = sum((cells[m][0].volume() for m in members), Fraction(0))
            if parts != region.volume():
                raise RuntimeError("merged region is not convex")
        regions.append(region)
        pieces.append(members)
    order = sorted(range(len(regions)), key=lambda i: regions[i].vertices)
    regions = [regions[i] for i in order]
    pieces = [pieces[i] for i in order]
    return Partition(lam, regions, pieces)


def partition_volume_certificate(part: Partition) -> tuple[Fraction, Fraction]:
    total = sum((r.volume() for r in part.regions), Fraction(0))
    return total, permutahedron(part.lam).volume()


def locate_region(part: Partition, beta: Sequence) -> int:
    x = to_x(beta)
    hits = [i for i, r in enumerate(part.regions) if r.contains_in_interior(x)]
    if len(hits) != 1:
        raise ValueError("beta is not in the interior of exactly one region")
    return hits[0]


# ---------------------------------------------------------------------------
# emitters

def regions_csv(rows: Iterable[tuple[Sequence, int]]) -> str:
    lines = []
    for l, count in rows:
        lines.append(",".join(str(x) for x in l) + f",{count}")
    head = None
    if lines:
        n = len(lines[0].split(",")) - 1
        head = ",".join(f"l{i}" for i in range(1, n + 1)) + ",regions"
    return "\n".join(([head] if head else []) + lines) + "\n"


def svg_k3(lam, size: int = 360, labels: dict | None = None) -> str:
    """SVG of an sl_3 permutahedron, its walls and its regions."""
    lam = _as_weight(lam)
    if lam.k != 3:
        raise ValueError("SVG output is for k = 3")
    part = partition_permutahedron(lam)
    walls = dh_walls(lam)

    def xy(x):
        b = from_x(x)
        b1, b2, b3 = (float(v) for v in b)
        return (b1 - b2) * math.sqrt(3) / 2, -(b1 + b2 - 2 * b3) / 2

    pts = [xy(v) for v in permutahedron(lam).vertices]
    span = max(max(abs(p[0]), abs(p[1])) for p in pts) or 1.0
    scale = 0.42 * size / span

    def px(p):
        return f"{size / 2 + scale * p[0]:.3f},{size / 2 + scale * p[1]:.3f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    palette = ["#dbe9f6", "#f6e3db", "#e2f0d9", "#efe2f3", "#fbf3d5", "#d9f0ee", "#f3d9e3"]
    for i, r in enumerate(part.regions):
        poly = _ordered_polygon([xy(v) for v in r.vertices])
        out.append(f'<polygon points="{" ".join(px(p) for p in poly)}" fill="{palette[i % len(palette)]}" stroke="none"/>')
    for w in walls:
        seg = [xy(v) for v in w.polytope.vertices]
        colour = "#333" if not w.interior else "#b22"
        out.append(f'<polyline points="{" ".join(px(p) for p in seg)}" fill="none" stroke="{colour}" stroke-width="1.5"/>')
    if labels:
        for beta, text in labels.items():
            p = xy(to_x(beta))
            x, y = px(p).split(",")
            out.append(f'<text x="{x}" y="{y}" font-size="10" text-anchor="middle">{text}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _ordered_polygon(pts):
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    return sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
