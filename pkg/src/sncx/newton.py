"""Newton polyhedra, their normal fans, and resolution complex models.

The pipeline: a monomial support spans the polyhedron (convex hull plus
the positive orthant), whose inner normal fan subdivides the orthant and
hence the standard simplex; the interior part of that subdivision,
puckered along the cells dual to compact edges by their lattice lengths,
is the homotopy model of the resolution complex of the singularity, and
its reduced homology carries the weight-zero labels.

All geometry is exact: integer inputs, rational elimination, no hulls
in floating point.  Facets are enumerated by brute force over small
point subsets plus coordinate directions, the face lattice by
saturated facet-set intersections; fine at desk scale (ambient
dimension at most four).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .complexes import CombinatorialComplex
from .errors import (
    DimensionTooHigh,
    EmptyInput,
    NotFullDimensional,
)
from .homology import homology, wedge_certificate
from .transforms import pucker

MAX_AMBIENT = 4


# -- exact linear algebra -----------------------------------------------------

def _rank(rows) -> int:
    mat = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    pivot_col = 0
    r = 0
    while r < len(mat) and pivot_col < cols:
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][pivot_col] != 0:
                pivot = i
                break
        if pivot is None:
            pivot_col += 1
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][pivot_col]
        for i in range(r + 1, len(mat)):
            f = mat[i][pivot_col] / pv
            if f:
                for j in range(pivot_col, cols):
                    mat[i][j] -= f * mat[r][j]
        r += 1
        rank += 1
        pivot_col += 1
    return rank


def _nullspace_1d(rows, dim):
    """A primitive integer spanning vector of the kernel, if it is a line."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(dim):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c] / pv
                for j in range(c, dim):
                    mat[i][j] -= f * mat[r][j]
        pivots.append(c)
        r += 1
    free = [c for c in range(dim) if c not in pivots]
    if len(free) != 1:
        return None
    fc = free[0]
    vec = [Fraction(0)] * dim
    vec[fc] = Fraction(1)
    for i, c in enumerate(pivots):
        vec[c] = -mat[i][fc] / mat[i][c]
    denom = 1
    for x in vec:
        denom = denom * x.denominator // math.gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    return tuple(x // g for x in ints)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# -- face census ---------------------------------------------------------------

@dataclass(frozen=True)
class PolyFacet:
    normal: tuple
    offset: int
    points: frozenset       # indices of input points lying on the facet
    compact: bool


@dataclass(frozen=True)
class PolyFace:
    points: tuple           # sorted indices of input points on the face
    recession: tuple        # coordinate directions contained in the face
    facets: frozenset       # indices of facets containing the face
    dim: int
    compact: bool


def _affine_dim(points, onset, recession):
    if not onset:
        return -1
    base = points[min(onset)]
    rows = [tuple(points[i][j] - base[j] for j in range(len(base)))
            for i in sorted(onset) if i != min(onset)]
    for j in recession:
        rows.append(tuple(1 if t == j else 0 for t in range(len(base))))
    if not rows:
        return 0
    return _rank(rows)


def _facet_census(points, orthant: bool):
    d = len(points[0])
    npts = len(points)
    found = {}
    subsets = []
    if orthant:
        for k in range(1, d + 1):
            for pts in combinations(range(npts), k):
                for rec in combinations(range(d), d - k):
                    subsets.append((pts, rec))
    else:
        for pts in combinations(range(npts), d):
            subsets.append((pts, ()))
    for pts, rec in subsets:
        base = points[pts[0]]
        rows = [tuple(points[i][j] - base[j] for j in range(d)) for i in pts[1:]]
        for j in rec:
            rows.append(tuple(1 if t == j else 0 for t in range(d)))
        if len(rows) != d - 1:
            continue
        w = _nullspace_1d(rows, d)
        if w is None:
            continue
        for cand in (w, tuple(-x for x in w)):
            if orthant and any(x < 0 for x in cand):
                continue
            if cand in found:
                continue
            m = min(_dot(cand, p) for p in points)
            onset = frozenset(i for i, p in enumerate(points)
                              if _dot(cand, p) == m)
            frec = tuple(j for j in range(d) if cand[j] == 0) if orthant else ()
            if _affine_dim(points, onset, frec) == d - 1:
                found[cand] = PolyFacet(cand, m, onset, all(x > 0 for x in cand)
                                        if orthant else True)
    facets = sorted(found.values(), key=lambda f: f.normal)
    return facets


def _face_lattice(points, facets, orthant: bool):
    d = len(points[0])

    def saturate(pset, rec):
        s = frozenset(i for i, f in enumerate(facets)
                      if pset <= f.points and
                      all(f.normal[j] == 0 for j in rec))
        return s

    def build(pset, rec):
        s = saturate(pset, rec)
        dim = _affine_dim(points, pset, rec)
        compact = not rec
        return PolyFace(tuple(sorted(pset)), tuple(rec), s, dim, compact)

    by_key = {}
    queue = []
    for i, f in enumerate(facets):
        rec = tuple(j for j in range(d) if f.normal[j] == 0) if orthant else ()
        face = build(f.points, rec)
        key = (face.points, face.recession)
        if key not in by_key:
            by_key[key] = face
            queue.append(face)
    idx = 0
    while idx < len(queue):
        a = queue[idx]
        idx += 1
        for b in list(by_key.values()):
            pset = frozenset(a.points) & frozenset(b.points)
            if not pset:
                continue
            rec = tuple(sorted(set(a.recession) & set(b.recession)))
            key = (tuple(sorted(pset)), rec)
            if key in by_key:
                continue
            face = build(pset, rec)
            key = (face.points, face.recession)
            if key not in by_key:
                by_key[key] = face
                queue.append(face)
    faces = sorted(by_key.values(), key=lambda f: (f.dim, f.points, f.recession))
    return faces


@dataclass(frozen=True)
class CompactEdge:
    endpoints: tuple        # two input point indices (the edge's vertices)
    length: int             # lattice length, the gcd of the differences
    face_index: int


class NewtonPolyhedron:
    """Exact face census of conv(points) + positive orthant."""

    def __init__(self, points):
        pts = []
        seen = set()
        for p in points:
            t = tuple(int(x) for x in p)
            if any(x < 0 for x in t):
                raise ValueError(f"exponent vector {t} has a negative entry")
            if t not in seen:
                seen.add(t)
                pts.append(t)
        if not pts:
            raise EmptyInput("no exponent vectors")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError("exponent vectors of mixed lengths")
        if d > MAX_AMBIENT:
            raise DimensionTooHigh(f"ambient dimension {d} exceeds {MAX_AMBIENT}")
        self.points = tuple(pts)
        self.ambient = d
        self.facets = tuple(_facet_census(self.points, orthant=True))
        self.faces = tuple(_face_lattice(self.points, self.facets, orthant=True))
        self.vertices = tuple(f.points[0] for f in self.faces if f.dim == 0)
        edges = []
        for i, f in enumerate(self.faces):
            if f.dim == 1 and f.compact:
                ends = self._edge_endpoints(f)
                diff = tuple(self.points[ends[1]][j] - self.points[ends[0]][j]
                             for j in range(d))
                g = 0
                for x in diff:
                    g = math.gcd(g, abs(x))
                edges.append(CompactEdge(ends, g, i))
        self.compact_edges = tuple(edges)
        self._validate()

    def _edge_endpoints(self, face):
        pts = [self.points[i] for i in face.points]
        base = pts[0]
        direction = next(tuple(q[j] - base[j] for j in range(self.ambient))
                         for q in pts[1:] if q != base)
        keyed = sorted(face.points,
                       key=lambda i: _dot(self.points[i], direction))
        return (keyed[0], keyed[-1])

    def _validate(self):
        d = self.ambient
        for v in self.vertices:
            on = sum(1 for f in self.facets if v in f.points)
            if on < d:
                raise NotFullDimensional(
                    f"vertex {self.points[v]} lies on {on} < {d} facets; "
                    "the polyhedron is not full-dimensional")
        # membership spot checks: the points and their orthant translates
        for p in self.points:
            for f in self.facets:
                if _dot(f.normal, p) < f.offset:
                    raise AssertionError("facet census lost an input point")
                for j in range(d):
                    q = tuple(p[t] + (1 if t == j else 0) for t in range(d))
                    if _dot(f.normal, q) < f.offset:
                        raise AssertionError("orthant recession violated")
        # the two compactness criteria must agree
        for face in self.faces:
            total = [0] * d
            for i in face.facets:
                for j in range(d):
                    total[j] += self.facets[i].normal[j]
            strict = all(x > 0 for x in total)
            if strict != face.compact:
                raise AssertionError(
                    f"compactness criteria disagree on face {face.points}")

    def face_interior(self, face: PolyFace) -> bool:
        """Closed-cell interiority: every facet containing the face is compact."""
        return all(self.facets[i].compact for i in face.facets)

    def vertex_interior(self, v: int) -> bool:
        return all(f.compact for f in self.facets if v in f.points)


def newton_polyhedron(points) -> NewtonPolyhedron:
    """Census the polyhedron spanned by a monomial support."""
    return NewtonPolyhedron(points)


# -- the induced subdivision of the simplex ------------------------------------

@dataclass(frozen=True)
class SimplexCell:
    """One cone of the inner normal fan, seen as a cell of the subdivision."""

    id: str
    dim: int                # cell dimension (cone dimension minus one)
    carrier: PolyFace
    interior: bool


class SubdividedSimplex:
    """The poset of nonzero cones of the inner normal fan.

    Cells correspond to proper faces of the polyhedron with reversed
    order; a cell is interior exactly when its closed cone meets the
    orthant boundary only at zero, i.e. when every facet containing the
    carrier face is compact.
    """

    def __init__(self, np_: NewtonPolyhedron):
        self.polyhedron = np_
        d = np_.ambient
        cells = []
        for face in np_.faces:
            cid = "g" + ".".join(str(i) for i in face.points)
            if face.recession:
                cid += "|r" + ".".join(str(j) for j in face.recession)
            cells.append(SimplexCell(cid, d - face.dim - 1, face,
                                     np_.face_interior(face)))
        self.cells = tuple(cells)
        self._by_key = {(c.carrier.points, c.carrier.recession): c
                        for c in cells}

    def covering(self, cell: SimplexCell) -> list:
        """Cells one dimension down: carriers one dimension up."""
        out = []
        for other in self.cells:
            if other.dim != cell.dim - 1:
                continue
            if other.carrier.facets < cell.carrier.facets:
                out.append(other)
        return out

    def to_complex(self, interior_only: bool = False,
                   nonmaximal_only: bool = False) -> CombinatorialComplex:
        keep = []
        for c in self.cells:
            if interior_only and not c.interior:
                continue
            if nonmaximal_only and c.carrier.dim < 1:
                continue
            keep.append(c)
        keep_ids = {c.id for c in keep}
        recs = []
        for c in keep:
            covers = [o.id for o in self.covering(c) if o.id in keep_ids]
            recs.append({"id": c.id, "dim": c.dim, "facets": covers})
        return CombinatorialComplex(recs)


def normal_fan(np_: NewtonPolyhedron) -> SubdividedSimplex:
    """The inner normal fan as a subdivision of the standard simplex."""
    ss = SubdividedSimplex(np_)
    d = np_.ambient
    full = [c for c in ss.cells if c.dim == d - 1]
    if {c.carrier.points for c in full} != {(v,) for v in np_.vertices}:
        raise AssertionError("full-dimensional cones must match the vertices")
    codim1 = [c for c in ss.cells if c.dim == d - 2]
    if len(codim1) != sum(1 for f in np_.faces if f.dim == 1):
        raise AssertionError("codimension-one cones must match the edges")
    return ss


def interior_complex(ss: SubdividedSimplex) -> CombinatorialComplex:
    """The union of the nonmaximal cells interior to the simplex."""
    return ss.to_complex(interior_only=True, nonmaximal_only=True)


def resolution_complex(np_: NewtonPolyhedron) -> CombinatorialComplex:
    """Homotopy model of the resolution complex of the singularity.

    The interior subdivision complex, puckered along each interior cell
    dual to a compact edge by that edge's lattice length.  Normality of
    the singularity is the caller's hypothesis.
    """
    if np_.ambient < 2:
        raise NotFullDimensional("need ambient dimension at least 2")
    ss = normal_fan(np_)
    s0 = interior_complex(ss)
    lengths = {e.face_index: e.length for e in np_.compact_edges}
    cur = s0
    for cell in ss.cells:
        if not cell.interior or cell.carrier.dim != 1:
            continue
        face_idx = ss.polyhedron.faces.index(cell.carrier)
        ell = lengths.get(face_idx)
        if ell is None or ell <= 1:
            continue
        cur = pucker(cur, cell.id, ell)
    return cur


def predicted_sphere_count(np_: NewtonPolyhedron, variant: str) -> int:
    """Two readings of the sphere-count formula.

    ``literal``: vertices on no unbounded facet, plus lattice length
    minus one summed over all compact edges.  ``interior``: the same
    vertex count, plus the edge sum restricted to edges all of whose
    containing facets are compact (the edges that actually contribute a
    puckered cell to the interior complex).  The two disagree whenever a
    compact edge touches the simplex boundary.
    """
    if variant not in ("literal", "interior"):
        raise ValueError(f"unknown variant {variant!r}")
    vertex_term = sum(1 for v in np_.vertices if np_.vertex_interior(v))
    if variant == "literal":
        edge_term = sum(e.length - 1 for e in np_.compact_edges)
    else:
        edge_term = sum(e.length - 1 for e in np_.compact_edges
                        if np_.face_interior(np_.faces[e.face_index]))
    return vertex_term + edge_term


def census_report(np_: NewtonPolyhedron) -> dict:
    """The intermediate censuses, for auditing a pipeline run."""
    ss = SubdividedSimplex(np_)
    return {
        "points": [list(p) for p in np_.points],
        "vertices": [list(np_.points[v]) for v in np_.vertices],
        "facets": [{"normal": list(f.normal), "offset": f.offset,
                    "compact": f.compact} for f in np_.facets],
        "compact_edges": [{"endpoints": [list(np_.points[e.endpoints[0]]),
                                         list(np_.points[e.endpoints[1]])],
                           "length": e.length} for e in np_.compact_edges],
        "interior_cells": [{"id": c.id, "dim": c.dim,
                            "carrier_dim": c.carrier.dim}
                           for c in ss.cells if c.interior],
    }


def w0_report(np_: NewtonPolyhedron) -> dict:
    """Bundle the resolution homology with both predicted counts.

    The report flags when the two formula variants disagree instead of
    deciding between them, relabels the reduced cohomology ranks as the
    weight-zero pieces, and carries the intermediate censuses.
    """
    n = np_.ambient - 1
    model = resolution_complex(np_)
    h = homology(model, reduced=True)
    lit = predicted_sphere_count(np_, "literal")
    intr = predicted_sphere_count(np_, "interior")
    cert = wedge_certificate(model, n - 1) if n >= 1 else None
    w0 = {str(k): h.betti(k - 1) for k in range(1, n + 1)}
    return {
        "dimension": n,
        "f_vector": list(model.f_vector()),
        "resolution_homology": h.as_json(),
        "predicted": {"literal": lit, "interior": intr},
        "variants_agree": lit == intr,
        "computed_top_count": h.betti(n - 1),
        "wedge_certificate": None if cert is None else
            {"status": cert.status, "count": cert.count, "detail": cert.detail},
        "weight_zero_reduced_cohomology": w0,
        "census": census_report(np_),
    }


# -- boundary complexes of nondegenerate torus hypersurfaces -------------------

class LatticePolytope:
    """Exact face census of a full-dimensional lattice polytope."""

    def __init__(self, points):
        pts = []
        seen = set()
        for p in points:
            t = tuple(int(x) for x in p)
            if t not in seen:
                seen.add(t)
                pts.append(t)
        if not pts:
            raise EmptyInput("no lattice points")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError("lattice points of mixed lengths")
        if d > MAX_AMBIENT:
            raise DimensionTooHigh(f"ambient dimension {d} exceeds {MAX_AMBIENT}")
        if d < 2:
            raise NotFullDimensional("need a polytope of dimension at least 2")
        if _affine_dim(pts, frozenset(range(len(pts))), ()) != d:
            raise NotFullDimensional("the points do not span the ambient space")
        self.points = tuple(pts)
        self.ambient = d
        self.facets = tuple(_facet_census(self.points, orthant=False))
        self.faces = tuple(_face_lattice(self.points, self.facets, orthant=False))

    def edge_length(self, face: PolyFace) -> int:
        pts = [self.points[i] for i in face.points]
        base = pts[0]
        direction = next(tuple(q[j] - base[j] for j in range(self.ambient))
                         for q in pts[1:] if q != base)
        keyed = sorted(face.points, key=lambda i: _dot(self.points[i], direction))
        lo, hi = keyed[0], keyed[-1]
        diff = tuple(self.points[hi][j] - self.points[lo][j]
                     for j in range(self.ambient))
        g = 0
        for x in diff:
            g = math.gcd(g, abs(x))
        return g


def torus_hypersurface_boundary_complex(points, multiplicities=None):
    """Boundary complex model for a nondegenerate hypersurface.

    The link of the origin in the n-skeleton of the normal fan of the
    polytope (n = dim P - 1), puckered at each maximal cell by the
    lattice length of the dual edge of P.  ``multiplicities`` overrides
    the lattice lengths per edge id for user-supplied intersection data.
    """
    P = points if isinstance(points, LatticePolytope) else LatticePolytope(points)
    d = P.ambient

    def cell_id(face):
        return "g" + ".".join(str(i) for i in face.points)

    cells = [f for f in P.faces if f.dim >= 1 and f.dim < d]
    ids = {(f.points, f.recession): cell_id(f) for f in cells}
    recs = []
    for f in cells:
        cdim = (d - f.dim) - 1
        covers = [ids[(g.points, g.recession)] for g in cells
                  if g.dim == f.dim + 1 and g.facets < f.facets]
        recs.append({"id": cell_id(f), "dim": cdim, "facets": covers})
    link = CombinatorialComplex(recs)

    cur = link
    for f in cells:
        if f.dim != 1:
            continue
        cid = cell_id(f)
        ell = P.edge_length(f)
        if multiplicities and cid in multiplicities:
            ell = int(multiplicities[cid])
        if ell > 1:
            cur = pucker(cur, cid, ell)
    return cur
