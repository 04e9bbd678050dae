"""Shared deterministic fixture builders for the test suite."""

from __future__ import annotations

import random

from sncx import CombinatorialComplex, simplicial_complex_from_subsets
from sncx.newton import LatticePolytope


def close_under_subsets(faces):
    closed = set()
    for f in faces:
        items = sorted(f)
        for mask in range(1, 1 << len(items)):
            closed.add(frozenset(items[i] for i in range(len(items))
                                 if mask >> i & 1))
    return closed


def random_simplicial_complex(rng: random.Random, max_verts=6, max_facets=4,
                              max_dim=2) -> CombinatorialComplex:
    nv = rng.randint(2, max_verts)
    maximal = []
    for _ in range(rng.randint(1, max_facets)):
        size = rng.randint(1, min(max_dim + 1, nv))
        maximal.append(frozenset(rng.sample(range(nv), size)))
    return simplicial_complex_from_subsets(close_under_subsets(maximal))


def with_random_levels(rng: random.Random, c: CombinatorialComplex,
                       max_level=3) -> CombinatorialComplex:
    vlevel = {v: rng.randint(1, max_level) for v in c.faces_of_dim(0)}
    recs = []
    for f in c.face_ids:
        rec = c._record(f)
        rec["level"] = max(vlevel[v] for v in c.vertices_of(f))
        recs.append(rec)
    return CombinatorialComplex(recs)


def random_subset_closed(rng: random.Random, ground=5):
    maximal = []
    for _ in range(rng.randint(1, 4)):
        size = rng.randint(1, ground - 1)
        maximal.append(frozenset(rng.sample(range(ground), size)))
    return close_under_subsets(maximal)


def random_support(rng: random.Random, dim=3, max_points=8, coord=6):
    k = rng.randint(1, max_points)
    pts = set()
    while len(pts) < k:
        pts.add(tuple(rng.randint(0, coord) for _ in range(dim)))
    return sorted(pts)


def random_lattice_polygon(rng: random.Random, coord=6) -> LatticePolytope:
    while True:
        k = rng.randint(3, 7)
        pts = set()
        while len(pts) < k:
            pts.add((rng.randint(0, coord), rng.randint(0, coord)))
        try:
            return LatticePolytope(sorted(pts))
        except Exception:
            continue
