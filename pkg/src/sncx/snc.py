"""Builders for dual complexes.

Three sources: declarative strata descriptions of a normal crossing
divisor, toric fans (the link of the origin), and the realization of an
arbitrary subset-closed complex as a boundary complex together with the
blowup script that replays the construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .complexes import CombinatorialComplex
from .errors import (
    DescriptorInvalid,
    MissingParent,
    NonPrimitiveRay,
    NotSubsetClosed,
    ParentIncoherent,
)
from .snf import matrix_rank
from .transforms import BlowupMove


# -- strata descriptions -----------------------------------------------------

@dataclass(frozen=True)
class Component:
    label: str
    level: int | None = None


@dataclass(frozen=True)
class Stratum:
    indices: tuple          # sorted component indices, |indices| >= 2
    label: str
    parents: dict = field(default_factory=dict)   # index -> stratum/component label


@dataclass(frozen=True)
class StrataDescription:
    """Components of a divisor plus the poset of intersection strata.

    Strata carry explicit parent pointers (for every i in the index set,
    the stratum of the smaller index set containing this one) because
    distinct strata may share their vertex set; coherence of the
    pointers is validated, never inferred.
    """

    components: tuple
    strata: tuple

    def __post_init__(self):
        labels = [c.label for c in self.components]
        if len(set(labels)) != len(labels):
            raise ParentIncoherent("component labels are not unique")
        lv = [c.level for c in self.components]
        if any(x is not None for x in lv) and any(x is None for x in lv):
            raise ParentIncoherent("either all components carry levels or none")

        by_key: dict[tuple, dict] = {}
        for i, c in enumerate(self.components):
            by_key[(i,)] = {"label": c.label}
        slabels = set(labels)
        for s in self.strata:
            idx = tuple(sorted(set(s.indices)))
            if idx != tuple(s.indices) or len(idx) < 2:
                raise ParentIncoherent(
                    f"stratum {s.label!r} needs sorted distinct indices of size >= 2")
            if any(i < 0 or i >= len(self.components) for i in idx):
                raise MissingParent(f"stratum {s.label!r} uses an unknown component")
            if s.label in slabels:
                raise ParentIncoherent(f"stratum label {s.label!r} is not unique")
            slabels.add(s.label)

        lookup: dict[str, Stratum] = {}
        for s in self.strata:
            lookup[s.label] = s
        comp_index = {c.label: i for i, c in enumerate(self.components)}

        def record_for(label, want_indices):
            if label in comp_index:
                return (comp_index[label],), None
            if label not in lookup:
                raise MissingParent(f"parent {label!r} does not exist")
            s = lookup[label]
            return tuple(s.indices), s

        for s in self.strata:
            idx = tuple(s.indices)
            if set(s.parents) != set(idx):
                raise MissingParent(
                    f"stratum {s.label!r} needs exactly one parent per index")
            for i in idx:
                want = tuple(x for x in idx if x != i)
                got, _rec = record_for(s.parents[i], want)
                if got != want:
                    raise MissingParent(
                        f"parent {s.parents[i]!r} of {s.label!r} has index set "
                        f"{got}, wanted {want}")
            # both omission orders must agree on the grandparent
            for i in idx:
                for j in idx:
                    if i == j:
                        continue
                    pi = s.parents[i]
                    pj = s.parents[j]
                    gi = self._grandparent(lookup, comp_index, pi, j)
                    gj = self._grandparent(lookup, comp_index, pj, i)
                    if gi != gj:
                        raise ParentIncoherent(
                            f"stratum {s.label!r}: omitting {i} then {j} gives "
                            f"{gi!r}, the other order gives {gj!r}")

    @staticmethod
    def _grandparent(lookup, comp_index, parent_label, drop):
        if parent_label in comp_index:
            return None     # omitting below a component leaves nothing
        p = lookup[parent_label]
        return p.parents[drop]


def dual_complex(desc: StrataDescription) -> CombinatorialComplex:
    """One vertex per component, one (|I|-1)-face per stratum of D_I."""
    levels = any(c.level is not None for c in desc.components)
    recs = []
    for c in desc.components:
        rec = {"id": c.label, "dim": 0, "facets": []}
        if levels:
            rec["level"] = c.level
        recs.append(rec)
    for s in desc.strata:
        idx = tuple(s.indices)
        delta = [s.parents[i] for i in idx]
        rec = {"id": s.label, "dim": len(idx) - 1, "facets": delta,
               "delta_order": delta}
        if levels:
            rec["level"] = max(desc.components[i].level for i in idx)
        recs.append(rec)
    return CombinatorialComplex(recs)


def strata_from_json(doc: dict) -> StrataDescription:
    comps = tuple(Component(c["label"], c.get("level"))
                  for c in doc.get("components", ()))
    strata = tuple(Stratum(tuple(s["indices"]), s["label"],
                           {int(k): v for k, v in s.get("parents", {}).items()})
                   for s in doc.get("strata", ()))
    return StrataDescription(comps, strata)


# -- toric fans ---------------------------------------------------------------

@dataclass(frozen=True)
class Fan:
    """Rays as primitive integer vectors and cones as ray index sets.

    Cones must come with their faces; subsets of simplicial cones are
    taken as faces implicitly, non-simplicial cones contribute exactly
    the subsets that are listed.  Completeness is never inferred.
    """

    rays: tuple
    cones: tuple

    def __post_init__(self):
        for r in self.rays:
            if not r or all(x == 0 for x in r):
                raise NonPrimitiveRay(f"zero ray {r!r}")
            g = 0
            for x in r:
                g = math.gcd(g, abs(x))
            if g != 1:
                raise NonPrimitiveRay(f"ray {r!r} is not primitive")
        if len(set(self.rays)) != len(self.rays):
            raise NonPrimitiveRay("duplicate rays")
        for cone in self.cones:
            for i in cone:
                if i < 0 or i >= len(self.rays):
                    raise DescriptorInvalid(f"cone {sorted(cone)} uses unknown ray {i}")

    def is_simplicial_cone(self, cone) -> bool:
        idx = sorted(cone)
        return matrix_rank([list(self.rays[i]) for i in idx]) == len(idx)


def fan_from_json(doc: dict) -> Fan:
    return Fan(tuple(tuple(int(x) for x in r) for r in doc["rays"]),
               tuple(frozenset(c) for c in doc["cones"]))


def toric_link(fan: Fan) -> CombinatorialComplex:
    """The link of the origin: nonzero cones ordered by the face relation.

    Carries a Delta-structure exactly when every cone is simplicial, in
    which case the vertex order of a face follows the ray indices.
    """
    cones = set()
    all_simplicial = True
    for cone in fan.cones:
        cset = frozenset(cone)
        if not cset:
            continue
        if fan.is_simplicial_cone(cset):
            idx = sorted(cset)
            n = len(idx)
            for mask in range(1, 1 << n):
                cones.add(frozenset(idx[i] for i in range(n) if mask >> i & 1))
        else:
            all_simplicial = False
            cones.add(cset)

    ordered = sorted(cones, key=lambda c: (len(c), tuple(sorted(c))))
    height: dict[frozenset, int] = {}
    for c in ordered:
        below = [height[b] for b in cones
                 if b < c and len(b) < len(c)]
        height[c] = max(below, default=-1) + 1

    def cid(c):
        return "-".join(str(i) for i in sorted(c))

    recs = []
    for c in ordered:
        h = height[c]
        covers = [cid(b) for b in cones if b < c and height[b] == h - 1]
        rec = {"id": cid(c), "dim": h, "facets": covers}
        if all_simplicial and h >= 1:
            idx = sorted(c)
            rec["delta_order"] = [cid(frozenset(x for x in idx if x != v))
                                  for v in idx]
        recs.append(rec)
    return CombinatorialComplex(recs)


def fan_ray_involution(fan: Fan, ray_map: dict) -> dict:
    """Face pairing of the link induced by a permutation of ray indices."""
    def cid(c):
        return "-".join(str(i) for i in sorted(c))

    link = toric_link(fan)
    out = {}
    for f in link.face_ids:
        idx = [int(x) for x in f.split("-")]
        img = cid(frozenset(ray_map[i] for i in idx))
        if img not in link.face_ids:
            raise DescriptorInvalid(f"image of cone {f!r} is not in the fan")
        out[f] = img
    return out


def antipodal_ray_map(fan: Fan) -> dict:
    """Index map sending each ray to its negative (must exist in the fan)."""
    index = {r: i for i, r in enumerate(fan.rays)}
    out = {}
    for i, r in enumerate(fan.rays):
        neg = tuple(-x for x in r)
        if neg not in index:
            raise DescriptorInvalid(f"ray {r!r} has no antipode in the fan")
        out[i] = index[neg]
    return out


# -- boundary realization -----------------------------------------------------

def _subset_id(face) -> str:
    return ".".join(str(x) for x in sorted(face))


def simplicial_complex_from_subsets(faces) -> CombinatorialComplex:
    """A subset-closed family of finite sets as a Delta-complex."""
    sets = {frozenset(f) for f in faces}
    recs = []
    for f in sorted(sets, key=lambda s: (len(s), tuple(sorted(s)))):
        items = sorted(f)
        k = len(items) - 1
        rec = {"id": _subset_id(f), "dim": k}
        if k == 0:
            rec["facets"] = []
        else:
            d = [_subset_id(f - {v}) for v in items]
            rec["facets"] = d
            rec["delta_order"] = d
        recs.append(rec)
    return CombinatorialComplex(recs)


def realize_boundary(faces, n: int | None = None):
    """Realize a subset-closed complex on {0..n} as a boundary complex.

    Returns ``(complex, script)``: the barycentric subdivision the
    construction produces, and the dimension-ordered script of vertex
    attachments (one per blown-up subspace) whose replay from the empty
    complex rebuilds it face for face.  ``n`` defaults to the largest
    vertex used; pass it explicitly when the ambient set is larger.
    """
    sets = {frozenset(f) for f in faces}
    if not sets:
        return CombinatorialComplex([]), ()
    if frozenset() in sets:
        raise NotSubsetClosed("the empty set is not a face")
    ground = set()
    for f in sets:
        ground |= f
    if any(v < 0 for v in ground):
        raise NotSubsetClosed("vertices must be non-negative integers")
    if n is None:
        n = max(ground)
    elif max(ground) > n:
        raise NotSubsetClosed(f"a face uses a vertex above {n}")
    full = frozenset(range(n + 1))
    for f in sets:
        if f == full:
            raise NotSubsetClosed(
                f"face {sorted(f)} is the whole ground set, not a proper subset")
        for v in f:
            if f - {v} and f - {v} not in sets:
                raise NotSubsetClosed(
                    f"face {sorted(f)} lacks its subset {sorted(f - {v})}")

    kcx = simplicial_complex_from_subsets(sets)
    barycentric = kcx.order_complex()

    script = []
    done: list[frozenset] = []
    for f in sorted(sets, key=lambda s: (len(s), tuple(sorted(s)))):
        smaller = [g for g in done if g < f]
        # chains among the strictly smaller processed subsets
        chains = _all_chains(smaller)
        attach = tuple("<".join(_subset_id(g) for g in ch) for ch in chains)
        script.append(BlowupMove(case="attach", new_vertex=_subset_id(f),
                                 attach=attach))
        done.append(f)
    return barycentric, tuple(script)


def _all_chains(sets):
    sets = sorted(sets, key=lambda s: (len(s), tuple(sorted(s))))
    chains = [(s,) for s in sets]
    frontier = list(chains)
    while frontier:
        nxt = []
        for ch in frontier:
            for s in sets:
                if s < ch[0]:
                    nxt.append((s,) + ch)
        chains.extend(nxt)
        frontier = nxt
    return chains
