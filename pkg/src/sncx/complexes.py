"""Finite graded face posets modeling regular CW complexes.

A :class:`CombinatorialComplex` stores faces with dimensions, the
codimension-one covering relation, an optional Delta-structure (per
k-face an ordered list of its k+1 facets, facet i omitting vertex i)
and an optional filtration by positive integer levels.

Face posets rather than vertex-set simplicial complexes: dual complexes
of divisors routinely carry several faces on one vertex set, so a face
is identified by an opaque id, never by its vertices.  All operations
are pure and return new complexes; instances are immutable by
convention and safe to share.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import (
    BadDeltaStructure,
    DanglingFace,
    DuplicateFace,
    GradingViolation,
    HasFixedFace,
    LevelNotDownwardClosed,
    MissingDeltaStructure,
    NoFiltration,
    NoSuchFace,
    NotAVertex,
    NotInvolution,
    QuotientNotRegular,
)

FaceId = str


def _dedup_ids(proposals: Iterable[str], taken: set[str] | None = None) -> list[str]:
    """Make proposed ids unique, deterministically, by suffixing '~k'."""
    seen = set(taken) if taken else set()
    out = []
    for p in proposals:
        q = p
        k = 1
        while q in seen:
            k += 1
            q = f"{p}~{k}"
        seen.add(q)
        out.append(q)
    return out


class CombinatorialComplex:
    """A finite graded face poset, optionally Delta-structured and filtered.

    Construct from an iterable of face records, each a mapping with keys

    - ``id``: unique string
    - ``dim``: non-negative integer
    - ``facets``: ids of the codimension-one faces (empty for vertices)
    - ``label``: optional display string (defaults to the id)
    - ``delta_order``: optional ordered facet list (Delta-structure)
    - ``level``: optional positive integer (filtration level)

    All invariants are checked: grading of the covering relation,
    downward closure to vertices, the simplicial facet identity and
    vertex distinctness when a Delta-structure is claimed, and downward
    closure of levels.  Faces are kept in a canonical order sorted by
    (dimension, label, insertion index), which makes every derived
    output byte-deterministic.
    """

    __slots__ = ("_order", "_index", "_dims", "_labels", "_cov", "_delta",
                 "_levels", "_verts")

    def __init__(self, faces: Iterable[Mapping]):
        records = [dict(r) for r in faces]
        dims: dict[str, int] = {}
        labels: dict[str, str] = {}
        cov_raw: dict[str, tuple] = {}
        delta_raw: dict[str, tuple] = {}
        levels_raw: dict[str, int] = {}
        any_delta = False
        any_level = False

        for pos, rec in enumerate(records):
            fid = rec.get("id")
            if not isinstance(fid, str) or not fid:
                raise DuplicateFace(f"face record {pos} has no usable id")
            if fid in dims:
                raise DuplicateFace(f"duplicate face id {fid!r}")
            dim = rec.get("dim")
            if not isinstance(dim, int) or dim < 0:
                raise GradingViolation(f"face {fid!r} has invalid dim {dim!r}")
            dims[fid] = dim
            labels[fid] = str(rec.get("label", fid))
            cov_raw[fid] = tuple(rec.get("facets", ()))
            if rec.get("delta_order") is not None:
                any_delta = True
                delta_raw[fid] = tuple(rec["delta_order"])
            if rec.get("level") is not None:
                any_level = True
                lv = rec["level"]
                if not isinstance(lv, int) or lv < 1:
                    raise LevelNotDownwardClosed(
                        f"face {fid!r} has invalid level {lv!r}; levels start at 1")
                levels_raw[fid] = lv

        # covering: existence and grading
        for fid, facets in cov_raw.items():
            k = dims[fid]
            for g in facets:
                if g not in dims:
                    raise DanglingFace(f"face {fid!r} covers unknown face {g!r}")
                if dims[g] != k - 1:
                    raise GradingViolation(
                        f"face {fid!r} (dim {k}) covers {g!r} of dim {dims[g]}")
            if k >= 1 and not facets:
                raise GradingViolation(
                    f"face {fid!r} has dim {k} but no codimension-one faces")
            if k == 0 and facets:
                raise GradingViolation(f"vertex {fid!r} covers faces")

        # canonical ordering: (dim, label, insertion index)
        insertion = {rec["id"]: pos for pos, rec in enumerate(records)}
        order = tuple(sorted(dims, key=lambda f: (dims[f], labels[f], insertion[f])))
        index = {f: i for i, f in enumerate(order)}

        cov = {f: tuple(sorted(set(cov_raw[f]), key=index.__getitem__))
               for f in order}

        delta = None
        if any_delta:
            for f in order:
                if dims[f] >= 1 and f not in delta_raw:
                    raise BadDeltaStructure(
                        f"face {f!r} lacks delta_order while the complex claims one")
            delta = {f: delta_raw.get(f, ()) for f in order}
            for f in order:
                if dims[f] == 0:
                    delta[f] = ()
        elif order and all(d == 0 for d in dims.values()):
            # a set of points is trivially Delta-structured
            delta = {f: () for f in order}

        levels = None
        if any_level:
            for f in order:
                if f not in levels_raw:
                    raise LevelNotDownwardClosed(
                        f"face {f!r} lacks a level while the complex is filtered")
            levels = dict(levels_raw)
            for f in order:
                for g in cov[f]:
                    if levels[g] > levels[f]:
                        raise LevelNotDownwardClosed(
                            f"face {f!r} at level {levels[f]} covers {g!r} "
                            f"at level {levels[g]}")

        self._order = order
        self._index = index
        self._dims = dims
        self._labels = labels
        self._cov = cov
        self._delta = delta
        self._levels = levels
        self._verts: dict[str, tuple] = {}

        if delta is not None:
            self._validate_delta()

    # -- validation helpers --------------------------------------------

    def _validate_delta(self):
        delta = self._delta
        dims = self._dims
        for f in self._order:
            k = dims[f]
            if k == 0:
                continue
            d = delta[f]
            if len(d) != k + 1:
                raise BadDeltaStructure(
                    f"face {f!r} of dim {k} has {len(d)} delta facets, wants {k + 1}")
            if len(set(d)) != k + 1:
                raise BadDeltaStructure(
                    f"face {f!r} repeats a facet in its delta_order")
            if set(d) != set(self._cov[f]):
                raise BadDeltaStructure(
                    f"face {f!r}: delta_order disagrees with its covering set")
        # simplicial facet identity, pairwise: omitting vertex i then j
        # (j < i) equals omitting j then i-1.
        for f in self._order:
            k = dims[f]
            if k < 2:
                continue
            d = delta[f]
            for i in range(k + 1):
                for j in range(i):
                    if delta[d[i]][j] != delta[d[j]][i - 1]:
                        raise BadDeltaStructure(
                            f"face {f!r} violates the facet identity at ({i},{j})")
        for f in self._order:
            vs = self.vertices_of(f)
            if len(set(vs)) != len(vs):
                raise BadDeltaStructure(
                    f"face {f!r} has repeated vertices {vs}")

    # -- basic accessors ------------------------------------------------

    @property
    def face_ids(self) -> tuple:
        return self._order

    @property
    def has_delta(self) -> bool:
        return self._delta is not None or not self._order

    @property
    def has_levels(self) -> bool:
        return self._levels is not None

    @property
    def is_empty(self) -> bool:
        return not self._order

    @property
    def dimension(self) -> int:
        """Top face dimension, -1 for the empty complex."""
        return max(self._dims.values(), default=-1)

    def dim(self, f: FaceId) -> int:
        self._check(f)
        return self._dims[f]

    def label(self, f: FaceId) -> str:
        self._check(f)
        return self._labels[f]

    def facets(self, f: FaceId) -> tuple:
        """The codimension-one faces covered by ``f`` (canonically sorted)."""
        self._check(f)
        return self._cov[f]

    def delta_order(self, f: FaceId) -> tuple:
        self._check(f)
        if self._delta is None:
            raise MissingDeltaStructure("complex has no delta structure")
        return self._delta[f]

    def level(self, f: FaceId) -> int:
        self._check(f)
        if self._levels is None:
            raise NoFiltration("complex has no filtration levels")
        return self._levels[f]

    def max_level(self) -> int:
        if self._levels is None:
            raise NoFiltration("complex has no filtration levels")
        return max(self._levels.values(), default=0)

    def _check(self, f):
        if f not in self._dims:
            raise NoSuchFace(f"no face {f!r}")

    def faces_of_dim(self, k: int) -> tuple:
        return tuple(f for f in self._order if self._dims[f] == k)

    def f_vector(self) -> tuple:
        top = self.dimension
        if top < 0:
            return ()
        counts = [0] * (top + 1)
        for f in self._order:
            counts[self._dims[f]] += 1
        return tuple(counts)

    def euler_characteristic(self) -> int:
        chi = 0
        for f in self._order:
            chi += -1 if self._dims[f] % 2 else 1
        return chi

    def to_records(self) -> list[dict]:
        """Face records in canonical order; inverse of the constructor."""
        out = []
        for f in self._order:
            rec = {"id": f, "dim": self._dims[f], "facets": list(self._cov[f])}
            if self._labels[f] != f:
                rec["label"] = self._labels[f]
            if self._delta is not None and self._dims[f] >= 1:
                rec["delta_order"] = list(self._delta[f])
            if self._levels is not None:
                rec["level"] = self._levels[f]
            out.append(rec)
        return out

    def __eq__(self, other):
        if not isinstance(other, CombinatorialComplex):
            return NotImplemented
        return (self._order == other._order and self._dims == other._dims
                and self._labels == other._labels and self._cov == other._cov
                and self._delta == other._delta and self._levels == other._levels)

    def __hash__(self):
        return hash((self._order, tuple(sorted(self._cov.items()))))

    def __repr__(self):
        return f"CombinatorialComplex(f={self.f_vector()})"

    # -- poset navigation -------------------------------------------------

    def downset(self, f: FaceId) -> tuple:
        """All faces <= f in the face poset (f included), canonical order."""
        self._check(f)
        seen = {f}
        stack = [f]
        while stack:
            g = stack.pop()
            for h in self._cov[g]:
                if h not in seen:
                    seen.add(h)
                    stack.append(h)
        return tuple(sorted(seen, key=self._index.__getitem__))

    def upset(self, f: FaceId) -> tuple:
        """All faces >= f (f included), canonical order."""
        self._check(f)
        above: dict[str, set] = {g: set() for g in self._order}
        for g in self._order:
            for h in self._cov[g]:
                above[h].add(g)
        seen = {f}
        stack = [f]
        while stack:
            g = stack.pop()
            for h in above[g]:
                if h not in seen:
                    seen.add(h)
                    stack.append(h)
        return tuple(sorted(seen, key=self._index.__getitem__))

    def is_maximal(self, f: FaceId) -> bool:
        self._check(f)
        return all(f not in self._cov[g] for g in self._order)

    def connected_components(self) -> tuple:
        """Partition of the faces by connectivity through shared faces."""
        parent = {f: f for f in self._order}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for f in self._order:
            for g in self._cov[f]:
                rf, rg = find(f), find(g)
                if rf != rg:
                    parent[rf] = rg
        groups: dict[str, list] = {}
        for f in self._order:
            groups.setdefault(find(f), []).append(f)
        comps = [tuple(sorted(g, key=self._index.__getitem__))
                 for g in groups.values()]
        comps.sort(key=lambda c: self._index[c[0]])
        return tuple(comps)

    # -- Delta-structure helpers ------------------------------------------

    def vertices_of(self, f: FaceId) -> tuple:
        """Ordered vertex ids of a face (requires the Delta-structure)."""
        self._check(f)
        if self._delta is None:
            raise MissingDeltaStructure("vertex lists need a delta structure")
        cached = self._verts.get(f)
        if cached is not None:
            return cached
        k = self._dims[f]
        if k == 0:
            vs = (f,)
        else:
            d = self._delta[f]
            vs = (self.vertices_of(d[1])[0],) + self.vertices_of(d[0])
        self._verts[f] = vs
        return vs

    def subface(self, f: FaceId, keep_positions: Sequence[int]) -> FaceId:
        """The face of ``f`` spanned by the vertices at the given positions."""
        self._check(f)
        if self._delta is None:
            raise MissingDeltaStructure("subfaces need a delta structure")
        keep = sorted(set(keep_positions))
        k = self._dims[f]
        if not keep:
            raise NoSuchFace("empty position set has no face")
        if keep[0] < 0 or keep[-1] > k:
            raise NoSuchFace(f"positions {keep} out of range for face {f!r}")
        cur = f
        omitted = [i for i in range(k + 1) if i not in keep]
        for i in reversed(omitted):
            cur = self._delta[cur][i]
        return cur

    def embedding_positions(self, tau: FaceId, sigma: FaceId):
        """Positions at which ``sigma`` sits inside ``tau``, or None.

        Distinct vertices per face make the embedding unique when it exists.
        """
        vt = self.vertices_of(tau)
        vs = self.vertices_of(sigma)
        lookup = {v: i for i, v in enumerate(vt)}
        try:
            pos = tuple(lookup[v] for v in vs)
        except KeyError:
            return None
        if list(pos) != sorted(pos):
            return None
        if self.subface(tau, pos) != sigma:
            return None
        return pos

    def contains_face(self, tau: FaceId, sigma: FaceId) -> bool:
        return self.embedding_positions(tau, sigma) is not None

    def star(self, f: FaceId) -> tuple:
        """All faces >= f; with a Delta-structure this equals the poset upset."""
        return self.upset(f)

    # -- structural constructions ------------------------------------------

    def skeleton(self, k: int) -> "CombinatorialComplex":
        """The subcomplex of all faces of dimension at most ``k``."""
        if k < 0:
            return CombinatorialComplex([])
        recs = [self._record(f) for f in self._order if self._dims[f] <= k]
        return CombinatorialComplex(recs)

    def _record(self, f):
        rec = {"id": f, "dim": self._dims[f], "label": self._labels[f],
               "facets": list(self._cov[f])}
        if self._delta is not None:
            rec["delta_order"] = list(self._delta[f])
        if self._levels is not None:
            rec["level"] = self._levels[f]
        return rec

    def level_subcomplex(self, m: int) -> "CombinatorialComplex":
        """All faces of level <= m (downward-closed by the level invariant)."""
        if self._levels is None:
            raise NoFiltration("complex has no filtration levels")
        recs = [self._record(f) for f in self._order if self._levels[f] <= m]
        return CombinatorialComplex(recs)

    def cone(self, apex: str | None = None) -> "CombinatorialComplex":
        """The cone: the complex plus an apex joined to every face.

        Works on any complex (a poset cone); Delta-structure and levels
        are carried along when present, the apex becoming the last
        vertex of each new face.  The input is a subcomplex of the output.
        """
        taken = set(self._order)
        apex_id = _dedup_ids([apex if apex is not None else "c"], taken)[0]
        taken.add(apex_id)
        mixed_ids = dict(zip(self._order,
                             _dedup_ids([f"{f}*{apex_id}" for f in self._order],
                                        taken)))
        min_level = min(self._levels.values(), default=1) if self._levels else None

        recs = [self._record(f) for f in self._order]
        apex_rec = {"id": apex_id, "dim": 0, "facets": []}
        if self._levels is not None:
            apex_rec["level"] = min_level
        recs.append(apex_rec)

        for f in self._order:
            nid = mixed_ids[f]
            if self._dims[f] == 0:
                facets = [apex_id, f]
            else:
                facets = [mixed_ids[g] for g in self._cov[f]] + [f]
            rec = {"id": nid, "dim": self._dims[f] + 1,
                   "label": f"{self._labels[f]}*{apex_id}", "facets": facets}
            if self._delta is not None:
                if self._dims[f] == 0:
                    rec["delta_order"] = [apex_id, f]
                else:
                    rec["delta_order"] = [mixed_ids[g] for g in self._delta[f]] + [f]
            if self._levels is not None:
                rec["level"] = self._levels[f]
            recs.append(rec)
        return CombinatorialComplex(recs)

    def order_complex(self, top_dim: int | None = None) -> "CombinatorialComplex":
        """The complex of chains of the face poset (barycentric subdivision).

        Chains are ordered by increasing face dimension; the output always
        carries a Delta-structure.  ``top_dim`` truncates to chains of at
        most ``top_dim + 1`` elements (used for fundamental group work).
        """
        chains: list[tuple] = []
        strict_below = {f: self.downset(f)[:-1] for f in self._order}
        # downset is canonically sorted and ends with f itself
        frontier = [(f,) for f in self._order]
        chains.extend(frontier)
        depth = 0
        while frontier and (top_dim is None or depth < top_dim):
            depth += 1
            nxt = []
            for ch in frontier:
                head = ch[0]
                for g in strict_below[head]:
                    nxt.append((g,) + ch)
            chains.extend(nxt)
            frontier = nxt

        def cid(ch):
            return "<".join(ch)

        recs = []
        for ch in chains:
            k = len(ch) - 1
            rec = {"id": cid(ch), "dim": k}
            if k == 0:
                rec["facets"] = []
                rec["delta_order"] = None
            else:
                d = [cid(ch[:i] + ch[i + 1:]) for i in range(k + 1)]
                rec["facets"] = d
                rec["delta_order"] = d
            if self._levels is not None:
                rec["level"] = max(self._levels[f] for f in ch)
            recs.append({k2: v for k2, v in rec.items()
                         if not (k2 == "delta_order" and v is None)})
        return CombinatorialComplex(recs)

    def quotient_free_involution(self, phi: Mapping[str, str]) -> "CombinatorialComplex":
        """Quotient by a fixed-point-free involution of the face poset.

        Faces of the quotient are orbits.  Regularity is validated, not
        assumed: an orbit face whose facet orbits collide (or whose
        vertex orbits collide) is rejected.  The Delta-structure descends
        when the involution preserves per-face facet order; otherwise it
        is dropped and homology falls back to the order complex.
        """
        for f in self._order:
            g = phi.get(f)
            if g is None or g not in self._dims:
                raise NotInvolution(f"pairing undefined at face {f!r}")
            if g == f:
                raise HasFixedFace(f"face {f!r} is fixed")
            if phi.get(g) != f:
                raise NotInvolution(f"pairing is not an involution at {f!r}")
            if self._dims[g] != self._dims[f]:
                raise NotInvolution(f"pairing does not preserve dimension at {f!r}")
            if {phi[h] for h in self._cov[f]} != set(self._cov[g]):
                raise NotInvolution(f"pairing does not preserve covering at {f!r}")

        def rep(f):
            g = phi[f]
            return f if self._index[f] < self._index[g] else g

        orbit_id = {}
        for f in self._order:
            r = rep(f)
            orbit_id[f] = f"{r}|{phi[r]}"

        keep_levels = (self._levels is not None and
                       all(self._levels[f] == self._levels[phi[f]] for f in self._order))

        keep_delta = self._delta is not None
        if keep_delta:
            for f in self._order:
                a = [orbit_id[x] for x in self._delta[f]]
                b = [orbit_id[x] for x in self._delta[phi[f]]]
                if a != b:
                    keep_delta = False
                    break

        recs = []
        done = set()
        for f in self._order:
            r = rep(f)
            if r in done:
                continue
            done.add(r)
            oid = orbit_id[r]
            facets = [orbit_id[g] for g in self._cov[r]]
            if len(set(facets)) != len(facets):
                raise QuotientNotRegular(
                    f"orbit of {r!r} would cover an orbit face twice")
            rec = {"id": oid, "dim": self._dims[r],
                   "label": self._labels[r], "facets": facets}
            if keep_delta and self._dims[r] >= 1:
                rec["delta_order"] = [orbit_id[g] for g in self._delta[r]]
            if keep_levels:
                rec["level"] = self._levels[r]
            recs.append(rec)
        try:
            return CombinatorialComplex(recs)
        except BadDeltaStructure as exc:
            raise QuotientNotRegular(str(exc)) from exc

    def relabeled(self, mapping: Mapping[str, str]) -> "CombinatorialComplex":
        """Rename faces by a bijection of ids (labels follow the new ids)."""
        img = {mapping.get(f, f) for f in self._order}
        if len(img) != len(self._order):
            raise DuplicateFace("relabeling is not a bijection")

        def m(f):
            return mapping.get(f, f)

        recs = []
        for f in self._order:
            rec = {"id": m(f), "dim": self._dims[f],
                   "facets": [m(g) for g in self._cov[f]]}
            if self._delta is not None and self._dims[f] >= 1:
                rec["delta_order"] = [m(g) for g in self._delta[f]]
            if self._levels is not None:
                rec["level"] = self._levels[f]
            recs.append(rec)
        return CombinatorialComplex(recs)


# -- module-level constructors and binary operations ------------------------

def new_complex(faces: Iterable[Mapping]) -> CombinatorialComplex:
    """Build and validate a complex from face records (see class docs)."""
    return CombinatorialComplex(faces)


def euler_characteristic(c: CombinatorialComplex) -> int:
    return c.euler_characteristic()


def connected_components(c: CombinatorialComplex) -> tuple:
    return c.connected_components()


def skeleton(c: CombinatorialComplex, k: int) -> CombinatorialComplex:
    return c.skeleton(k)


def cone(c: CombinatorialComplex, apex: str | None = None) -> CombinatorialComplex:
    return c.cone(apex)


def order_complex(c: CombinatorialComplex, top_dim: int | None = None) -> CombinatorialComplex:
    return c.order_complex(top_dim)


def level_subcomplex(c: CombinatorialComplex, m: int) -> CombinatorialComplex:
    return c.level_subcomplex(m)


def quotient_free_involution(c: CombinatorialComplex,
                             phi: Mapping[str, str]) -> CombinatorialComplex:
    return c.quotient_free_involution(phi)


def disjoint_union(a: CombinatorialComplex,
                   b: CombinatorialComplex) -> CombinatorialComplex:
    """Disjoint union; colliding ids on the right side are renamed."""
    recs = [a._record(f) for f in a.face_ids]
    taken = set(a.face_ids)
    rename = dict(zip(b.face_ids, _dedup_ids(b.face_ids, taken)))
    keep_delta = a.has_delta and b.has_delta
    keep_levels = a.has_levels and b.has_levels
    if a.is_empty:
        keep_delta, keep_levels = b.has_delta, b.has_levels
    if b.is_empty:
        keep_delta, keep_levels = a.has_delta, a.has_levels
    for f in b.face_ids:
        rec = {"id": rename[f], "dim": b.dim(f), "label": b.label(f),
               "facets": [rename[g] for g in b.facets(f)]}
        if keep_delta and b.dim(f) >= 1:
            rec["delta_order"] = [rename[g] for g in b.delta_order(f)]
        if keep_levels:
            rec["level"] = b.level(f)
        recs.append(rec)
    if not keep_delta:
        for rec in recs:
            rec.pop("delta_order", None)
    if not keep_levels:
        for rec in recs:
            rec.pop("level", None)
    return CombinatorialComplex(recs)


def wedge(a: CombinatorialComplex, v1: str,
          b: CombinatorialComplex, v2: str) -> CombinatorialComplex:
    """One-point union identifying vertex ``v2`` of ``b`` with ``v1`` of ``a``."""
    if v1 not in a.face_ids or a.dim(v1) != 0:
        raise NotAVertex(f"{v1!r} is not a vertex of the left complex")
    if v2 not in b.face_ids or b.dim(v2) != 0:
        raise NotAVertex(f"{v2!r} is not a vertex of the right complex")
    u = disjoint_union(a, b)
    # recover the (possibly renamed) image of v2 in the union
    taken = set(a.face_ids)
    rename = dict(zip(b.face_ids, _dedup_ids(b.face_ids, taken)))
    v2u = rename[v2]
    recs = []
    for f in u.face_ids:
        if f == v2u:
            continue
        rec = u._record(f)
        rec["facets"] = [v1 if g == v2u else g for g in rec["facets"]]
        if "delta_order" in rec:
            rec["delta_order"] = [v1 if g == v2u else g for g in rec["delta_order"]]
        recs.append(rec)
    if u.has_levels:
        lv = min(u.level(v1), u.level(v2u))
        for rec in recs:
            if rec["id"] == v1:
                rec["level"] = lv
    return CombinatorialComplex(recs)


def join(a: CombinatorialComplex, b: CombinatorialComplex) -> CombinatorialComplex:
    """Join of two Delta-structured complexes.

    Faces are pairs (alpha, beta) with alpha a face of ``a`` or empty and
    beta a face of ``b`` or empty, not both empty; the vertices of ``a``
    precede those of ``b``.  Ids are ``"alpha*beta"`` with an empty slot
    for the missing side.
    """
    if not a.has_delta or not b.has_delta:
        raise MissingDeltaStructure("join needs delta structures on both sides")

    pairs = []
    for f in a.face_ids:
        pairs.append((f, None))
    for g in b.face_ids:
        pairs.append((None, g))
    for f in a.face_ids:
        for g in b.face_ids:
            pairs.append((f, g))

    def propose(p):
        f, g = p
        return f"{f or ''}*{g or ''}"

    ids = dict(zip(pairs, _dedup_ids([propose(p) for p in pairs])))

    def dim_of(p):
        f, g = p
        df = a.dim(f) if f else -1
        dg = b.dim(g) if g else -1
        return df + dg + 1

    keep_levels = a.has_levels and b.has_levels

    def level_of(p):
        f, g = p
        lf = a.level(f) if f else 0
        lg = b.level(g) if g else 0
        return max(lf, lg, 1)

    recs = []
    for p in pairs:
        f, g = p
        k = dim_of(p)
        d = []
        if f is not None:
            if a.dim(f) == 0:
                d.append((None, g) if g is not None else None)
            else:
                d.extend((x, g) for x in a.delta_order(f))
        if g is not None:
            if b.dim(g) == 0:
                d.append((f, None) if f is not None else None)
            else:
                d.extend((f, y) for y in b.delta_order(g))
        if None in d:
            # joining a single vertex against the empty side: no facets
            d = [x for x in d if x is not None]
        facet_ids = [ids[x] for x in d]
        la = a.label(f) if f else ""
        lb = b.label(g) if g else ""
        rec = {"id": ids[p], "dim": k, "label": f"{la}*{lb}",
               "facets": facet_ids}
        if k >= 1:
            rec["delta_order"] = facet_ids
        if keep_levels:
            rec["level"] = level_of(p)
        recs.append(rec)
    return CombinatorialComplex(recs)


def face_map_from_vertex_bijection(c: CombinatorialComplex,
                                   vmap: Mapping[str, str]) -> dict:
    """Extend a vertex bijection to a face pairing (simplicial complexes).

    Each face is sent to the unique face on the image vertex set; raises
    NoSuchFace when the image face is missing and NotInvolution when it
    is ambiguous.
    """
    by_verts: dict[frozenset, list] = {}
    for f in c.face_ids:
        by_verts.setdefault(frozenset(c.vertices_of(f)), []).append(f)
    out = {}
    for f in c.face_ids:
        img = frozenset(vmap[v] for v in c.vertices_of(f))
        hits = by_verts.get(img, [])
        if not hits:
            raise NoSuchFace(f"no face on the image vertex set of {f!r}")
        if len(hits) > 1:
            raise NotInvolution(f"image of {f!r} is ambiguous")
        out[f] = hits[0]
    return out


def complexes_isomorphic(a: CombinatorialComplex, b: CombinatorialComplex) -> bool:
    """Poset isomorphism test (covering-relation preserving bijection)."""
    if a.f_vector() != b.f_vector():
        return False

    def signatures(c):
        above: dict[str, list] = {f: [] for f in c.face_ids}
        for f in c.face_ids:
            for g in c.facets(f):
                above[g].append(f)
        sig = {f: (c.dim(f), len(c.facets(f)), len(above[f])) for f in c.face_ids}
        for _ in range(3):
            sig = {f: (sig[f],
                       tuple(sorted(sig[g] for g in c.facets(f))),
                       tuple(sorted(sig[g] for g in above[f])))
                   for f in c.face_ids}
        return sig

    siga, sigb = signatures(a), signatures(b)
    from collections import Counter
    if Counter(siga.values()) != Counter(sigb.values()):
        return False

    order = sorted(a.face_ids, key=lambda f: (a.dim(f), str(siga[f])))
    cands = {f: [g for g in b.face_ids if sigb[g] == siga[f]] for f in order}

    assignment: dict[str, str] = {}
    used: set[str] = set()

    def backtrack(i):
        if i == len(order):
            return True
        f = order[i]
        for g in cands[f]:
            if g in used:
                continue
            if {assignment[x] for x in a.facets(f)} != set(b.facets(g)):
                continue
            assignment[f] = g
            used.add(g)
            if backtrack(i + 1):
                return True
            del assignment[f]
            used.discard(g)
        return False

    return backtrack(0)
