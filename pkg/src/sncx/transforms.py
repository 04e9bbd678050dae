"""Homotopy-preserving moves on Delta-structured complexes.

The three blowup-induced moves on a dual complex (identity, stellar
subdivision along a face, coning over a base face with attachments),
the discrete Morse flow that retracts a new vertex onto an old one,
puckering of a maximal cell, and sequential script replay with a
homology log.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import CombinatorialComplex, _dedup_ids
from .errors import (
    BadMultiplicity,
    DescriptorInvalid,
    MatchingNotAcyclic,
    MissingDeltaStructure,
    NoSuchFace,
    NotAVertex,
    NotMaximal,
    PairingIncomplete,
    PairingNotUnique,
    ScriptError,
)
from .homology import homology


def stellar_subdivide(c: CombinatorialComplex, sigma: str,
                      new_vertex: str | None = None) -> CombinatorialComplex:
    """Subdivide along the face ``sigma``.

    Every face tau >= sigma is removed; writing tau = sigma * beta, the
    replacements are e * alpha * beta for every proper subface alpha of
    sigma inside tau, plus the barycenter vertex e itself.  Homology is
    preserved.  Levels: e inherits the smallest level among the removed
    faces, a replacement keeps the level of the face it came from.
    """
    if not c.has_delta:
        raise MissingDeltaStructure("stellar subdivision needs a delta structure")
    if sigma not in c.face_ids:
        raise NoSuchFace(f"no face {sigma!r}")

    star = [t for t in c.face_ids if c.contains_face(t, sigma)]
    star_set = set(star)
    survivors = [f for f in c.face_ids if f not in star_set]

    taken = set(survivors)
    e = _dedup_ids([new_vertex if new_vertex is not None else f"b({sigma})"],
                   taken)[0]
    taken.add(e)

    sigma_verts = set(c.vertices_of(sigma))

    # key: (tau, frozenset of alpha vertex ids); value: replacement id
    def subsets_proper(vs):
        out = [frozenset()]
        items = sorted(vs)
        n = len(items)
        for mask in range(1, (1 << n) - 1):
            out.append(frozenset(items[i] for i in range(n) if mask >> i & 1))
        return out

    keys = []
    for tau in star:
        for alpha in subsets_proper(sigma_verts):
            keys.append((tau, alpha))

    proposals = []
    for tau, alpha in keys:
        beta_count = c.dim(tau) + 1 - len(sigma_verts)
        if not alpha and beta_count == 0:
            proposals.append(e)
        else:
            proposals.append(f"{e}|{tau}|{'.'.join(sorted(alpha))}")
    ids = dict(zip(keys, _dedup_ids(proposals, taken - {e})))

    levels = c.has_levels
    e_level = min((c.level(t) for t in star), default=1) if levels else None

    recs = [c._record(f) for f in survivors]
    new_recs = {}
    for tau, alpha in keys:
        tau_verts = c.vertices_of(tau)
        keep_pos = [i for i, v in enumerate(tau_verts)
                    if v in alpha or v not in sigma_verts]
        nid = ids[(tau, alpha)]
        k = len(keep_pos)   # new face dim: 1 + k - 1 = k
        if k == 0:
            rec = {"id": e, "dim": 0, "facets": []}
            if levels:
                rec["level"] = e_level
            new_recs[e] = rec
            continue
        # vertex order: e first, then tau's surviving vertices in tau order
        delta = []
        # facet 0: omit e -> the subface alpha * beta of tau (a survivor)
        delta.append(c.subface(tau, keep_pos))
        for i, p in enumerate(keep_pos):
            v = tau_verts[p]
            if v in alpha:
                delta.append(ids[(tau, alpha - {v})])
            else:
                all_but_p = [q for q in range(len(tau_verts)) if q != p]
                tau2 = c.subface(tau, all_but_p)
                delta.append(ids[(tau2, alpha)])
        rec = {"id": nid, "dim": k, "facets": delta, "delta_order": delta,
               "label": nid}
        if levels:
            rec["level"] = c.level(tau)
        new_recs[nid] = rec
    recs.extend(new_recs.values())
    return CombinatorialComplex(recs)


@dataclass(frozen=True)
class BlowupMove:
    """One move of a blowup script.

    ``case`` 1 leaves the complex alone, case 2 subdivides along
    ``face``, case 3 adds a vertex coned over the downward closure of
    ``attach`` (every member must contain ``base``, and ``base`` must be
    listed).  ``case == "attach"`` is the unconstrained variant used to
    replay boundary constructions: a new vertex coned over an arbitrary
    downward-closed attachment region (possibly empty).
    """

    case: int | str
    face: str | None = None              # case 2
    base: str | None = None              # case 3
    attach: tuple = ()                   # cases 3 and "attach"
    vertex: str | None = None            # case 3: flow target v_j
    new_vertex: str | None = None
    level: int | None = None

    def as_json(self) -> dict:
        out = {"case": self.case}
        if self.face is not None:
            out["face"] = self.face
        if self.base is not None:
            out["base"] = self.base
        if self.attach:
            out["attach"] = list(self.attach)
        if self.vertex is not None:
            out["vertex"] = self.vertex
        if self.new_vertex is not None:
            out["new_vertex"] = self.new_vertex
        if self.level is not None:
            out["level"] = self.level
        return out

    @classmethod
    def from_json(cls, d: dict) -> "BlowupMove":
        return cls(case=d["case"], face=d.get("face"), base=d.get("base"),
                   attach=tuple(d.get("attach", ())), vertex=d.get("vertex"),
                   new_vertex=d.get("new_vertex"), level=d.get("level"))


BlowupScript = tuple  # ordered BlowupMove sequence


def _closure(c, faces):
    seen = set()
    for f in faces:
        seen.update(c.downset(f))
    index = {f: i for i, f in enumerate(c.face_ids)}
    return sorted(seen, key=index.__getitem__)


def _attach_cone(c, gens, new_vertex, level):
    """Add a vertex coned over the downward closure of ``gens``."""
    closure = _closure(c, gens)
    taken = set(c.face_ids)
    e = _dedup_ids([new_vertex], taken)[0]
    taken.add(e)
    ids = dict(zip(closure, _dedup_ids([f"{g}<{e}" for g in closure], taken)))

    levels = c.has_levels
    if levels and level is None:
        raise DescriptorInvalid(
            "filtered complex: the new vertex needs a level")

    recs = [c._record(f) for f in c.face_ids]
    vrec = {"id": e, "dim": 0, "facets": []}
    if levels:
        vrec["level"] = level
    recs.append(vrec)
    for g in closure:
        facets = [ids[x] for x in c.facets(g)] + [g] if c.dim(g) >= 1 \
            else [e, g]
        rec = {"id": ids[g], "dim": c.dim(g) + 1, "facets": facets}
        if c.has_delta:
            if c.dim(g) == 0:
                rec["delta_order"] = [e, g]
            else:
                rec["delta_order"] = [ids[x] for x in c.delta_order(g)] + [g]
                rec["facets"] = rec["delta_order"]
        if levels:
            rec["level"] = max(c.level(g), level)
        recs.append(rec)
    return CombinatorialComplex(recs)


def _validate_case3(c, move):
    base = move.base
    if base is None or base not in c.face_ids:
        raise DescriptorInvalid(f"case 3 base face {base!r} missing")
    attach = list(move.attach)
    if base not in attach:
        raise DescriptorInvalid("case 3 attachment set must contain the base face")
    if len(set(attach)) != len(attach):
        raise DescriptorInvalid("case 3 attachment set repeats a face")
    for t in attach:
        if t not in c.face_ids:
            raise DescriptorInvalid(f"case 3 attachment face {t!r} missing")
        if not c.contains_face(t, base):
            raise DescriptorInvalid(
                f"attachment face {t!r} does not contain the base {base!r}")
    vj = move.vertex
    if vj is None:
        vj = c.vertices_of(base)[0]
    if vj not in c.vertices_of(base):
        raise DescriptorInvalid(
            f"flow vertex {vj!r} is not a vertex of the base {base!r}")
    if c.has_levels:
        if move.level is None:
            raise DescriptorInvalid("filtered complex: case 3 needs a level")
        if move.level < c.level(base):
            raise DescriptorInvalid(
                f"new vertex level {move.level} below the base level "
                f"{c.level(base)}")
    # the cone retracts onto the base only when spans through vj are
    # unique: reject closures with ambiguous spans (e.g. duplicate top
    # cells sharing all their lower faces)
    closure = _closure(c, attach)
    closure_set = set(closure)
    for g in closure:
        verts = c.vertices_of(g)
        if vj in verts:
            continue
        want = set(verts) | {vj}
        spans = [t for t in closure_set
                 if set(c.vertices_of(t)) == want and c.contains_face(t, g)]
        if len(spans) != 1:
            raise DescriptorInvalid(
                f"face {g!r} has {len(spans)} spans through {vj!r} "
                "in the attachment closure; need exactly one")
    return vj


def blowup_move(c: CombinatorialComplex, move: BlowupMove) -> CombinatorialComplex:
    """Apply one blowup move; cases 1-3 preserve homology level by level."""
    if move.case == 1:
        return c
    if move.case == 2:
        if not c.has_delta:
            raise MissingDeltaStructure("case 2 needs a delta structure")
        if move.face is None or move.face not in c.face_ids:
            raise DescriptorInvalid(f"case 2 face {move.face!r} missing")
        return stellar_subdivide(c, move.face, move.new_vertex)
    if move.case == 3:
        if not c.has_delta:
            raise MissingDeltaStructure("case 3 needs a delta structure")
        _validate_case3(c, move)
        new_vertex = move.new_vertex if move.new_vertex is not None \
            else f"v({move.base})"
        return _attach_cone(c, list(move.attach), new_vertex, move.level)
    if move.case == "attach":
        if move.new_vertex is None:
            raise DescriptorInvalid("attach move needs new_vertex")
        for t in move.attach:
            if t not in c.face_ids:
                raise DescriptorInvalid(f"attach face {t!r} missing")
        return _attach_cone(c, list(move.attach), move.new_vertex, move.level)
    raise DescriptorInvalid(f"unknown move case {move.case!r}")


def morse_vertex_flow(c: CombinatorialComplex, v_src: str, v_dst: str):
    """Flow the vertex ``v_src`` onto ``v_dst`` by a discrete Morse matching.

    Each face containing v_src but not v_dst pairs with the unique face
    spanned by it and v_dst when that span exists; faces without a span
    flow to fresh copies with v_src renamed to v_dst.  Returns
    ``(reduced complex, matching, certificate)``.  When the matching is
    perfect the output is exactly the input minus all v_src faces.
    """
    if not c.has_delta:
        raise MissingDeltaStructure("the vertex flow needs a delta structure")
    for v in (v_src, v_dst):
        if v not in c.face_ids or c.dim(v) != 0:
            raise NotAVertex(f"{v!r} is not a vertex")

    by_verts: dict[frozenset, list] = {}
    for f in c.face_ids:
        by_verts.setdefault(frozenset(c.vertices_of(f)), []).append(f)

    sources = []
    targets_set = set()
    matching = {}
    for f in c.face_ids:
        vs = c.vertices_of(f)
        if v_src not in vs:
            continue
        if v_dst in vs:
            targets_set.add(f)
            continue
        sources.append(f)
    if frozenset({v_src, v_dst}) not in by_verts:
        raise PairingIncomplete(
            f"no edge spans {v_src!r} and {v_dst!r}; the vertex cannot flow")

    critical = []
    for f in sources:
        want = frozenset(c.vertices_of(f)) | {v_dst}
        spans = [t for t in by_verts.get(want, ()) if c.contains_face(t, f)]
        if len(spans) > 1:
            raise PairingNotUnique(
                f"face {f!r} has {len(spans)} spans through {v_dst!r}")
        if spans:
            matching[f] = spans[0]
        else:
            critical.append(f)

    # matched targets must be hit exactly once and cover all targets for
    # a perfect pairing; unmatched targets cannot occur (their facet
    # omitting v_dst is a source with that exact span)
    hit = list(matching.values())
    if len(set(hit)) != len(hit):
        raise PairingNotUnique("two faces share a span")

    # acyclicity of the matching digraph: from a pair (s, t), a V-path
    # descends to another matched source among the facets of t
    pair_of = {s: t for s, t in matching.items()}
    order = list(matching)
    succ = {s: [g for g in c.facets(pair_of[s]) if g != s and g in pair_of]
            for s in order}
    color = {s: 0 for s in order}

    def dfs(u):
        color[u] = 1
        for w in succ[u]:
            if color[w] == 1:
                raise MatchingNotAcyclic(
                    f"V-path cycle through the pair of {u!r}")
            if color[w] == 0:
                dfs(w)
        color[u] = 2

    for s in order:
        if color[s] == 0:
            dfs(s)

    # build the flowed complex
    removed = set(sources) | targets_set
    kept = [f for f in c.face_ids if f not in removed]
    taken = set(kept)
    crit_ids = dict(zip(critical,
                        _dedup_ids([f"{f}~{v_dst}" for f in critical], taken)))

    image: dict[str, str] = {}
    for f in kept:
        image[f] = f
    for f in sorted(critical, key=c.dim):
        image[f] = crit_ids[f]
    for f in matching:
        t = matching[f]
        # image of a matched source: the facet of its span omitting v_src
        pos = [i for i, v in enumerate(c.vertices_of(t)) if v != v_src]
        image[f] = c.subface(t, pos)

    recs = [c._record(f) for f in kept]
    for f in sorted(critical, key=c.dim):
        delta = [image[g] for g in c.delta_order(f)]
        rec = {"id": crit_ids[f], "dim": c.dim(f), "label": c.label(f),
               "facets": delta, "delta_order": delta}
        if c.has_levels:
            rec["level"] = c.level(f)
        recs.append(rec)
    reduced = CombinatorialComplex(recs)
    certificate = {
        "acyclic": True,
        "matched_pairs": len(matching),
        "critical": [crit_ids[f] for f in sorted(critical, key=c.dim)],
        "perfect": not critical,
    }
    return reduced, tuple(sorted(matching.items())), certificate


def pucker(c: CombinatorialComplex, sigma: str, d: int) -> CombinatorialComplex:
    """Attach d-1 parallel copies of the maximal cell ``sigma``.

    Each copy shares the full attaching data (covering and delta order)
    of the original, raising the top reduced Betti number by exactly d-1.
    """
    if sigma not in c.face_ids:
        raise NoSuchFace(f"no face {sigma!r}")
    if d < 1:
        raise BadMultiplicity(f"multiplicity {d} must be at least 1")
    if not c.is_maximal(sigma):
        raise NotMaximal(f"face {sigma!r} is not maximal")
    recs = [c._record(f) for f in c.face_ids]
    copies = _dedup_ids([f"{sigma}+{i}" for i in range(1, d)], set(c.face_ids))
    for nid in copies:
        rec = dict(c._record(sigma))
        rec["id"] = nid
        rec["label"] = nid
        recs.append(rec)
    return CombinatorialComplex(recs)


@dataclass
class ScriptLog:
    """Per-step f-vectors and homology during script replay."""

    steps: list = field(default_factory=list)
    homology_constant: bool = True

    def as_json(self) -> dict:
        return {"steps": self.steps, "homology_constant": self.homology_constant}


def _snapshot(c):
    h = homology(c)
    snap = {"f_vector": list(c.f_vector()),
            "homology": h.as_json(),
            "_nonzero": h.nonzero()}
    if c.has_levels:
        per = {}
        nz = {}
        for m in range(1, c.max_level() + 1):
            hm = homology(c.level_subcomplex(m))
            per[str(m)] = hm.as_json()
            nz[m] = hm.nonzero()
        snap["per_level"] = per
        snap["_per_level_nonzero"] = nz
    return snap


def run_blowup_script(c: CombinatorialComplex, script):
    """Replay a move sequence, logging homology after every step.

    Blowup cases 1-3 must keep total and per-level homology constant;
    the log records whether they did.  Plain ``attach`` moves are
    construction steps and exempt from the constancy check.  The first
    failing step raises :class:`ScriptError` with its index.
    """
    log = ScriptLog()
    entry = {"step": 0, "move": None}
    entry.update(_snapshot(c))
    cur = c
    prev_snap = dict(entry)
    log.steps.append(_public(entry))
    for i, move in enumerate(script, start=1):
        try:
            nxt = blowup_move(cur, move)
        except Exception as exc:  # noqa: BLE001 - wrap with the step index
            raise ScriptError(i, exc) from exc
        entry = {"step": i, "move": move.as_json()}
        entry.update(_snapshot(nxt))
        if move.case in (1, 2, 3):
            same = entry["_nonzero"] == prev_snap["_nonzero"]
            if "_per_level_nonzero" in entry or "_per_level_nonzero" in prev_snap:
                same = same and _levels_match(
                    prev_snap.get("_per_level_nonzero", {}),
                    entry.get("_per_level_nonzero", {}))
            entry["homology_preserved"] = same
            if not same:
                log.homology_constant = False
        log.steps.append(_public(entry))
        cur = nxt
        prev_snap = entry
    return cur, log


def _levels_match(before, after):
    # compare the filtration levels the input already had; a move may
    # introduce a deeper level without breaking constancy below it
    for m in before:
        if before[m] != after.get(m, ()):
            return False
    return True


def _public(entry):
    return {k: v for k, v in entry.items() if not k.startswith("_")}
