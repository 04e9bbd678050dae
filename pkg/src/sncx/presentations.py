"""Fundamental group presentations and Tietze simplification.

Words are tuples of nonzero integers: letter ``+k`` is generator k-1,
``-k`` its inverse.  Every transformation applied here is a Tietze move,
so the presented group never changes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .complexes import CombinatorialComplex
from .errors import NotConnected
from .snf import smith_normal_form


def _free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _cyclic_reduce(word):
    w = _free_reduce(word)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def _invert(word):
    return tuple(-x for x in reversed(word))


def _canonical_relator(word):
    """Least rotation among all rotations of the word and its inverse."""
    w = _cyclic_reduce(word)
    if not w:
        return w
    best = None
    for cand in (w, _invert(w)):
        for s in range(len(cand)):
            rot = cand[s:] + cand[:s]
            if best is None or rot < best:
                best = rot
    return best


@dataclass(frozen=True)
class GroupPresentation:
    """A finite presentation: ``generators`` counts them, relators are words."""

    generators: int
    relators: tuple

    def __post_init__(self):
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.generators:
                    raise ValueError(f"relator letter {x} out of range")

    def describe(self) -> str:
        def spell(word):
            if not word:
                return "1"
            parts = []
            for x in word:
                g = f"g{abs(x)}"
                parts.append(g if x > 0 else g + "^-1")
            return "*".join(parts)

        rels = ", ".join(spell(r) for r in self.relators)
        return f"<{self.generators} generators | {rels or 'no relators'}>"


def abelianization(pres: GroupPresentation):
    """(rank, invariant factors > 1) of the abelianized group."""
    n = pres.generators
    if n == 0:
        return 0, ()
    rows = []
    for r in pres.relators:
        row = [0] * n
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    if not rows:
        return n, ()
    res = smith_normal_form(rows)
    torsion = tuple(d for d in res.invariant_factors if d > 1)
    return n - res.rank, torsion


def fundamental_group_presentation(c: CombinatorialComplex) -> GroupPresentation:
    """Edge-path presentation from the 2-skeleton of the order complex.

    Spanning tree by breadth-first search in canonical order; generators
    are the non-tree edges, relators the triangle boundaries with tree
    edges elided.
    """
    if c.is_empty:
        raise NotConnected("the empty complex has no fundamental group")
    if len(c.connected_components()) != 1:
        raise NotConnected("complex is not connected")

    oc = c.order_complex(top_dim=2)
    verts = oc.faces_of_dim(0)
    edges = oc.faces_of_dim(1)
    tris = oc.faces_of_dim(2)

    # oriented edge (tail, head) by the delta order: facet 0 omits the tail
    eindex = {e: i for i, e in enumerate(edges)}
    adj = {v: [] for v in verts}
    for e in edges:
        d = oc.delta_order(e)
        tail, head = d[1], d[0]
        adj[tail].append((head, e, +1))
        adj[head].append((tail, e, -1))
    for v in adj:
        adj[v].sort(key=lambda t: (eindex[t[1]], t[2]))

    root = verts[0]
    in_tree = set()
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w, e, _sign in adj[v]:
            if w not in seen:
                seen.add(w)
                in_tree.add(e)
                queue.append(w)

    gens = [e for e in edges if e not in in_tree]
    gen_index = {e: i + 1 for i, e in enumerate(gens)}

    def letter(e, sign):
        if e in in_tree:
            return 0
        return sign * gen_index[e]

    relators = []
    for t in tris:
        d = oc.delta_order(t)
        # vertices (a, b, c); boundary word e(a,b) e(b,c) e(a,c)^-1
        e_bc, e_ac, e_ab = d[0], d[1], d[2]
        word = [letter(e_ab, +1), letter(e_bc, +1), letter(e_ac, -1)]
        word = tuple(x for x in word if x)
        word = _cyclic_reduce(word)
        if word:
            relators.append(word)
    return GroupPresentation(len(gens), tuple(relators))


def _substitute(word, gen, repl):
    """Replace every occurrence of +-gen in word by repl / its inverse."""
    out = []
    inv = _invert(repl)
    for x in word:
        if x == gen:
            out.extend(repl)
        elif x == -gen:
            out.extend(inv)
        else:
            out.append(x)
    return tuple(_free_reduce(out))


def _renumber(relators, generators, removed):
    remap = {}
    nxt = 1
    for g in range(1, generators + 1):
        if g != removed:
            remap[g] = nxt
            nxt += 1
    out = []
    for r in relators:
        out.append(tuple((1 if x > 0 else -1) * remap[abs(x)] for x in r))
    return out, generators - 1


def _eliminate_generator(relators, generators):
    """Remove one generator via a relator where it occurs exactly once.

    Prefers short relators (smallest substitution growth).  Returns the
    new (relators, generators) or None when no elimination applies.
    """
    best = None
    for idx, r in enumerate(relators):
        counts = {}
        for x in r:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
        for g, cnt in sorted(counts.items()):
            if cnt == 1:
                key = (len(r), idx, g)
                if best is None or key < best[0]:
                    best = (key, idx, g)
    if best is None:
        return None
    _, idx, g = best
    r = relators[idx]
    pos = next(i for i, x in enumerate(r) if abs(x) == g)
    # cyclically rotate so the g-letter is first; then g = inverse of rest
    rot = r[pos:] + r[:pos]
    if rot[0] < 0:
        rot = _invert(rot)
        rot = rot[-1:] + rot[:-1]
    repl = _invert(rot[1:])
    out = []
    for j, s in enumerate(relators):
        if j == idx:
            continue
        out.append(_substitute(s, g, repl))
    out, gens = _renumber(out, generators, g)
    return out, gens


def _shorten_by_overlap(relators):
    """One pass of relator-vs-relator subword replacement.

    If more than half of a (shorter) relator appears inside another,
    rewriting through the shorter relator reduces total length.
    """
    rels = [tuple(r) for r in relators]
    rels.sort(key=lambda r: (len(r), r))
    changed = False
    for i, s in enumerate(rels):
        ls = len(s)
        if ls == 0:
            continue
        variants = []
        doubled_fwd = s + s
        doubled_rev = _invert(s) + _invert(s)
        for start in range(ls):
            variants.append((doubled_fwd[start:start + ls], s))
            variants.append((doubled_rev[start:start + ls], s))
        half = ls // 2 + 1
        for j in range(len(rels)):
            if j == i:
                continue
            r = rels[j]
            if len(r) < half:
                continue
            for variant, _src in variants:
                chunk = variant[:half]
                lw = len(chunk)
                found = -1
                big = r + r
                for start in range(len(r)):
                    if big[start:start + lw] == chunk:
                        found = start
                        break
                if found < 0:
                    continue
                # r contains the first `half` letters of `variant`; replace
                # them by the inverse of the remainder of `variant`
                longest = lw
                while longest < min(ls, len(r)) and \
                        big[found + longest] == variant[longest]:
                    longest += 1
                remainder = _invert(variant[longest:])
                rotated = big[found + longest:found + len(r)]
                new_r = _cyclic_reduce(tuple(remainder) + tuple(rotated))
                if len(new_r) < len(r):
                    rels[j] = new_r
                    changed = True
                    break
            if changed:
                break
        if changed:
            break
    return rels, changed


def tietze_simplify(pres: GroupPresentation, budget: int = 20000):
    """Deterministic simplification; returns (presentation, status).

    Status is ``"trivial"`` when no generators remain, ``"reduced"`` when
    a fixpoint was reached, ``"budget-exhausted"`` otherwise.
    """
    relators = [w for w in (_cyclic_reduce(r) for r in pres.relators) if w]
    generators = pres.generators
    ops = 0
    while ops < budget:
        ops += 1
        relators = sorted({_canonical_relator(r) for r in relators} - {()})
        step = _eliminate_generator(relators, generators)
        if step is not None:
            relators, generators = step
            relators = [w for w in (_cyclic_reduce(r) for r in relators) if w]
            continue
        relators, changed = _shorten_by_overlap(relators)
        relators = [w for w in (_cyclic_reduce(r) for r in relators) if w]
        if not changed:
            status = "trivial" if generators == 0 else "reduced"
            return GroupPresentation(generators, tuple(relators)), status
    return GroupPresentation(generators, tuple(sorted(relators))), "budget-exhausted"
