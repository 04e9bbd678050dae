import random

import pytest

import sncx as S
from sncx import gallery as G
from sncx.errors import (
    BadMultiplicity,
    DescriptorInvalid,
    MissingDeltaStructure,
    NotMaximal,
    PairingIncomplete,
    ScriptError,
)
from sncx.serialize import dumps_complex

from conftest import random_simplicial_complex, with_random_levels


def homology_tables_equal(a, b):
    return S.homology(a).same_groups(S.homology(b))


class TestStellar:
    def test_triangle_edge(self):
        st = S.stellar_subdivide(G.triangle_boundary(), "e0")
        assert st.f_vector() == (4, 4)
        assert S.homology(st).betti_vector() == (1, 1)

    def test_all_four_edges(self):
        cur = G.multi_edge_complex(4)
        for e in ("e0", "e1", "e2", "e3"):
            cur = S.stellar_subdivide(cur, e)
        assert cur.f_vector() == (6, 8)
        assert S.homology(cur).betti_vector() == (1, 3)

    def test_vertex_relabels(self):
        tri = G.triangle_boundary()
        st = S.stellar_subdivide(tri, "v0")
        assert st.f_vector() == tri.f_vector()
        assert S.complexes_isomorphic(st, tri)

    def test_solid_triangle_edge(self):
        full = G.full_simplex(2)
        st = S.stellar_subdivide(full, "0.1")
        assert st.f_vector() == (4, 5, 2)
        h = S.homology(st, reduced=True)
        assert all(b == 0 for _d, b, _t in h.table)

    def test_missing_inputs(self):
        with pytest.raises(S.SncxError):
            S.stellar_subdivide(G.triangle_boundary(), "nope")
        poset = S.new_complex([
            {"id": "a", "dim": 0, "facets": []},
            {"id": "b", "dim": 0, "facets": []},
            {"id": "e", "dim": 1, "facets": ["a", "b"]}])
        with pytest.raises(MissingDeltaStructure):
            S.stellar_subdivide(poset, "e")

    def test_homology_preserved_randomized(self):
        rng = random.Random(21)
        for _ in range(30):
            c = random_simplicial_complex(rng, max_verts=6, max_facets=4,
                                          max_dim=3)
            if sum(c.f_vector()) > 30:
                continue
            sigma = c.face_ids[rng.randrange(len(c.face_ids))]
            st = S.stellar_subdivide(c, sigma)
            assert homology_tables_equal(c, st)

    def test_per_level_homology_preserved(self):
        rng = random.Random(22)
        for _ in range(10):
            c = with_random_levels(rng, random_simplicial_complex(rng))
            sigma = c.face_ids[rng.randrange(len(c.face_ids))]
            st = S.stellar_subdivide(c, sigma)
            for m in range(1, c.max_level() + 1):
                assert homology_tables_equal(c.level_subcomplex(m),
                                             st.level_subcomplex(m))

    def test_commutes_with_relabeling(self):
        tri = G.triangle_boundary()
        ren = {f: f"x_{f}" for f in tri.face_ids}
        a = S.stellar_subdivide(tri, "e0").relabeled({})
        b = S.stellar_subdivide(tri.relabeled(ren), "x_e0")
        assert S.complexes_isomorphic(a, b)


class TestRelabelCommutes:
    REN = staticmethod(lambda c: {f: f"x_{f}" for f in c.face_ids})

    def test_blowup_move(self):
        tri = G.triangle_boundary()
        move = S.BlowupMove(case=3, base="v2", attach=("v2", "e1"), vertex="v2")
        a = S.blowup_move(tri, move)
        move_r = S.BlowupMove(case=3, base="x_v2", attach=("x_v2", "x_e1"),
                              vertex="x_v2")
        b = S.blowup_move(tri.relabeled(self.REN(tri)), move_r)
        assert S.complexes_isomorphic(a, b)

    def test_pucker(self):
        iv = G.interval()
        a = S.pucker(iv, "ab", 3)
        b = S.pucker(iv.relabeled(self.REN(iv)), "x_ab", 3)
        assert S.complexes_isomorphic(a, b)

    def test_morse_flow(self):
        st = S.stellar_subdivide(G.triangle_boundary(), "e0", new_vertex="E")
        a, _m, _c = S.morse_vertex_flow(st, "E", "v0")
        ren = self.REN(st)
        b, _m, _c = S.morse_vertex_flow(st.relabeled(ren), "x_E", "x_v0")
        assert S.complexes_isomorphic(a, b)


class TestBlowupMoves:
    def test_case1_identity(self):
        tri = G.triangle_boundary()
        out = S.blowup_move(tri, S.BlowupMove(case=1))
        assert dumps_complex(out) == dumps_complex(tri)

    def test_case3_pendant(self):
        tri = G.triangle_boundary()
        out = S.blowup_move(tri, S.BlowupMove(case=3, base="v2",
                                              attach=("v2",), vertex="v2"))
        assert out.f_vector() == (4, 4)
        assert S.homology(out).betti_vector() == (1, 1)

    def test_case3_with_two_face(self):
        full = G.full_simplex(2)
        move = S.BlowupMove(case=3, base="0", attach=("0", "0.1.2"), vertex="0")
        out = S.blowup_move(full, move)
        assert "0.1.2<v(0)" in out.face_ids
        assert S.homology(full).same_groups(S.homology(out))

    def test_case3_validation(self):
        tri = G.triangle_boundary()
        with pytest.raises(DescriptorInvalid):
            S.blowup_move(tri, S.BlowupMove(case=3, base="v2", attach=("v2",),
                                            vertex="v0"))
        with pytest.raises(DescriptorInvalid):
            S.blowup_move(tri, S.BlowupMove(case=3, base="v2", attach=("e0",),
                                            vertex="v2"))
        with pytest.raises(DescriptorInvalid):
            S.blowup_move(tri, S.BlowupMove(case=3, base="v2",
                                            attach=("v2", "nope"), vertex="v2"))

    def test_case3_duplicate_spans_rejected(self):
        c = G.multi_edge_complex(2)
        move = S.BlowupMove(case=3, base="u", attach=("u", "e0", "e1"),
                            vertex="u")
        with pytest.raises(DescriptorInvalid):
            S.blowup_move(c, move)

    def test_case3_filtered_level_required(self):
        rng = random.Random(5)
        c = with_random_levels(rng, G.triangle_boundary())
        with pytest.raises(DescriptorInvalid):
            S.blowup_move(c, S.BlowupMove(case=3, base="v2", attach=("v2",),
                                          vertex="v2"))
        lv = c.level("v2")
        out = S.blowup_move(c, S.BlowupMove(case=3, base="v2", attach=("v2",),
                                            vertex="v2", level=lv))
        assert out.has_levels

    def test_unknown_case(self):
        with pytest.raises(DescriptorInvalid):
            S.blowup_move(G.triangle_boundary(), S.BlowupMove(case=9))


class TestMorseFlow:
    def test_case3_roundtrip_exact(self):
        tri = G.triangle_boundary()
        out = S.blowup_move(tri, S.BlowupMove(case=3, base="v2",
                                              attach=("v2",), vertex="v2"))
        red, matching, cert = S.morse_vertex_flow(out, "v(v2)", "v2")
        assert red == tri
        assert cert["perfect"] and cert["acyclic"]
        assert len(matching) == 1

    def test_stellar_inverse_up_to_iso(self):
        tri = G.triangle_boundary()
        st = S.stellar_subdivide(tri, "e0", new_vertex="E")
        red, _m, cert = S.morse_vertex_flow(st, "E", "v0")
        assert red.f_vector() == (3, 3)
        assert S.complexes_isomorphic(red, tri)
        assert not cert["perfect"]
        assert homology_tables_equal(st, red)

    def test_not_adjacent(self):
        c = S.disjoint_union(G.triangle_boundary(), G.point_complex())
        with pytest.raises(PairingIncomplete):
            S.morse_vertex_flow(c, "p", "v0")

    def test_square_flow(self):
        c4 = G.cycle_complex(4)
        red, _m, _cert = S.morse_vertex_flow(c4, "v0", "v1")
        assert red.f_vector() == (3, 3)
        assert S.homology(red).betti_vector() == (1, 1)

    def test_ambiguous_span_rejected(self):
        from sncx.errors import PairingNotUnique
        c = G.multi_edge_complex(2)
        with pytest.raises(PairingNotUnique):
            S.morse_vertex_flow(c, "u", "w")

    def test_fuzz_flow_preserves_homology_when_it_applies(self):
        from sncx.errors import PairingIncomplete, PairingNotUnique
        rng = random.Random(99)
        applied = 0
        for _ in range(60):
            c = random_simplicial_complex(rng, max_verts=6, max_facets=5,
                                          max_dim=3)
            verts = c.faces_of_dim(0)
            if len(verts) < 2:
                continue
            src, dst = rng.sample(verts, 2)
            try:
                red, _m, cert = S.morse_vertex_flow(c, src, dst)
            except (PairingIncomplete, PairingNotUnique):
                continue
            assert cert["acyclic"]
            assert homology_tables_equal(c, red)
            assert src not in red.face_ids
            applied += 1
        assert applied >= 20

    def test_random_case3_roundtrips(self):
        rng = random.Random(33)
        done = 0
        while done < 25:
            c = random_simplicial_complex(rng, max_verts=6, max_facets=4,
                                          max_dim=3)
            base = c.face_ids[rng.randrange(len(c.face_ids))]
            up = c.star(base)
            extra = [f for f in up if f != base]
            rng.shuffle(extra)
            attach = (base,) + tuple(extra[:rng.randint(0, len(extra))])
            vj = rng.choice(list(c.vertices_of(base)))
            move = S.BlowupMove(case=3, base=base, attach=attach, vertex=vj,
                                new_vertex="E*")
            out = S.blowup_move(c, move)
            red, _m, cert = S.morse_vertex_flow(out, "E*", vj)
            assert cert["perfect"] and cert["acyclic"]
            assert red == c
            assert homology_tables_equal(out, c)
            done += 1


class TestPucker:
    def test_not_maximal(self):
        with pytest.raises(NotMaximal):
            S.pucker(G.full_simplex(2), "0.1", 2)

    def test_interval_theta(self):
        pk = S.pucker(G.interval(), "ab", 3)
        assert pk.f_vector() == (2, 3)
        assert S.homology(pk).betti_vector() == (1, 2)

    def test_identity_multiplicity(self):
        iv = G.interval()
        assert S.pucker(iv, "ab", 1) == iv

    def test_bad_multiplicity(self):
        with pytest.raises(BadMultiplicity):
            S.pucker(G.interval(), "ab", 0)

    def test_top_betti_increment_only(self):
        rng = random.Random(12)
        for _ in range(15):
            c = random_simplicial_complex(rng, max_dim=2)
            maximal = [f for f in c.face_ids if c.is_maximal(f)]
            sigma = rng.choice(maximal)
            d = rng.randint(2, 4)
            pk = S.pucker(c, sigma, d)
            hb, ha = S.homology(c, reduced=True), S.homology(pk, reduced=True)
            dim = c.dim(sigma)
            for k in range(c.dimension + 1):
                want = hb.betti(k) + (d - 1 if k == dim else 0)
                assert ha.betti(k) == want
                assert ha.torsion(k) == hb.torsion(k)


class TestScripts:
    def test_empty_script_identity(self):
        tri = G.triangle_boundary()
        final, log = S.run_blowup_script(tri, ())
        assert final == tri
        assert log.homology_constant
        assert len(log.steps) == 1

    def test_two_routes_equal_homology(self):
        tri = G.triangle_boundary()
        route_a, log_a = S.run_blowup_script(
            tri, (S.BlowupMove(case=2, face="e0"),))
        route_b, log_b = S.run_blowup_script(
            tri, (S.BlowupMove(case=3, base="v2", attach=("v2",), vertex="v2"),))
        assert log_a.homology_constant and log_b.homology_constant
        assert S.homology(route_a).table == S.homology(route_b).table
        assert route_a.f_vector() == route_b.f_vector() == (4, 4)

    def test_failing_step_index(self):
        tri = G.triangle_boundary()
        script = (S.BlowupMove(case=2, face="e0"),
                  S.BlowupMove(case=2, face="e0"))
        with pytest.raises(ScriptError) as err:
            S.run_blowup_script(tri, script)
        assert err.value.index == 2

    def test_random_mixed_scripts_stay_constant(self):
        rng = random.Random(271)
        for _ in range(15):
            c = with_random_levels(rng, random_simplicial_complex(
                rng, max_verts=5, max_facets=3, max_dim=2))
            cur = c
            moves = []
            for _step in range(3):
                if rng.random() < 0.5:
                    face = cur.face_ids[rng.randrange(len(cur.face_ids))]
                    move = S.BlowupMove(case=2, face=face)
                else:
                    base = cur.face_ids[rng.randrange(len(cur.face_ids))]
                    above = [f for f in cur.star(base) if f != base]
                    rng.shuffle(above)
                    attach = (base,) + tuple(above[:rng.randint(0, len(above))])
                    move = S.BlowupMove(
                        case=3, base=base, attach=attach,
                        vertex=rng.choice(list(cur.vertices_of(base))),
                        level=cur.level(base) + rng.randint(0, 1))
                try:
                    cur = S.blowup_move(cur, move)
                except S.SncxError:
                    continue
                moves.append(move)
            _final, log = S.run_blowup_script(c, tuple(moves))
            assert log.homology_constant, moves

    def test_filtered_script_per_level_log(self):
        recs = [
            {"id": "v0", "dim": 0, "facets": [], "level": 1},
            {"id": "v1", "dim": 0, "facets": [], "level": 1},
            {"id": "v2", "dim": 0, "facets": [], "level": 1},
            {"id": "e0", "dim": 1, "facets": ["v0", "v1"],
             "delta_order": ["v1", "v0"], "level": 1},
            {"id": "e1", "dim": 1, "facets": ["v1", "v2"],
             "delta_order": ["v2", "v1"], "level": 1},
            {"id": "e2", "dim": 1, "facets": ["v2", "v0"],
             "delta_order": ["v0", "v2"], "level": 1},
        ]
        c = S.new_complex(recs)
        script = (S.BlowupMove(case=3, base="v2", attach=("v2",), vertex="v2",
                               level=2),
                  S.BlowupMove(case=2, face="e0", new_vertex="B"))
        final, log = S.run_blowup_script(c, script)
        assert log.homology_constant
        assert final.has_levels
        for step in log.steps:
            assert "per_level" in step
