"""A tour of dual complexes of boundary divisors.

Three coordinate lines in the plane cross pairwise, so their dual
complex is a triangle.  Blowing up changes the compactification but
not the homotopy type: we replay the two classical blowup figures and
watch the homology log stay constant.
"""

import sncx as S

# The torus complement of the three coordinate lines: components L1..L3,
# one pairwise intersection point per pair of lines.
lines = S.StrataDescription(
    components=(S.Component("L1"), S.Component("L2"), S.Component("L3")),
    strata=(S.Stratum((0, 1), "P12", {0: "L2", 1: "L1"}),
            S.Stratum((0, 2), "P13", {0: "L3", 2: "L1"}),
            S.Stratum((1, 2), "P23", {1: "L3", 2: "L2"})))
triangle = S.dual_complex(lines)
print("triangle f-vector:", triangle.f_vector())
print("homology:", S.homology(triangle))

# Blowing up the point where L1 meets L2 separates their strict
# transforms; on the dual complex this is stellar subdivision of the
# edge P12, giving a square.
square, log = S.run_blowup_script(
    triangle, (S.BlowupMove(case=2, face="P12"),))
print("\nafter subdividing P12:", square.f_vector())
print("homology constant along the script:", log.homology_constant)

# Blowing up a point on only one line hangs a pendant edge on the
# complex instead (the new exceptional component meets only L3).
pendant, log = S.run_blowup_script(
    triangle, (S.BlowupMove(case=3, base="L3", attach=("L3",), vertex="L3"),))
print("\nafter the pendant blowup:", pendant.f_vector())
print("homology:", S.homology(pendant))

# The two routes compactify the same torus, and indeed the complexes
# have identical homology; the pendant even flows back.
restored, matching, cert = S.morse_vertex_flow(pendant, "v(L3)", "L3")
print("\nflowing the pendant vertex back:", restored == triangle,
      "(matching perfect:", cert["perfect"], ")")

# The conic-pair complement: two vertices, four edges, a wedge of
# three circles.  Subdividing every edge makes the complex simplicial
# without touching the homotopy type.
conics = S.StrataDescription(
    components=(S.Component("C1"), S.Component("C2")),
    strata=tuple(S.Stratum((0, 1), f"Q{i}", {0: "C2", 1: "C1"})
                 for i in range(4)))
banana = S.dual_complex(conics)
print("\nconic pair:", banana.f_vector(), S.homology(banana))
cur = banana
for q in ("Q0", "Q1", "Q2", "Q3"):
    cur = S.stellar_subdivide(cur, q)
print("subdivided:", cur.f_vector(), S.homology(cur))
print("wedge certificate:", S.wedge_certificate(cur, 1))
