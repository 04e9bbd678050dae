"""Resolution complexes of hypersurface singularities, from exponents alone.

For a singularity general with respect to its Newton polyhedron, the
resolution complex is modeled by the interior part of the subdivision
the inner normal fan induces on the standard simplex, puckered along
the cells dual to compact edges.  The pipeline runs on the exponent
vectors and certifies the wedge-of-spheres conclusion.
"""

import json

import sncx as S

SUPPORTS = {
    "ordinary double point x^2+y^2+z^2": [(2, 0, 0), (0, 2, 0), (0, 0, 2)],
    "one interior lattice point x^4+y^4+z^4+xyz": [(4, 0, 0), (0, 4, 0),
                                                   (0, 0, 4), (1, 1, 1)],
    "E8 surface singularity x^2+y^3+z^5": [(2, 0, 0), (0, 3, 0), (0, 0, 5)],
}

for name, support in SUPPORTS.items():
    np_ = S.newton_polyhedron(support)
    print(f"--- {name}")
    compact = [f.normal for f in np_.facets if f.compact]
    print("  compact facet normals:", compact)
    print("  compact edge lengths:",
          sorted(e.length for e in np_.compact_edges))

    model = S.resolution_complex(np_)
    print("  resolution complex model:", model.f_vector(),
          S.homology(model, reduced=True))

    report = S.w0_report(np_)
    print("  predicted sphere counts:", report["predicted"],
          "(agree)" if report["variants_agree"] else "(formula variants disagree!)")
    print("  weight-zero reduced cohomology:",
          json.dumps(report["weight_zero_reduced_cohomology"]))
    print("  verdict:", report["wedge_certificate"]["status"],
          report["wedge_certificate"]["count"])

# Boundary complexes of nondegenerate curves in a toric surface: the
# doubled unit square meets the boundary in eight points.
print("--- bidegree (2,2) curve in P^1 x P^1")
curve_boundary = S.torus_hypersurface_boundary_complex(
    [(0, 0), (2, 0), (0, 2), (2, 2)])
print("  boundary complex:", curve_boundary.f_vector(),
      S.homology(curve_boundary, reduced=True))
print("  certificate:", S.wedge_certificate(curve_boundary, 0))
