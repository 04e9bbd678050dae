"""Boundary complexes that are not wedges of spheres.

The link of the origin in the fan of a product of three projective
lines is an octahedron.  Inverting the torus extends to the
compactification and acts antipodally on that sphere; the quotient
boundary complex is a projective plane, whose 2-torsion refutes any
wedge-of-spheres certificate.
"""

import sncx as S
from sncx import gallery as G
from sncx.snc import antipodal_ray_map, fan_ray_involution

fan = G.product_of_lines_fan(3)
link = S.toric_link(fan)
print("link of the fan of (P^1)^3:", link.f_vector())
print("homology:", S.homology(link))

# Pair each ray with its negative and descend to faces.
pairing = fan_ray_involution(fan, antipodal_ray_map(fan))
plane = link.quotient_free_involution(pairing)
print("\nantipodal quotient:", plane.f_vector(),
      "euler characteristic:", plane.euler_characteristic())
print("homology:", S.homology(plane))

# Torsion in degree one: not a wedge of circles, not simply connected.
print("\nwedge certificate at d=1:", S.wedge_certificate(plane, 1))
pres = S.fundamental_group_presentation(plane)
simplified, status = S.tietze_simplify(pres)
print("fundamental group reduces to:", simplified.describe(), f"({status})")
print("abelianization:", S.abelianization(simplified))

# For contrast: the plane's double cover certifies as a single 2-sphere.
print("\nthe octahedron itself:", S.wedge_certificate(link, 2))
