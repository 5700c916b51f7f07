"""
Regular and chiral maps from the corpus
=======================================

Every map is a set of flags with three involutions.  Here we count
vertices, edges and faces, find the automorphism group by propagation and
sort the maps into Regular, Chiral and Other.
"""

from flagmaps import classify, corpus, rotation_generators, schlafli_type, surface_invariants

maps = corpus()

print(f"{'map':<18}{'flags':>6}{'V':>4}{'E':>4}{'F':>4}{'chi':>5}  orient  genus  type        class    orbits")
for name, fs in maps.items():
    inv = surface_invariants(fs)
    cls = classify(fs)
    print(f"{name:<18}{fs.n:>6}{inv.V:>4}{inv.E:>4}{inv.F:>4}{inv.chi:>5}  {str(inv.orientable):<6}  "
          f"{inv.genus:>5}  {str(schlafli_type(fs)):<10}  {cls.tag:<7}  {cls.orbit_count}")

# torus44(2,1) is the smallest chiral map here: the square lattice folded
# onto a torus along a skew vector.  Its rotations still satisfy the
# triangle-group relations.
t21 = maps["torus44(2,1)"]
rot = rotation_generators(t21)
print()
print("torus44(2,1) rotations:", rot.orders, "relations", rot.relations)

# adjacent flags always fall in different orbits
orbits = classify(t21).orbits
side = {x: k for k, orbit in enumerate(orbits) for x in orbit}
print("adjacent flags share an orbit:", any(side[x] == side[int(ri[x])] for ri in t21.r for x in range(t21.n)))
