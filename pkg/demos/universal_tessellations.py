"""
Growing the universal {p,q} maps
================================

Balls in the flag graph of the universal {p,q} map.  Spherical types close
up into Platonic solids, Euclidean types show quadratic growth and
hyperbolic types grow exponentially.
"""

import numpy as np

from flagmaps import CoxeterCayleySource, UniversalBallSpec, fragment_local_check, universal_ball
from flagmaps.ends import ball
from flagmaps.tessellation import complete_vertex_ball_counts

for p, q in [(3, 3), (4, 3), (3, 5), (4, 4), (3, 6), (4, 5), (3, 7)]:
    spec = UniversalBallSpec(p, q, 12)
    frag = universal_ball(spec)
    spheres = np.bincount(frag.layer)
    status = "closed" if frag.is_closed() else f"{len(frag.boundary)} boundary flags"
    print(f"{{{p},{q}}} {spec.geometry:<10} {frag.n:>6} flags, {status:<20} spheres {spheres.tolist()}")

# square lattice: vertices within distance r of a vertex number 2r^2 + 2r + 1
counts = complete_vertex_ball_counts(universal_ball((4, 4, 30)))
print("\n{4,4} vertex balls:", counts)
print("2r^2+2r+1:        ", [2 * r * r + 2 * r + 1 for r in range(len(counts))])

# the flag ball is the Cayley ball of the Coxeter group; compare with the
# reflection-representation construction
frag = universal_ball((4, 5, 14))
cayley = ball(CoxeterCayleySource(4, 5), 14)
print("\n{4,5} flag spheres:  ", np.bincount(frag.layer).tolist())
print("[4,5] Cayley spheres:", [len(cayley.sphere(k)) for k in range(15)])
print("local check on the interior:", fragment_local_check(frag) or "ok")
