"""
Counting ends
=============

Remove a ball and count the pieces of the remainder that still reach far
out.  A line has two such pieces, a plane one, a tree more and more.  The
universal hyperbolic maps behave like the plane.
"""

from flagmaps import CoxeterCayleySource, TreeSource, UniversalFlagSource, ZdSource, compare_ends, ends_profile
from flagmaps.ends import free_group_source

for src in [ZdSource(1), ZdSource(2), TreeSource(3), free_group_source(2),
            UniversalFlagSource(4, 5), CoxeterCayleySource(4, 5), UniversalFlagSource(3, 7)]:
    prof = ends_profile(src, 4, 6)
    print(f"{prof.source:<24} counts {prof.counts}  verdict {prof.verdict}")

print()
print(ends_profile(UniversalFlagSource(4, 4), 4, 6).format_table())

# flag graph and Cayley graph of the same map should agree
print()
print(compare_ends("universal:4,5", 4, 6).format_table())
