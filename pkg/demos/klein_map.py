"""
The Klein quartic from a presentation
=====================================

Adding the relator (abc)^8 to the Coxeter group [3,7] leaves a finite
group of order 336.  Its coset table is a flag system: the regular map of
type {3,7} on a genus 3 surface.
"""

from flagmaps import coxeter_presentation, disjoint_translates, saturate, surface_invariants, todd_coxeter
from flagmaps import verify_regular_correspondence
from flagmaps.verify import flags_from_coset_table

pres = coxeter_presentation(3, 7).with_relators("abc^8")
print(pres)
table = todd_coxeter(pres, [])
print("cosets:", table.index, " (largest table during enumeration:", table.high_water, ")")

klein = flags_from_coset_table(table)
inv = surface_invariants(klein)
print(f"V={inv.V} E={inv.E} F={inv.F} chi={inv.chi} orientable={inv.orientable} genus={inv.genus}")

# the group elements and the flags are the same thing, up to a labelled isomorphism
report = verify_regular_correspondence(klein)
print("Cayley graph of Aut vs flag graph:", "pass" if report.passed else "FAIL", report.details)

# the flags touching one flag's vertex, edge and face, and disjoint copies of that patch
patch = saturate(klein, [0])
print("saturation of one flag:", len(patch), "flags")
for count in (4, 8, 12, 16):
    found = disjoint_translates(klein, [0], count)
    print(f"  {count:>2} disjoint translates:", "found" if found else f"only {found.found}")

# without the extra relator the group is infinite and the enumeration only stops at the cap
open_ended = todd_coxeter(coxeter_presentation(3, 7), [], max_cosets=20000)
print("plain [3,7]:", open_ended.status, "at", open_ended.high_water, "cosets")
