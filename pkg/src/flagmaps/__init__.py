"""
Flag systems of maps on surfaces.

A map is stored as three fixed-point-free involutions ``r0, r1, r2`` on a
set of flags.  The package computes surface invariants and automorphisms,
enumerates cosets of Coxeter and rotation groups, grows balls of the
universal {p, q} maps and estimates numbers of ends.
"""

from .builders import (PLATONIC, NonSimpleMapError, build_hemicube, build_platonic, build_square_triangle,
                       build_torus44, corpus, from_faces)
from .ends import (CoxeterCayleySource, EndsEstimate, EndsProfile, GraphSource, TreeSource, UniversalFlagSource,
                   ZdSource, ends_estimate, ends_profile, flag_graph_source, parse_source)
from .errors import ResourceCapExceeded
from .flags import (UNDEFINED, FlagSystem, MapFragment, SchlafliType, SurfaceInvariants, ValidationReport,
                    is_orientable, orbit_partition, schlafli_type, surface_invariants, validate)
from .io import FlagFileError, load, loads, save
from .presentations import (CayleyGraph, CosetTable, GroupPresentation, cayley_graph, coxeter_presentation,
                            parse_word, schwarz_presentation, todd_coxeter)
from .symmetry import (CHIRAL, OTHER, REGULAR, Automorphism, GeneratorSet, SymmetryClass, aut_group,
                       automorphism_from_pair, classify, reflection_generators, rotation_generators)
from .tessellation import UniversalBallSpec, fragment_local_check, universal_ball
from .verify import (EndsComparison, Insufficient, VerificationReport, compare_ends, disjoint_translates,
                     saturate, verify_chiral_correspondence, verify_correspondence, verify_regular_correspondence)

__all__ = [
    "PLATONIC", "NonSimpleMapError", "build_hemicube", "build_platonic", "build_square_triangle", "build_torus44",
    "corpus", "from_faces",
    "CoxeterCayleySource", "EndsEstimate", "EndsProfile", "GraphSource", "TreeSource", "UniversalFlagSource",
    "ZdSource", "ends_estimate", "ends_profile", "flag_graph_source", "parse_source",
    "ResourceCapExceeded",
    "UNDEFINED", "FlagSystem", "MapFragment", "SchlafliType", "SurfaceInvariants", "ValidationReport",
    "is_orientable", "orbit_partition", "schlafli_type", "surface_invariants", "validate",
    "FlagFileError", "load", "loads", "save",
    "CayleyGraph", "CosetTable", "GroupPresentation", "cayley_graph", "coxeter_presentation", "parse_word",
    "schwarz_presentation", "todd_coxeter",
    "CHIRAL", "OTHER", "REGULAR", "Automorphism", "GeneratorSet", "SymmetryClass", "aut_group",
    "automorphism_from_pair", "classify", "reflection_generators", "rotation_generators",
    "UniversalBallSpec", "fragment_local_check", "universal_ball",
    "EndsComparison", "Insufficient", "VerificationReport", "compare_ends", "disjoint_translates", "saturate",
    "verify_chiral_correspondence", "verify_correspondence", "verify_regular_correspondence",
]
