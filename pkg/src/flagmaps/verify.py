"""
Finite checks of the flag/group correspondence behind the ends results.

For a regular map the flags are in bijection with the automorphism group
(``f <-> f(base)``) and the j-adjacency of flags is right multiplication by
``rho_j``; for a chiral map one flag orbit is in bijection with the group
and the rotations ``R, S`` give the edges.  The checks below build both
sides independently and compare them, compare end profiles of the flag
graph and the Cayley graph, and search for pairwise disjoint translates
of a saturated flag set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .ends import (CoxeterCayleySource, EndsProfile, UniversalFlagSource, cayley_source, ends_profile,
                   flag_graph_source)
from .flags import EDGE, FACE, VERTEX, FlagSystem, cycle_of
from .presentations import CayleyGraph, CosetTable
from .symmetry import (ROTATION_CONVENTIONS, Automorphism, aut_group, classify, generated_subgroup, isomorphism,
                       reflection_generators, rotation_generators)


@dataclass
class VerificationReport:
    check: str
    passed: bool
    message: str = ""
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        return {"check": self.check, "passed": self.passed, "message": self.message, "details": self.details}


def cayley_graph_of(group: Sequence[Automorphism], gens: dict[str, Automorphism]) -> CayleyGraph:
    """Right Cayley graph ``f -> f * g`` of a permutation group given as a list."""
    index = {f: k for k, f in enumerate(group)}
    edges = {}
    for name, g in gens.items():
        col = []
        for f in group:
            h = f * g
            if h not in index:
                raise ValueError(f"group is not closed under right multiplication by {name}")
            col.append(index[h])
        edges[name] = col
    involutions = tuple((g * g).is_identity() for g in gens.values())
    return CayleyGraph(len(group), tuple(gens), involutions, edges)


def flags_from_coset_table(table: CosetTable) -> FlagSystem:
    """Flag system whose flags are the cosets and whose ``r_j`` is the
    action of the j-th involutory generator."""
    if not table.complete:
        raise ValueError("coset table is not complete")
    if len(table.names) != 3 or not all(table.involutions):
        raise ValueError("need three involutory generators")
    cols = [table.action[name] for name in table.names]
    return FlagSystem(*cols, meta={"name": f"cosets of {table.title or 'presentation'}"})


def flags_from_group(group: Sequence[Automorphism], gens: Sequence[Automorphism]) -> FlagSystem:
    """Flags := group elements, ``r_j`` := right multiplication by ``gens[j]``."""
    graph = cayley_graph_of(group, {f"rho{j}": g for j, g in enumerate(gens)})
    return FlagSystem(*(graph.edges[f"rho{j}"] for j in range(3)), meta={"name": "flags from group"})


def verify_regular_correspondence(fs: FlagSystem, base: int = 0) -> VerificationReport:
    """Check that ``f -> f(base)`` is a labelled isomorphism from the Cayley
    graph of Aut with generators rho_0, rho_1, rho_2 onto the flag graph."""
    name = "regular correspondence"
    group = aut_group(fs, base)
    cls = classify(fs, group)
    if not cls.is_regular:
        return VerificationReport(name, False, f"precondition: map is {cls.tag}, not Regular")
    gens = reflection_generators(fs, base)
    if gens is None or not gens.relations_hold:
        return VerificationReport(name, False, "reflection generators missing or relations fail")
    rho = [gens[f"rho{j}"] for j in range(3)]
    graph = cayley_graph_of(group, {f"rho{j}": rho[j] for j in range(3)})
    phi = [f(base) for f in group]
    details = {"vertices": graph.vertex_count, "flags": fs.n, "degree": 3, "base": base}
    if sorted(phi) != list(range(fs.n)):
        return VerificationReport(name, False, "f -> f(base) is not a bijection onto the flags", details)
    if not group[0].is_identity() or phi[0] != base:
        return VerificationReport(name, False, "identity does not map to the base flag", details)
    r = fs.lists
    for j in range(3):
        col = graph.edges[f"rho{j}"]
        for v in range(graph.vertex_count):
            if phi[col[v]] != r[j][phi[v]]:
                return VerificationReport(
                    name, False, f"edge mismatch: element {v} --rho{j}--> {col[v]} maps to flags "
                                 f"{phi[v]} -> {phi[col[v]]}, expected r{j} image {r[j][phi[v]]}", details)
    rebuilt = flags_from_group(group, rho)
    details["rebuilt_isomorphic"] = isomorphism(rebuilt, 0, fs, base) is not None
    details["generated_by_reflections"] = len(generated_subgroup(rho)) == len(group)
    ok = details["rebuilt_isomorphic"] and details["generated_by_reflections"]
    return VerificationReport(name, ok, "labelled isomorphism" if ok else "rebuilt flag system differs", details)


def verify_chiral_correspondence(fs: FlagSystem, base: int = 0) -> VerificationReport:
    """Check the orbit of the base flag against the Cayley graph of <R, S>,
    and that every flag is accounted for as some ``Phi_f`` or ``Psi_f``."""
    name = "chiral correspondence"
    group = aut_group(fs, base)
    cls = classify(fs, group)
    if not cls.is_chiral:
        return VerificationReport(name, False, f"precondition: map is {cls.tag}, not Chiral")
    gens = rotation_generators(fs, base)
    if gens is None:
        return VerificationReport(name, False, "rotation generators missing or relations fail")
    R, S = gens["R"], gens["S"]
    rsteps, ssteps = ROTATION_CONVENTIONS[gens.convention]
    graph = cayley_graph_of(group, {"R": R, "S": S})
    phi = [f(base) for f in group]
    details = {"vertices": graph.vertex_count, "flags": fs.n, "out_degree": 2, "base": base,
               "convention": gens.convention}
    orbit = next(o for o in cls.orbits if base in o)
    if sorted(phi) != sorted(orbit):
        return VerificationReport(name, False, "f -> f(base) is not a bijection onto the base orbit", details)
    if len(generated_subgroup([R, S])) != len(group):
        return VerificationReport(name, False, "R and S do not generate Aut", details)
    r = fs.lists

    def walk(x, steps):
        for j in steps:
            x = r[j][x]
        return x

    for label, steps in (("R", rsteps), ("S", ssteps)):
        col = graph.edges[label]
        for v in range(graph.vertex_count):
            if phi[col[v]] != walk(phi[v], steps):
                return VerificationReport(
                    name, False, f"edge mismatch at element {v} --{label}-->: flag {phi[col[v]]} "
                                 f"!= walk {walk(phi[v], steps)}", details)

    # the other orbit: Psi_f = f(Psi_Id) with Psi_Id the 0-adjacent flag of the base
    psi_id = r[0][base]
    psi = [f(psi_id) for f in group]
    if sorted(phi + psi) != list(range(fs.n)):
        return VerificationReport(name, False, "flags are not partitioned into Phi_f and Psi_f", details)
    index = {f: k for k, f in enumerate(group)}
    R_back = R ** (gens.p - 1)
    for k, f in enumerate(group):
        # the R-arc crosses Psi_f; the S-arc crosses Psi_{f R^(p-1)}
        if walk(phi[k], rsteps[:1]) != psi[k]:
            return VerificationReport(name, False, f"R-arc from element {k} misses Psi_f", details)
        g = index[f * R_back]
        if walk(phi[k], ssteps[:1]) != psi[g]:
            return VerificationReport(name, False, f"S-arc from element {k} misses Psi_(f R^(p-1))", details)
    details["psi_bookkeeping"] = True
    return VerificationReport(name, True, "labelled isomorphism on the base orbit", details)


def verify_correspondence(fs: FlagSystem, base: int = 0) -> VerificationReport:
    """Dispatch to the regular or chiral check according to the map's class."""
    cls = classify(fs)
    if cls.is_regular:
        return verify_regular_correspondence(fs, base)
    if cls.is_chiral:
        return verify_chiral_correspondence(fs, base)
    return VerificationReport("correspondence", False, f"map is {cls.tag}; neither regular nor chiral")


# ---------------------------------------------------------------------------
# ends comparison


@dataclass
class EndsComparison:
    flag_profile: EndsProfile
    cayley_profile: EndsProfile

    @property
    def passed(self) -> bool:
        return self.flag_profile.verdict == self.cayley_profile.verdict

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict:
        return {"passed": self.passed, "flag_graph": self.flag_profile.as_dict(),
                "cayley_graph": self.cayley_profile.as_dict()}

    def format_table(self) -> str:
        lines = [f"{'inner':>5} {'outer':>5} {'flags':>6} {'cayley':>6}"]
        for a, b in zip(self.flag_profile.rows, self.cayley_profile.rows):
            lines.append(f"{a.inner_radius:>5} {a.outer_radius:>5} {a.component_count:>6} {b.component_count:>6}")
        lines.append(f"verdicts: flags={self.flag_profile.verdict} cayley={self.cayley_profile.verdict} "
                     f"-> {'pass' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _finite_cayley_source(fs: FlagSystem):
    group = aut_group(fs)
    cls = classify(fs, group)
    if cls.is_regular:
        gens = reflection_generators(fs)
        named = {f"rho{j}": gens[f"rho{j}"] for j in range(3)}
    elif cls.is_chiral:
        gens = rotation_generators(fs)
        named = {"R": gens["R"], "S": gens["S"]}
    else:
        raise ValueError(f"map is {cls.tag}; its automorphism group does not act transitively")
    return cayley_source(cayley_graph_of(group, named), name=f"aut:{fs.meta.get('name', '?')}")


def compare_ends(source, inner: int, spread: int) -> EndsComparison:
    """End profiles of a map's flag graph and of the matching Cayley graph.

    ``source`` is a finite FlagSystem (compared with the Cayley graph of its
    automorphism group) or ``("universal", p, q)`` / ``"universal:p,q"``
    (the grown universal map against the Coxeter group [p, q]).
    """
    if isinstance(source, str):
        kind, _, arg = source.partition(":")
        if kind == "file":
            from .io import load

            source = load(arg)
        elif kind == "universal":
            p, q = (int(x) for x in arg.split(","))
            source = ("universal", p, q)
        else:
            raise ValueError(f"cannot compare ends for source {source!r}")
    if isinstance(source, FlagSystem):
        flag_src = flag_graph_source(source)
        cayley_src = _finite_cayley_source(source)
    else:
        _, p, q = source
        flag_src = UniversalFlagSource(p, q)
        cayley_src = CoxeterCayleySource(p, q)
    return EndsComparison(ends_profile(flag_src, inner, spread), ends_profile(cayley_src, inner, spread))


# ---------------------------------------------------------------------------
# saturation and translates


def saturate(fs: FlagSystem, seed: Iterable[int]) -> frozenset[int]:
    """All flags sharing a vertex, an edge or a face with some seed flag."""
    seed = list(seed)
    if not seed:
        raise ValueError("seed must be non-empty")
    r = fs.lists
    out: set[int] = set()
    for x in seed:
        for pair in (VERTEX, EDGE, FACE):
            out.update(cycle_of(r, x, pair))
    return frozenset(out)


@dataclass
class Insufficient:
    """Fewer disjoint translates exist than requested (greedy search)."""

    found: int

    def __bool__(self) -> bool:
        return False


def disjoint_translates(fs: FlagSystem, seed: Iterable[int], count: int,
                        group: Sequence[Automorphism] | None = None) -> list[Automorphism] | Insufficient:
    """Greedily pick automorphisms whose images of ``saturate(seed)`` are
    pairwise disjoint; the identity is tried first."""
    if count < 1:
        raise ValueError("count must be positive")
    if group is None:
        group = aut_group(fs)
    block = saturate(fs, seed)
    used: set[int] = set()
    witnesses = []
    for g in group:
        image = {g(x) for x in block}
        if used.isdisjoint(image):
            witnesses.append(g)
            used |= image
            if len(witnesses) == count:
                return witnesses
    return Insufficient(len(witnesses))


def translates_are_disjoint(fs: FlagSystem, seed: Iterable[int], witnesses: Sequence[Automorphism]) -> bool:
    block = saturate(fs, seed)
    images = [frozenset(g(x) for x in block) for g in witnesses]
    return all(images[i].isdisjoint(images[j]) for i in range(len(images)) for j in range(i + 1, len(images)))
