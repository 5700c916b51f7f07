"""
Automorphisms of flag systems, regular/chiral classification and the
reflection and rotation generators of flag-transitive maps.

An automorphism is a flag permutation commuting with ``r0, r1, r2``.  On a
connected map it is fixed by the image of a single flag, so everything
here is built on :func:`propagate`.

Composition is function composition: ``(f * g)(x) == f(g(x))``.  With this
convention the flag ``(f * rho_j)(base)`` is ``r_j(f(base))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .flags import FlagSystem, is_orientable, schlafli_type


class Automorphism:
    """A flag permutation, stored as its image array."""

    __slots__ = ("image", "_key")

    def __init__(self, image: Sequence[int]):
        self.image = tuple(int(v) for v in image)
        self._key = hash(self.image)

    @classmethod
    def identity(cls, n: int) -> "Automorphism":
        return cls(range(n))

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __len__(self) -> int:
        return len(self.image)

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        img = self.image
        return Automorphism([img[y] for y in other.image])

    def __pow__(self, k: int) -> "Automorphism":
        if k < 0:
            return self.inverse() ** (-k)
        out = Automorphism.identity(len(self))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.image)
        for x, y in enumerate(self.image):
            inv[y] = x
        return Automorphism(inv)

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.image))

    def order(self) -> int:
        """Least k >= 1 with self**k the identity (lcm of cycle lengths)."""
        from math import lcm

        seen = [False] * len(self.image)
        out = 1
        for x in range(len(self.image)):
            if seen[x]:
                continue
            k, y = 0, x
            while not seen[y]:
                seen[y] = True
                y = self.image[y]
                k += 1
            out = lcm(out, k)
        return out

    def commutes_with(self, fs: FlagSystem) -> bool:
        img = np.array(self.image)
        return all(np.array_equal(img[ri], ri[img]) for ri in fs.r)

    def __eq__(self, other) -> bool:
        return isinstance(other, Automorphism) and self.image == other.image

    def __hash__(self) -> int:
        return self._key

    def __repr__(self) -> str:
        if len(self.image) <= 12:
            return f"Automorphism({list(self.image)})"
        return f"Automorphism(<{len(self.image)} flags>, 0->{self.image[0]})"


def propagate(src: FlagSystem, a: int, dst: FlagSystem, b: int) -> list[int] | None:
    """The unique map of flags ``src -> dst`` with ``a -> b`` that commutes
    with the three involutions, or None when propagation hits a conflict.

    Only flags connected to ``a`` are mapped; on a connected map this is a
    full bijection.
    """
    if src.n != dst.n:
        return None
    rs, rd = src.lists, dst.lists
    img = [-1] * src.n
    used = [False] * dst.n
    img[a] = b
    used[b] = True
    stack = [a]
    pairs = list(zip(rs, rd))
    while stack:
        x = stack.pop()
        fx = img[x]
        for si, di in pairs:
            y = si[x]
            z = di[fx]
            fy = img[y]
            if fy < 0:
                if used[z]:
                    return None
                img[y] = z
                used[z] = True
                stack.append(y)
            elif fy != z:
                return None
    return img


def isomorphism(src: FlagSystem, a: int, dst: FlagSystem, b: int) -> list[int] | None:
    """Flag isomorphism ``src -> dst`` sending ``a`` to ``b``, if any."""
    img = propagate(src, a, dst, b)
    if img is None or min(img, default=0) < 0:
        return None
    return img


def automorphism_from_pair(fs: FlagSystem, a: int, b: int) -> Automorphism | None:
    """The unique automorphism mapping flag ``a`` to flag ``b``, or None."""
    img = isomorphism(fs, a, fs, b)
    return None if img is None else Automorphism(img)


# ---------------------------------------------------------------------------
# classification


REGULAR = "Regular"
CHIRAL = "Chiral"
OTHER = "Other"


@dataclass
class SymmetryClass:
    tag: str
    orbit_count: int
    orbits: list[frozenset[int]] = field(default_factory=list, repr=False)
    diagnostic: str = ""

    @property
    def is_regular(self) -> bool:
        return self.tag == REGULAR

    @property
    def is_chiral(self) -> bool:
        return self.tag == CHIRAL


def aut_group(fs: FlagSystem, base: int = 0) -> list[Automorphism]:
    """All automorphisms, ordered by the image of ``base`` (identity first)."""
    out = []
    for target in [base] + [t for t in range(fs.n) if t != base]:
        f = automorphism_from_pair(fs, base, target)
        if f is not None:
            out.append(f)
    return out


def flag_orbits(fs: FlagSystem, group: Iterable[Automorphism]) -> list[frozenset[int]]:
    """Orbits of the flags under a set of automorphisms."""
    n = fs.n
    rows, cols = [], []
    for g in group:
        rows.append(np.arange(n))
        cols.append(np.array(g.image))
    if not rows:
        return [frozenset([x]) for x in range(n)]
    rows, cols = np.concatenate(rows), np.concatenate(cols)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    k, labels = connected_components(graph, directed=False)
    orbits: dict[int, list[int]] = {}
    for x, lab in enumerate(labels.tolist()):
        orbits.setdefault(lab, []).append(x)
    return sorted((frozenset(o) for o in orbits.values()), key=min)


def adjacent_flags_cross(fs: FlagSystem, orbits: Sequence[frozenset[int]]) -> bool:
    """True iff every pair of adjacent flags lies in different orbits."""
    label = np.empty(fs.n, dtype=np.int64)
    for k, orbit in enumerate(orbits):
        label[list(orbit)] = k
    return all(bool(np.all(label[ri] != label)) for ri in fs.r)


def classify(fs: FlagSystem, group: list[Automorphism] | None = None) -> SymmetryClass:
    """Regular (one flag orbit), Chiral (two orbits, adjacent flags always in
    different orbits) or Other."""
    if group is None:
        group = aut_group(fs)
    if len(group) == fs.n:
        return SymmetryClass(REGULAR, 1, [frozenset(range(fs.n))])
    orbits = flag_orbits(fs, group)
    if len(orbits) == 2 and adjacent_flags_cross(fs, orbits):
        if not is_orientable(fs):
            # two orbits with the crossing property force a bipartite flag graph
            return SymmetryClass(OTHER, 2, orbits,
                                 diagnostic="impossible: chiral pattern on a non-orientable map")
        return SymmetryClass(CHIRAL, 2, orbits)
    return SymmetryClass(OTHER, len(orbits), orbits)


# ---------------------------------------------------------------------------
# generators


@dataclass
class GeneratorSet:
    kind: str  # "reflections" or "rotations"
    base: int
    generators: dict[str, Automorphism]
    p: int
    q: int
    relations: dict[str, bool]
    convention: str = ""

    def __getitem__(self, name: str) -> Automorphism:
        return self.generators[name]

    @property
    def orders(self) -> dict[str, int]:
        return {name: g.order() for name, g in self.generators.items()}

    @property
    def relations_hold(self) -> bool:
        return all(self.relations.values())


def reflection_generators(fs: FlagSystem, base: int = 0) -> GeneratorSet | None:
    """``rho_j``: the automorphism sending ``base`` to its j-adjacent flag.

    Exists only for regular maps.  The Coxeter relations are checked as
    permutation identities.
    """
    rho = []
    for j in range(3):
        g = automorphism_from_pair(fs, base, int(fs.r[j][base]))
        if g is None:
            return None
        rho.append(g)
    st = schlafli_type(fs)
    if not st.uniform:
        return None
    p, q = st.p, st.q
    r0, r1, r2 = rho
    relations = {
        "rho0^2": (r0 * r0).is_identity(),
        "rho1^2": (r1 * r1).is_identity(),
        "rho2^2": (r2 * r2).is_identity(),
        "(rho0 rho2)^2": ((r0 * r2) ** 2).is_identity(),
        f"(rho0 rho1)^{p}": ((r0 * r1) ** p).is_identity(),
        f"(rho1 rho2)^{q}": ((r1 * r2) ** q).is_identity(),
    }
    return GeneratorSet("reflections", base, {"rho0": r0, "rho1": r1, "rho2": r2}, p, q, relations)


ROTATION_CONVENTIONS = {
    # name: (steps for R, steps for S); steps are applied in list order
    "R:r1r0,S:r2r1": ((0, 1), (1, 2)),
    "R:r0r1,S:r1r2": ((1, 0), (2, 1)),
}


def _walk(fs: FlagSystem, x: int, steps: Sequence[int]) -> int:
    for j in steps:
        x = int(fs.r[j][x])
    return x


def rotation_generators(fs: FlagSystem, base: int = 0) -> GeneratorSet | None:
    """Face rotation ``R`` and vertex rotation ``S`` about the base flag,
    verified against ``R^p = S^q = (RS)^2 = 1``.

    ``R`` sends ``base`` to ``r1(r0(base))`` and ``S`` sends it to
    ``r2(r1(base))``; the mirrored convention is tried only if the first
    fails the relations.
    """
    if not is_orientable(fs):
        return None
    st = schlafli_type(fs)
    if not st.uniform:
        return None
    p, q = st.p, st.q
    for name, (rsteps, ssteps) in ROTATION_CONVENTIONS.items():
        R = automorphism_from_pair(fs, base, _walk(fs, base, rsteps))
        S = automorphism_from_pair(fs, base, _walk(fs, base, ssteps))
        if R is None or S is None:
            return None
        relations = {
            f"R^{p}": (R ** p).is_identity(),
            f"S^{q}": (S ** q).is_identity(),
            "(RS)^2": ((R * S) ** 2).is_identity(),
        }
        if all(relations.values()):
            return GeneratorSet("rotations", base, {"R": R, "S": S}, p, q, relations, convention=name)
    return None


def generated_subgroup(gens: Iterable[Automorphism]) -> set[Automorphism]:
    """Closure of a set of automorphisms under composition."""
    gens = list(gens)
    if not gens:
        return set()
    ident = Automorphism.identity(len(gens[0]))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = f * g
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen
