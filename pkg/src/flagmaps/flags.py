"""
Flag systems: combinatorial maps encoded by three involutions on flags.

A flag is an incident (vertex, edge, face) triple.  ``r0`` changes the
vertex, ``r1`` the edge and ``r2`` the face, keeping the other two.  With
this convention

    vertices = <r1, r2>-orbits,  edges = <r0, r2>-orbits,  faces = <r0, r1>-orbits.

Flags are dense indices ``0..n-1`` and the involutions are read-only
integer arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

UNDEFINED = -1

VERTEX = (1, 2)
EDGE = (0, 2)
FACE = (0, 1)


def _as_index_array(values) -> np.ndarray:
    arr = np.array(values, dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError("involution must be a one-dimensional sequence")
    arr.setflags(write=False)
    return arr


class FlagSystem:
    """A closed map given by its flag involutions ``r0, r1, r2``.

    Construction does not validate; call :func:`validate` on untrusted
    input.
    """

    def __init__(self, r0, r1, r2, meta: dict | None = None):
        self.r = (_as_index_array(r0), _as_index_array(r1), _as_index_array(r2))
        n = len(self.r[0])
        if any(len(ri) != n for ri in self.r):
            raise ValueError("involutions must have equal length")
        self.n = n
        self.meta = dict(meta or {})

    @property
    def r0(self) -> np.ndarray:
        return self.r[0]

    @property
    def r1(self) -> np.ndarray:
        return self.r[1]

    @property
    def r2(self) -> np.ndarray:
        return self.r[2]

    @cached_property
    def lists(self) -> tuple[list[int], list[int], list[int]]:
        # plain lists are much faster than numpy for scalar walks
        return tuple(ri.tolist() for ri in self.r)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and all(np.array_equal(a, b) for a, b in zip(self.r, other.r))

    def __hash__(self):
        return hash((self.n,) + tuple(ri.tobytes() for ri in self.r))

    def __repr__(self) -> str:
        name = self.meta.get("name")
        extra = f" {name!r}" if name else ""
        return f"{type(self).__name__}({self.n} flags{extra})"

    def dual(self) -> "FlagSystem":
        """Swap the roles of vertices and faces."""
        return FlagSystem(self.r2, self.r1, self.r0, meta={"name": f"dual({self.meta.get('name', '?')})"})

    def relabel(self, perm: Sequence[int]) -> "FlagSystem":
        """Return the isomorphic flag system in which flag ``x`` becomes ``perm[x]``."""
        perm = np.asarray(perm, dtype=np.int64)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        return FlagSystem(*(perm[ri[inv]] for ri in self.r), meta=self.meta)


class MapFragment(FlagSystem):
    """A flag system with partial involutions.

    Undefined images are stored as ``UNDEFINED`` (-1); flags with an
    undefined image are boundary flags.
    """

    def __init__(self, r0, r1, r2, meta: dict | None = None, layer=None):
        super().__init__(r0, r1, r2, meta)
        self.layer = None if layer is None else _as_index_array(layer)

    @cached_property
    def boundary(self) -> frozenset[int]:
        mask = np.zeros(self.n, dtype=bool)
        for ri in self.r:
            mask |= ri == UNDEFINED
        return frozenset(np.flatnonzero(mask).tolist())

    @cached_property
    def interior(self) -> frozenset[int]:
        """Flags whose three images are defined and whose vertex, edge and
        face cycles all close up."""
        out = []
        for x in range(self.n):
            if x in self.boundary:
                continue
            if all(_closed_cycle(self.lists, x, pair) for pair in (VERTEX, EDGE, FACE)):
                out.append(x)
        return frozenset(out)

    def is_interior(self, x: int) -> bool:
        return x in self.interior

    def is_closed(self) -> bool:
        return not self.boundary

    def to_flag_system(self) -> FlagSystem:
        if not self.is_closed():
            raise ValueError(f"fragment has {len(self.boundary)} boundary flags")
        return FlagSystem(*self.r, meta=self.meta)


def _closed_cycle(r, x: int, pair: tuple[int, int]) -> bool:
    """Alternate the two involutions from ``x``; True if we return to ``x``."""
    a, b = r[pair[0]], r[pair[1]]
    y = x
    while True:
        y = a[y]
        if y == UNDEFINED:
            return False
        y = b[y]
        if y == UNDEFINED:
            return False
        if y == x:
            return True


def cycle_of(r, x: int, pair: tuple[int, int]) -> list[int]:
    """Flags of the ``pair``-orbit through ``x`` (partial involutions allowed)."""
    seen = {x}
    stack = [x]
    out = [x]
    while stack:
        y = stack.pop()
        for i in pair:
            z = r[i][y]
            if z != UNDEFINED and z not in seen:
                seen.add(z)
                out.append(z)
                stack.append(z)
    return out


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        # truthy when the input is a valid map
        return not self.problems

    @property
    def ok(self) -> bool:
        return not self.problems

    def kinds(self) -> set[str]:
        return {p.split(":", 1)[0] for p in self.problems}

    def __str__(self) -> str:
        return "valid" if self.ok else "\n".join(self.problems)


def _fmt(indices: Iterable[int], limit: int = 8) -> str:
    indices = list(indices)
    head = ", ".join(map(str, indices[:limit]))
    return head + (f", ... ({len(indices)} total)" if len(indices) > limit else "")


def validate(fs: FlagSystem) -> ValidationReport:
    """Check the closed-map axioms and report every violation."""
    report = ValidationReport()
    n = fs.n
    if n == 0:
        report.problems.append("empty: no flags")
        return report
    idx = np.arange(n)
    in_range = True
    for i, ri in enumerate(fs.r):
        bad = np.flatnonzero((ri < 0) | (ri >= n))
        if len(bad):
            in_range = False
            report.problems.append(f"range: r{i} out of range at flags {_fmt(bad)}")
    if not in_range:
        return report

    involutive = True
    for i, ri in enumerate(fs.r):
        bad = np.flatnonzero(ri[ri] != idx)
        if len(bad):
            involutive = False
            report.problems.append(f"involution: r{i} not an involution at flags {_fmt(bad)}")
        fixed = np.flatnonzero(ri == idx)
        if len(fixed):
            report.problems.append(f"fixed point: r{i} fixes flags {_fmt(fixed)}")
    r0, _, r2 = fs.r
    bad = np.flatnonzero(r0[r2[r0[r2]]] != idx)
    if len(bad):
        report.problems.append(f"square: (r0 r2)^2 != id at flags {_fmt(bad)}")
    if orbit_count(fs, (0, 1, 2)) != 1:
        report.problems.append(f"connectivity: flag graph has {orbit_count(fs, (0, 1, 2))} components")

    if involutive and not report.problems:
        report.problems.extend(_simplicity_problems(fs))
    return report


def _simplicity_problems(fs: FlagSystem) -> list[str]:
    problems = []
    vlabel = orbit_labels(fs, VERTEX)
    elabel = orbit_labels(fs, EDGE)
    sizes = np.bincount(elabel)
    degenerate = np.flatnonzero(sizes != 4)
    if len(degenerate):
        problems.append(f"degenerate edge: edge orbits of size != 4: {_fmt(degenerate)}")
    ends: dict[int, frozenset] = {}
    loops = []
    r0 = fs.r0
    for x in range(fs.n):
        e = int(elabel[x])
        if e in ends:
            continue
        u, v = int(vlabel[x]), int(vlabel[r0[x]])
        if u == v:
            loops.append(e)
        ends[e] = frozenset((u, v))
    if loops:
        problems.append(f"loop: edges joining a vertex to itself: {_fmt(loops)}")
    by_pair: dict[frozenset, list[int]] = {}
    for e, pair in ends.items():
        by_pair.setdefault(pair, []).append(e)
    multi = [es for es in by_pair.values() if len(es) > 1]
    if multi:
        problems.append(f"multi-edge: {len(multi)} vertex pairs joined by several edges, e.g. edges {_fmt(multi[0])}")
    return problems


# ---------------------------------------------------------------------------
# orbits and invariants


def _generator_graph(fs: FlagSystem, gens: Sequence[int]):
    n = fs.n
    rows, cols = [], []
    for i in gens:
        ri = fs.r[i]
        ok = ri >= 0
        rows.append(np.flatnonzero(ok))
        cols.append(ri[ok])
    if rows:
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
    else:
        rows = cols = np.zeros(0, dtype=np.int64)
    return coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))


def orbit_labels(fs: FlagSystem, gens: Sequence[int]) -> np.ndarray:
    """Label each flag by the index of its orbit under ``<r_i : i in gens>``.

    Labels are numbered in order of first appearance.
    """
    _, labels = connected_components(_generator_graph(fs, gens), directed=False)
    # renumber by first occurrence so labels are deterministic
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(np.argsort(first))
    return order[labels]


def orbit_count(fs: FlagSystem, gens: Sequence[int]) -> int:
    return int(connected_components(_generator_graph(fs, gens), directed=False)[0])


def orbit_partition(fs: FlagSystem, gens: Sequence[int]) -> list[list[int]]:
    """Orbits of the flags under the group generated by the chosen involutions.

    ``gens`` is any subset of ``{0, 1, 2}``.  Orbits are returned sorted by
    their smallest flag.
    """
    labels = orbit_labels(fs, gens)
    out: list[list[int]] = [[] for _ in range(int(labels.max()) + 1 if fs.n else 0)]
    for x, lab in enumerate(labels.tolist()):
        out[lab].append(x)
    return out


@dataclass(frozen=True)
class SurfaceInvariants:
    vertex_count: int
    edge_count: int
    face_count: int
    euler_characteristic: int
    orientable: bool
    genus: int

    @property
    def V(self) -> int:
        return self.vertex_count

    @property
    def E(self) -> int:
        return self.edge_count

    @property
    def F(self) -> int:
        return self.face_count

    @property
    def chi(self) -> int:
        return self.euler_characteristic


def bipartition(fs: FlagSystem) -> np.ndarray | None:
    """2-colouring of the flag graph with every ``r_i`` swapping colours, or None."""
    color = np.full(fs.n, -1, dtype=np.int8)
    r = fs.lists
    color_l = color.tolist()
    for start in range(fs.n):
        if color_l[start] >= 0:
            continue
        color_l[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            c = 1 - color_l[x]
            for ri in r:
                y = ri[x]
                if y < 0:
                    continue
                if color_l[y] < 0:
                    color_l[y] = c
                    stack.append(y)
                elif color_l[y] != c:
                    return None
    return np.array(color_l, dtype=np.int8)


def is_orientable(fs: FlagSystem) -> bool:
    return bipartition(fs) is not None


def surface_invariants(fs: FlagSystem) -> SurfaceInvariants:
    V = orbit_count(fs, VERTEX)
    E = orbit_count(fs, EDGE)
    F = orbit_count(fs, FACE)
    chi = V - E + F
    orientable = is_orientable(fs)
    genus = (2 - chi) // 2 if orientable else 2 - chi
    return SurfaceInvariants(V, E, F, chi, orientable, genus)


@dataclass(frozen=True)
class SchlafliType:
    """``{p, q}`` when uniform; ``p = q = None`` marks a non-uniform map."""

    p: int | None
    q: int | None

    @property
    def uniform(self) -> bool:
        return self.p is not None

    def __str__(self) -> str:
        return f"{{{self.p},{self.q}}}" if self.uniform else "NonUniform"


NON_UNIFORM = SchlafliType(None, None)


def schlafli_type(fs: FlagSystem) -> SchlafliType:
    face_sizes = set(np.bincount(orbit_labels(fs, FACE)).tolist())
    vertex_sizes = set(np.bincount(orbit_labels(fs, VERTEX)).tolist())
    if len(face_sizes) != 1 or len(vertex_sizes) != 1:
        return NON_UNIFORM
    (fsize,), (vsize,) = face_sizes, vertex_sizes
    return SchlafliType(fsize // 2, vsize // 2)
