"""Constructors for the test corpus: Platonic solids, {4,4} torus maps and
ad-hoc maps given by face boundary cycles."""

from __future__ import annotations

import itertools
from typing import Hashable, Sequence

import numpy as np

from .flags import FlagSystem, validate


class NonSimpleMapError(ValueError):
    """The requested map would have loops or multiple edges."""


def from_faces(faces: Sequence[Sequence[Hashable]], name: str | None = None) -> FlagSystem:
    """Build a flag system from face boundary cycles of a simple graph.

    Each face is a cyclic sequence of vertex labels in which no vertex
    repeats; edges are identified by their endpoint pairs and every edge
    must lie on exactly two face sides.
    """
    flags: dict[tuple, int] = {}
    edge_faces: dict[frozenset, list[int]] = {}
    for f, cycle in enumerate(faces):
        k = len(cycle)
        if k < 3 or len(set(cycle)) != k:
            raise NonSimpleMapError(f"face {f} is not a simple cycle: {list(cycle)}")
        for i in range(k):
            u, v = cycle[i], cycle[(i + 1) % k]
            e = frozenset((u, v))
            edge_faces.setdefault(e, []).append(f)
            for w in (u, v):
                flags[(w, e, f)] = len(flags)
    for e, fs_ in edge_faces.items():
        if len(fs_) != 2 or fs_[0] == fs_[1]:
            raise NonSimpleMapError(f"edge {sorted(e, key=repr)} lies on {len(fs_)} face sides")

    # edges of each face at each vertex, for r1
    face_vertex_edges: dict[tuple, list[frozenset]] = {}
    for (w, e, f) in flags:
        face_vertex_edges.setdefault((w, f), []).append(e)

    n = len(flags)
    r0 = np.empty(n, dtype=np.int64)
    r1 = np.empty(n, dtype=np.int64)
    r2 = np.empty(n, dtype=np.int64)
    for (w, e, f), x in flags.items():
        (other,) = e - {w}
        r0[x] = flags[(other, e, f)]
        (e2,) = [d for d in face_vertex_edges[(w, f)] if d != e]
        r1[x] = flags[(w, e2, f)]
        g0, g1 = edge_faces[e]
        r2[x] = flags[(w, e, g1 if f == g0 else g0)]
    return FlagSystem(r0, r1, r2, meta={"name": name} if name else None)


def _cube_faces():
    faces = []
    for axis in range(3):
        for sign in (0, 1):
            others = [a for a in range(3) if a != axis]

            def vert(s, t):
                v = [0, 0, 0]
                v[axis], v[others[0]], v[others[1]] = sign, s, t
                return tuple(v)

            faces.append([vert(0, 0), vert(1, 0), vert(1, 1), vert(0, 1)])
    return faces


def _icosahedron_faces():
    phi = (1 + 5 ** 0.5) / 2
    verts = []
    for a, b in itertools.product((-1, 1), repeat=2):
        verts += [(0, a, b * phi), (a, b * phi, 0), (b * phi, 0, a)]
    pts = np.array(verts)
    d = np.linalg.norm(pts[:, None] - pts[None], axis=-1)
    adj = np.isclose(d, 2.0)
    # every triangle of the icosahedron graph is a face
    return [list(t) for t in itertools.combinations(range(12), 3)
            if adj[t[0], t[1]] and adj[t[1], t[2]] and adj[t[0], t[2]]]


PLATONIC = ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron")


def build_platonic(name: str) -> FlagSystem:
    """Flag system of a Platonic solid."""
    if name == "tetrahedron":
        fs = from_faces([list(t) for t in itertools.combinations(range(4), 3)])
    elif name == "cube":
        fs = from_faces(_cube_faces())
    elif name == "octahedron":
        fs = build_platonic("cube").dual()
    elif name == "icosahedron":
        fs = from_faces(_icosahedron_faces())
    elif name == "dodecahedron":
        fs = build_platonic("icosahedron").dual()
    else:
        raise ValueError(f"unknown Platonic solid {name!r}; expected one of {', '.join(PLATONIC)}")
    fs.meta["name"] = name
    return fs


def build_torus44(b: int, c: int) -> FlagSystem:
    """The {4,4}_(b,c) map: the square lattice modulo the lattice spanned by
    ``(b, c)`` and ``(-c, b)``."""
    N = b * b + c * c
    if N < 5:
        raise NonSimpleMapError(f"torus44({b},{c}) has {N} vertices; its graph is not simple")

    def vkey(x, y):
        # Z^2 -> (Z/N)^2 with kernel exactly the lattice
        return ((b * x + c * y) % N, (b * y - c * x) % N)

    # one representative lattice point per vertex class
    reps = {}
    for x in range(-N, N + 1):
        for y in range(-N, N + 1):
            reps.setdefault(vkey(x, y), (x, y))
    if len(reps) != N:
        raise AssertionError("lattice quotient enumeration failed")
    faces = []
    for (x, y) in sorted(reps.values()):
        faces.append([vkey(x, y), vkey(x + 1, y), vkey(x + 1, y + 1), vkey(x, y + 1)])
    edges = set()
    for face in faces:
        for i in range(4):
            u, v = face[i], face[(i + 1) % 4]
            if u == v:
                raise NonSimpleMapError(f"torus44({b},{c}) has loops")
            edges.add(frozenset((u, v)))
    if len(edges) != 2 * N:
        raise NonSimpleMapError(f"torus44({b},{c}) has multiple edges")
    fs = from_faces(faces, name=f"torus44({b},{c})")
    fs.meta["b"], fs.meta["c"] = b, c
    return fs


def build_hemicube() -> FlagSystem:
    """Antipodal quotient of the cube: K4 with the three 4-cycles as faces."""
    faces = [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]]
    return from_faces(faces, name="hemicube")


def build_square_triangle() -> FlagSystem:
    """A square and a triangle sharing an edge, on the sphere."""
    faces = [["a", "b", "c", "d"], ["b", "a", "e"], ["a", "e", "b", "c", "d"]]
    return from_faces(faces, name="square+triangle")


def corpus() -> dict[str, FlagSystem]:
    """Small named maps used throughout tests and demos."""
    maps = {name: build_platonic(name) for name in PLATONIC}
    for b, c in [(2, 1), (3, 0), (3, 1), (2, 2), (4, 0)]:
        maps[f"torus44({b},{c})"] = build_torus44(b, c)
    maps["hemicube"] = build_hemicube()
    maps["square+triangle"] = build_square_triangle()
    for fs in maps.values():
        report = validate(fs)
        if not report.ok:
            raise AssertionError(f"corpus map {fs!r} invalid: {report}")
    return maps
