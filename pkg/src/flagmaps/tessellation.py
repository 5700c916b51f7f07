"""
Finite balls of the universal {p, q} map.

The flags of the universal map are the elements of the Coxeter group
[p, q], so a ball of radius r in its flag graph is grown layer by layer:
every undefined image of a frontier flag gets a new flag, then every
relator cycle (r0 r2)^2, (r0 r1)^p, (r1 r2)^q running through existing
flags is closed, identifying flags that are forced equal.  Closure reuses
the coset enumerator's scan and coincidence machinery.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import ResourceCapExceeded, env_cap
from .flags import EDGE, FACE, UNDEFINED, VERTEX, FlagSystem, MapFragment, cycle_of
from .presentations import CosetEnumerator, CosetOverflow, coxeter_presentation

DEFAULT_MAX_FLAGS = env_cap(5_000_000)


@dataclass(frozen=True)
class UniversalBallSpec:
    p: int
    q: int
    radius: int

    def __post_init__(self):
        if self.p < 3 or self.q < 3:
            raise ValueError(f"universal map needs p, q >= 3, got {{{self.p},{self.q}}}")
        if self.radius < 0:
            raise ValueError("radius must be non-negative")

    @property
    def geometry(self) -> str:
        s = 2 * (self.p + self.q) - self.p * self.q  # sign of 1/p + 1/q - 1/2
        return "spherical" if s > 0 else "euclidean" if s == 0 else "hyperbolic"


class _LayeredEnumerator(CosetEnumerator):
    def __init__(self, pres, max_cosets):
        super().__init__(pres, max_cosets)
        self.layer = [0]
        self.current_layer = 0

    def new_coset(self) -> int:
        c = super().new_coset()
        self.layer.append(self.current_layer)
        return c

    def _merge(self, k, l, queue):
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo = min(a, b)
            self.layer[lo] = min(self.layer[a], self.layer[b])
        super()._merge(a, b, queue)

    def defined_count(self) -> int:
        return sum(1 for col in self.table for c, d in enumerate(col) if d >= 0 and self.parent[c] == c)


def _close(enum: _LayeredEnumerator, min_layer: int) -> None:
    """Scan every relator from live flags at or beyond ``min_layer`` until
    nothing changes."""
    while True:
        before = (enum.live_count(), enum.defined_count())
        for c in range(enum.size):
            if enum.parent[c] != c or enum.layer[c] < min_layer:
                continue
            for w in enum.relators:
                enum.scan(c, w)
                if enum.parent[c] != c:
                    break
        if (enum.live_count(), enum.defined_count()) == before:
            return


def universal_ball(spec: UniversalBallSpec | tuple, max_flags: int = DEFAULT_MAX_FLAGS) -> MapFragment:
    """All flags within flag-graph distance ``radius`` of the base flag 0.

    Flags are numbered by BFS from the base flag, scanning r0, r1, r2 in
    order, so a flag keeps its number when the radius grows.  Spherical
    types close up into the full Platonic flag system once the radius
    reaches the diameter.
    """
    if not isinstance(spec, UniversalBallSpec):
        spec = UniversalBallSpec(*spec)
    p, q = spec.p, spec.q
    enum = _LayeredEnumerator(coxeter_presentation(p, q), max_flags)
    reach = max(p, q) + 1
    completed = 0
    try:
        for k in range(spec.radius):
            frontier = [c for c in range(enum.size) if enum.parent[c] == c and enum.layer[c] == k]
            enum.current_layer = k + 1
            grew = False
            for c in frontier:
                for x in range(enum.ncols):
                    if enum.parent[c] == c and enum.table[x][c] < 0:
                        enum.define(c, x)
                        grew = True
            if not grew:
                break
            _close(enum, k + 1 - reach)
            completed = k + 1
    except CosetOverflow:
        raise ResourceCapExceeded(
            f"universal {{{p},{q}}} ball exceeded {max_flags} flags after {completed} complete layers",
            completed=completed) from None

    enum.compact()
    return _to_fragment(enum, p, q, spec.radius)


def _to_fragment(enum: CosetEnumerator, p: int, q: int, radius: int) -> MapFragment:
    n = enum.size
    order, dist = [0], {0: 0}
    i = 0
    while i < len(order):
        c = order[i]
        i += 1
        for col in enum.table:
            d = col[c]
            if d >= 0 and d not in dist:
                dist[d] = dist[c] + 1
                order.append(d)
    if len(order) != n:
        raise AssertionError("universal ball is disconnected")
    new = np.empty(n, dtype=np.int64)
    new[order] = np.arange(n)
    cols = []
    for col in enum.table:
        arr = np.array(col, dtype=np.int64)[order]
        cols.append(np.where(arr >= 0, new[np.maximum(arr, 0)], UNDEFINED))
    layer = np.array([dist[c] for c in order], dtype=np.int64)
    meta = {"name": f"universal{{{p},{q}}} r={radius}", "p": p, "q": q, "radius": radius}
    return MapFragment(*cols, meta=meta, layer=layer)


# ---------------------------------------------------------------------------
# checks


def fragment_local_check(frag: MapFragment, p: int | None = None, q: int | None = None) -> list[str]:
    """Local map axioms on a fragment: involutions on the defined part, and
    degree q, face size p and the square condition around interior flags."""
    p = p if p is not None else frag.meta.get("p")
    q = q if q is not None else frag.meta.get("q")
    problems = []
    r = frag.lists
    for i, ri in enumerate(r):
        for x, y in enumerate(ri):
            if y == UNDEFINED:
                continue
            if y == x:
                problems.append(f"fixed point: r{i} fixes flag {x}")
            elif ri[y] != x:
                problems.append(f"involution: r{i}[{x}] = {y} but r{i}[{y}] = {ri[y]}")
    if problems:
        return problems
    for x in sorted(frag.interior):
        if r[0][r[2][r[0][r[2][x]]]] != x:
            problems.append(f"square: (r0 r2)^2 moves interior flag {x}")
        if q is not None and len(cycle_of(r, x, VERTEX)) != 2 * q:
            problems.append(f"degree: interior flag {x} lies on a vertex of degree "
                            f"{len(cycle_of(r, x, VERTEX)) // 2}, expected {q}")
        if p is not None and len(cycle_of(r, x, FACE)) != 2 * p:
            problems.append(f"face: interior flag {x} lies on a face of size "
                            f"{len(cycle_of(r, x, FACE)) // 2}, expected {p}")
        if len(cycle_of(r, x, EDGE)) != 4:
            problems.append(f"edge: interior flag {x} lies on an edge with {len(cycle_of(r, x, EDGE))} flags")
    return problems


def complete_vertex_ball_counts(frag: MapFragment, base: int = 0) -> list[int]:
    """Sizes of primal-graph balls around the base vertex.

    Entry ``k`` is the number of vertices within primal distance ``k``; the
    list stops before the first radius containing a vertex that is not
    entirely made of interior flags.
    """
    r = frag.lists
    interior = frag.interior
    vertex_of: dict[int, int] = {}
    members: list[list[int]] = []

    def vertex(x):
        if x not in vertex_of:
            flags = cycle_of(r, x, VERTEX)
            for y in flags:
                vertex_of[y] = len(members)
            members.append(flags)
        return vertex_of[x]

    def complete(v):
        return all(y in interior for y in members[v])

    start = vertex(base)
    seen = {start}
    level = [start]
    counts = []
    total = 0
    while level:
        if not all(complete(v) for v in level):
            break
        total += len(level)
        counts.append(total)
        nxt = []
        for v in level:
            for x in members[v]:
                w = vertex(r[0][x])
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        level = nxt
    return counts


def embeds(small: FlagSystem, large: FlagSystem, base: int = 0) -> bool:
    """True if ``small`` maps into ``large`` by a flag injection fixing the
    base flag and preserving every defined adjacency."""
    rs, rl = small.lists, large.lists
    img = {base: base}
    used = {base}
    queue = deque([base])
    while queue:
        x = queue.popleft()
        fx = img[x]
        for si, li in zip(rs, rl):
            y = si[x]
            if y == UNDEFINED:
                continue
            z = li[fx]
            if z == UNDEFINED:
                return False
            if y in img:
                if img[y] != z:
                    return False
            else:
                if z in used:
                    return False
                img[y] = z
                used.add(z)
                queue.append(y)
    return len(img) == small.n
