"""
Desk-scale estimates of the number of ends of a locally finite graph.

For radii ``inner < outer`` we take the annulus of vertices at distance
``inner .. outer`` from the root and count its connected components that
reach the outer sphere.  Components escaping every ball are the finite
shadow of ends; nothing here certifies an end count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ResourceCapExceeded, env_cap
from .flags import UNDEFINED, FlagSystem
from .presentations import CayleyGraph

DEFAULT_MAX_VERTICES = env_cap(5_000_000)


class GraphSource:
    """A rooted, locally finite, connected graph given by a neighbour oracle.

    ``finite_size`` is the declared vertex count for finite graphs, or None.
    ``thread_safe`` declares whether ``neighbors`` may be called
    concurrently; the estimator here never does.
    """

    def __init__(self, root: Hashable, neighbors: Callable[[Hashable], Iterable[Hashable]],
                 finite_size: int | None = None, name: str = "", thread_safe: bool = True):
        self.root = root
        self._neighbors = neighbors
        self.finite_size = finite_size
        self.name = name
        self.thread_safe = thread_safe

    def neighbors(self, v):
        return self._neighbors(v)

    def prepare(self, radius: int) -> None:
        """Hook for lazy sources that need to grow before a BFS to ``radius``."""

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


@dataclass
class Ball:
    root: Hashable
    radius: int
    dist: dict  # vertex -> distance
    exhausted: bool  # True when the whole (finite) graph was reached earlier

    @property
    def vertices(self) -> list:
        return list(self.dist)

    def __len__(self) -> int:
        return len(self.dist)

    def sphere(self, r: int) -> list:
        return [v for v, d in self.dist.items() if d == r]


def ball(src: GraphSource, r: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> Ball:
    """Vertices within distance ``r`` of the root (BFS)."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    src.prepare(r)
    dist = {src.root: 0}
    level = [src.root]
    d = 0
    while level and d < r:
        nxt = []
        for v in level:
            for w in src.neighbors(v):
                if w not in dist:
                    dist[w] = d + 1
                    nxt.append(w)
        if len(dist) > max_vertices:
            raise ResourceCapExceeded(f"ball of radius {r} exceeded {max_vertices} vertices", completed=d)
        level = nxt
        d += 1
    return Ball(src.root, r, dist, exhausted=not level)


def ball_edges(src: GraphSource, b: Ball):
    """Induced edges of a ball as index arrays (each undirected edge once)."""
    index = {v: k for k, v in enumerate(b.dist)}
    rows, cols = [], []
    for v, k in index.items():
        for w in src.neighbors(v):
            j = index.get(w)
            if j is not None and k < j:
                rows.append(k)
                cols.append(j)
    return index, np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64)


@dataclass
class EndsEstimate:
    inner_radius: int
    outer_radius: int
    component_count: int
    boundary_sizes: list[int] = field(default_factory=list)
    stabilized: bool = False
    ball_size: int = 0

    def as_dict(self) -> dict:
        return {
            "inner": self.inner_radius,
            "outer": self.outer_radius,
            "components": self.component_count,
            "boundary_sizes": list(self.boundary_sizes),
            "stabilized": self.stabilized,
            "ball_size": self.ball_size,
        }


def _annulus_components(index, dist_arr, rows, cols, inner, outer):
    """Component label per vertex of the annulus inner <= d <= outer (-1 outside)."""
    n = len(dist_arr)
    inside = (dist_arr >= inner) & (dist_arr <= outer)
    keep = inside[rows] & inside[cols]
    graph = coo_matrix((np.ones(int(keep.sum()), dtype=np.int8), (rows[keep], cols[keep])), shape=(n, n))
    _, labels = connected_components(graph, directed=False)
    return np.where(inside, labels, -1)


def _reaching(labels, dist_arr, outer):
    on_sphere = (dist_arr == outer) & (labels >= 0)
    comps, sizes = np.unique(labels[on_sphere], return_counts=True)
    return comps, sizes


def _estimate_from_ball(index, dist_arr, rows, cols, inner, outer) -> EndsEstimate:
    labels = _annulus_components(index, dist_arr, rows, cols, inner, outer)
    comps, sizes = _reaching(labels, dist_arr, outer)
    count = len(comps)
    stabilized = False
    if outer - 1 >= inner:
        prev = _annulus_components(index, dist_arr, rows, cols, inner, outer - 1)
        prev_comps, _ = _reaching(prev, dist_arr, outer - 1)
        # each earlier component sits inside one later component; stable when
        # that map is a bijection onto the components reaching the outer sphere
        image = {}
        for c in prev_comps.tolist():
            members = np.flatnonzero(prev == c)
            image[c] = int(labels[members[0]])
        stabilized = (len(prev_comps) == count
                      and len(set(image.values())) == count
                      and set(image.values()) == set(comps.tolist()))
    order = np.argsort(-sizes, kind="stable")
    return EndsEstimate(inner, outer, count, sizes[order].tolist(), stabilized,
                        int(np.count_nonzero(dist_arr <= outer)))


def ends_estimate(src: GraphSource, inner: int, outer: int,
                  max_vertices: int = DEFAULT_MAX_VERTICES) -> EndsEstimate:
    """Count components of the annulus ``inner <= d <= outer`` reaching the
    sphere of radius ``outer``."""
    if not 0 <= inner < outer:
        raise ValueError(f"need 0 <= inner < outer, got inner={inner}, outer={outer}")
    b = ball(src, outer, max_vertices)
    index, rows, cols = ball_edges(src, b)
    dist_arr = np.fromiter(b.dist.values(), dtype=np.int64, count=len(b.dist))
    return _estimate_from_ball(index, dist_arr, rows, cols, inner, outer)


@dataclass
class EndsProfile:
    source: str
    spread: int
    rows: list[EndsEstimate]
    finite: bool

    @property
    def counts(self) -> list[int]:
        return [row.component_count for row in self.rows]

    @property
    def verdict(self) -> str:
        """Number of ends the rows are consistent with, as a string.

        Finite graphs (exhausted by the ball or declared finite) give
        "0"; constant rows give their common count;
        strictly increasing rows give "growing"; anything else is
        "inconclusive".
        """
        if self.finite:
            return "0"
        counts = self.counts
        if not counts:
            return "inconclusive"
        if len(set(counts)) == 1:
            return str(counts[0])
        if all(a < b for a, b in zip(counts, counts[1:])):
            return "growing"
        return "inconclusive"

    def as_dict(self) -> dict:
        return {
            "source": self.source,
            "spread": self.spread,
            "finite": self.finite,
            "verdict": self.verdict,
            "rows": [row.as_dict() for row in self.rows],
        }

    def format_table(self) -> str:
        lines = [f"# ends profile: {self.source} (spread {self.spread})",
                 f"{'inner':>5} {'outer':>5} {'count':>5} {'stable':>6} {'ball':>9}  boundary"]
        for row in self.rows:
            lines.append(f"{row.inner_radius:>5} {row.outer_radius:>5} {row.component_count:>5} "
                         f"{str(row.stabilized).lower():>6} {row.ball_size:>9}  {row.boundary_sizes}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def ends_profile(src: GraphSource, max_inner: int, spread: int,
                 max_vertices: int = DEFAULT_MAX_VERTICES) -> EndsProfile:
    """Estimates for ``inner = 1 .. max_inner`` with ``outer = inner + spread``.

    ``inner = 0`` removes nothing and always gives one component, so rows
    start at 1.
    """
    if spread < 2:
        raise ValueError("spread must be at least 2")
    if max_inner < 1:
        raise ValueError("max_inner must be at least 1")
    b = ball(src, max_inner + spread, max_vertices)
    index, rows, cols = ball_edges(src, b)
    dist_arr = np.fromiter(b.dist.values(), dtype=np.int64, count=len(b.dist))
    out = [_estimate_from_ball(index, dist_arr, rows, cols, inner, inner + spread)
           for inner in range(1, max_inner + 1)]
    # a declared-finite graph has no ends even if the ball has not covered it yet
    finite = b.exhausted or src.finite_size is not None
    return EndsProfile(src.name or repr(src), spread, out, finite)


# ---------------------------------------------------------------------------
# sources


def flag_graph_source(fs: FlagSystem, base: int = 0) -> GraphSource:
    """Flag graph of a flag system or fragment (undefined images skipped)."""
    r = fs.lists

    def neighbors(x):
        out = []
        for ri in r:
            y = ri[x]
            if y != UNDEFINED and y not in out:
                out.append(y)
        return out

    name = fs.meta.get("name", "flag graph")
    return GraphSource(base, neighbors, finite_size=fs.n, name=f"flags:{name}")


def cayley_source(graph: CayleyGraph, root: int = 0, name: str = "") -> GraphSource:
    return GraphSource(root, graph.neighbors, finite_size=graph.vertex_count,
                       name=name or f"cayley:{graph.vertex_count}")


class ZdSource(GraphSource):
    """The integer lattice Z^d with unit steps."""

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("dimension must be positive")
        self.d = d
        super().__init__((0,) * d, self._nb, name=f"Z^{d}")

    def _nb(self, v):
        out = []
        for i in range(self.d):
            for s in (1, -1):
                w = list(v)
                w[i] += s
                out.append(tuple(w))
        return out


class TreeSource(GraphSource):
    """The k-regular tree; vertices are tuples of child indices from the root."""

    def __init__(self, k: int):
        if k < 2:
            raise ValueError("tree degree must be at least 2")
        self.k = k
        super().__init__((), self._nb, name=f"tree:{k}")

    def _nb(self, v):
        children = self.k if not v else self.k - 1
        out = [v + (i,) for i in range(children)]
        if v:
            out.append(v[:-1])
        return out


def free_group_source(rank: int) -> GraphSource:
    """Cayley graph of the free group on ``rank`` generators (a 2*rank-regular tree)."""
    names = [chr(ord("a") + i) for i in range(rank)]
    letters = names + [n.upper() for n in names]

    def neighbors(w):
        out = []
        for x in letters:
            if w and w[-1] == x.swapcase():
                out.append(w[:-1])
            else:
                out.append(w + x)
        return out

    return GraphSource("", neighbors, name=f"free:{rank}")


class CoxeterCayleySource(GraphSource):
    """Cayley graph of the Coxeter group [p, q] through its geometric
    representation.

    A group element ``w`` is encoded by the point ``w . f`` where ``f`` lies
    in the fundamental chamber of the Tits cone; the group acts simply
    transitively on chambers, so distinct elements give distinct points.
    Neighbours use left multiplication, which yields a graph isomorphic to
    the right Cayley graph via inversion.
    """

    SCALE = 1e6

    def __init__(self, p: int, q: int):
        if p < 2 or q < 2:
            raise ValueError("need p, q >= 2")
        self.p, self.q = p, q
        m = [[1, p, 2], [p, 1, q], [2, q, 1]]
        self.B = [[1.0 if i == j else -math.cos(math.pi / m[i][j]) for j in range(3)] for i in range(3)]
        root_point = (1.0, 1.0, 1.0)
        self.points: dict[tuple, tuple] = {}
        root = self._snap(root_point)
        super().__init__(root, self._nb, name=f"coxeter:{p},{q}")

    def _key(self, pt):
        return tuple(int(math.floor(c * self.SCALE + 0.5)) for c in pt)

    def _snap(self, pt) -> tuple:
        key = self._key(pt)
        if key in self.points:
            return key
        # a point within rounding distance of an existing key is the same element
        for i, c in enumerate(pt):
            frac = c * self.SCALE + 0.5 - math.floor(c * self.SCALE + 0.5)
            if frac < 0.01 or frac > 0.99:
                alt = list(key)
                alt[i] += -1 if frac < 0.01 else 1
                if tuple(alt) in self.points:
                    return tuple(alt)
        self.points[key] = pt
        return key

    def reflect(self, i: int, pt):
        B = self.B
        fi = pt[i]
        return tuple(pt[j] - 2 * B[i][j] * fi for j in range(3))

    def _nb(self, key):
        pt = self.points[key]
        return [self._snap(self.reflect(i, pt)) for i in range(3)]


class UniversalFlagSource(GraphSource):
    """Flag graph of the universal {p, q} map, grown on demand from
    :func:`universal_ball` fragments (flag numbers are stable as it grows)."""

    def __init__(self, p: int, q: int, max_flags: int | None = None, initial_radius: int = 8):
        from .tessellation import DEFAULT_MAX_FLAGS

        self.p, self.q = p, q
        self.max_flags = max_flags or DEFAULT_MAX_FLAGS
        self.fragment = None
        self.radius = 0
        self._grow(initial_radius)
        super().__init__(0, self._nb, name=f"universal:{p},{q}")

    def _grow(self, radius: int) -> None:
        from .tessellation import UniversalBallSpec, universal_ball

        self.fragment = universal_ball(UniversalBallSpec(self.p, self.q, radius), self.max_flags)
        self.radius = radius
        self._lists = self.fragment.lists
        self._layer = self.fragment.layer.tolist()
        if self.fragment.is_closed():
            self.finite_size = self.fragment.n

    def prepare(self, radius: int) -> None:
        # flags at distance < fragment radius have all their neighbours
        if self.finite_size is None and radius + 1 > self.radius:
            self._grow(radius + 1)

    def _nb(self, x):
        if self.finite_size is None and self._layer[x] >= self.radius:
            self._grow(2 * self.radius)
        out = []
        for ri in self._lists:
            y = ri[x]
            if y != UNDEFINED and y not in out:
                out.append(y)
        return out


class RelabeledSource(GraphSource):
    """The same graph with vertices renamed by an injective function."""

    def __init__(self, src: GraphSource, forward: Callable, backward: Callable):
        self.src = src
        self.forward, self.backward = forward, backward
        super().__init__(forward(src.root), self._nb, finite_size=src.finite_size,
                         name=f"relabel({src.name})")

    def prepare(self, radius: int) -> None:
        self.src.prepare(radius)

    def _nb(self, v):
        return [self.forward(w) for w in self.src.neighbors(self.backward(v))]


def parse_source(spec: str) -> GraphSource:
    """``file:F``, ``universal:p,q``, ``coxeter:p,q``, ``zd:d`` or ``tree:k``."""
    kind, _, arg = spec.partition(":")
    if not arg:
        raise ValueError(f"source {spec!r} must look like kind:argument")
    if kind == "file":
        from .io import load

        return flag_graph_source(load(arg))
    if kind in ("universal", "coxeter"):
        try:
            p, q = (int(x) for x in arg.split(","))
        except ValueError:
            raise ValueError(f"source {spec!r} needs p,q") from None
        return UniversalFlagSource(p, q) if kind == "universal" else CoxeterCayleySource(p, q)
    if kind == "zd":
        return ZdSource(int(arg))
    if kind == "tree":
        return TreeSource(int(arg))
    raise ValueError(f"unknown source kind {kind!r}")
