"""
Group presentations, Todd-Coxeter coset enumeration and Cayley graphs.

Words are lists of ``(generator_index, exponent)`` pairs with exponent
``+1`` or ``-1``.  The text syntax used by :func:`parse_word` is: a lowercase
generator letter, an uppercase letter for its inverse, juxtaposition for
products, parentheses for grouping and ``^k`` for powers.  A power applies
to the whole preceding run of letters, so ``abc^8`` is ``(abc)^8`` while
``ab(c)^2`` is ``abcc``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Sequence

from .errors import env_cap

Word = list  # list[tuple[int, int]]

COMPLETE = "Complete"
OVERFLOW = "Overflow"
DEFAULT_MAX_COSETS = env_cap(10**6)


class WordSyntaxError(ValueError):
    pass


@dataclass
class GroupPresentation:
    names: tuple[str, ...]
    relators: list[Word]
    involutions: tuple[bool, ...]
    title: str = ""

    def __post_init__(self):
        self.names = tuple(self.names)
        self.involutions = tuple(self.involutions)
        if len(self.involutions) != len(self.names):
            raise ValueError("one involution flag per generator")
        for w in self.relators:
            if not w:
                raise ValueError("relators must be non-empty")
            for g, e in w:
                if not 0 <= g < len(self.names) or e not in (1, -1):
                    raise ValueError(f"relator {w} uses an undeclared generator")

    def with_relators(self, *extra: Word | str) -> "GroupPresentation":
        words = [parse_word(w, self.names) if isinstance(w, str) else list(w) for w in extra]
        return GroupPresentation(self.names, self.relators + words, self.involutions, self.title)

    def format_word(self, w: Word) -> str:
        return "".join(self.names[g] if e > 0 else self.names[g].upper() for g, e in w)

    def __str__(self) -> str:
        rels = [f"{n}^2" for n, inv in zip(self.names, self.involutions) if inv]
        rels += [self.format_word(w) for w in self.relators]
        return f"< {', '.join(self.names)} | {', '.join(rels)} >"


def _power(w: Word, k: int) -> Word:
    if k < 0:
        w = invert_word(w)
        k = -k
    return list(w) * k


def invert_word(w: Word) -> Word:
    return [(g, -e) for g, e in reversed(w)]


_TOKEN = re.compile(r"\s*(?:(\()|(\))|\^(-?\d+)|([A-Za-z]+)|(\*))")


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse the word syntax described in the module docstring."""
    index = {n: i for i, n in enumerate(names)}
    if any(len(n) != 1 or not n.islower() for n in names):
        raise WordSyntaxError("word syntax needs single lowercase generator names")
    pos = 0
    text = text.strip()
    stack: list[list[Word]] = [[]]  # factors of each open group
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"unexpected character at position {pos} in {text!r}")
        pos = m.end()
        lpar, rpar, power, letters, _star = m.groups()
        if lpar:
            stack.append([])
        elif rpar:
            if len(stack) == 1:
                raise WordSyntaxError(f"unbalanced ')' in {text!r}")
            group = [x for f in stack.pop() for x in f]
            stack[-1].append(group)
        elif power is not None:
            if not stack[-1]:
                raise WordSyntaxError(f"'^' without a base in {text!r}")
            stack[-1][-1] = _power(stack[-1][-1], int(power))
        elif letters:
            run = []
            for ch in letters:
                if ch in index:
                    run.append((index[ch], 1))
                elif ch.lower() in index:
                    run.append((index[ch.lower()], -1))
                else:
                    raise WordSyntaxError(f"unknown generator {ch!r} in {text!r}")
            stack[-1].append(run)
    if len(stack) != 1:
        raise WordSyntaxError(f"unbalanced '(' in {text!r}")
    return [x for f in stack[0] for x in f]


def coxeter_presentation(p: int, q: int) -> GroupPresentation:
    """``[p, q]``: three involutions a, b, c with (ac)^2, (ab)^p, (bc)^q."""
    if p < 2 or q < 2:
        raise ValueError(f"need p, q >= 2, got ({p}, {q})")
    a, b, c = (0, 1), (1, 1), (2, 1)
    rels = [[a, c] * 2, [a, b] * p, [b, c] * q]
    return GroupPresentation(("a", "b", "c"), rels, (True, True, True), title=f"[{p},{q}]")


def schwarz_presentation(p: int, q: int) -> GroupPresentation:
    """Rotation group ``< r, s | r^p, s^q, (rs)^2 >``."""
    if p < 2 or q < 2:
        raise ValueError(f"need p, q >= 2, got ({p}, {q})")
    r, s = (0, 1), (1, 1)
    rels = [[r] * p, [s] * q, [r, s] * 2]
    return GroupPresentation(("r", "s"), rels, (False, False), title=f"(2,{p},{q})+")


# ---------------------------------------------------------------------------
# coset enumeration


class CosetOverflow(Exception):
    """Raised internally when the coset budget is exhausted."""


class CosetEnumerator:
    """HLT coset enumeration state with lookahead and coincidence handling.

    Columns are generator actions; non-involutory generators get a second
    column for their inverse.  Undefined entries are -1.
    """

    def __init__(self, pres: GroupPresentation, max_cosets: int = DEFAULT_MAX_COSETS):
        self.pres = pres
        cols: dict[tuple[int, int], int] = {}
        inv: list[int] = []
        for g, is_inv in enumerate(pres.involutions):
            cols[(g, 1)] = len(inv)
            if is_inv:
                cols[(g, -1)] = len(inv)
                inv.append(len(inv))
            else:
                cols[(g, -1)] = len(inv) + 1
                inv += [len(inv) + 1, len(inv)]
        self.col_of = cols
        self.inv = inv
        self.ncols = len(inv)
        self.table = [[-1] for _ in range(self.ncols)]
        self.parent = [0]
        self.max_cosets = max_cosets
        self.high_water = 1
        self.relators = [self.columns(w) for w in self._effective_relators()]

    def _effective_relators(self):
        # x^2 for involutions is built into the column layout
        out = []
        for w in self.pres.relators:
            if len(w) == 2 and w[0][0] == w[1][0] and self.pres.involutions[w[0][0]]:
                continue
            out.append(w)
        return out

    def columns(self, w: Word) -> list[int]:
        return [self.col_of[(g, e)] for g, e in w]

    # -- basic operations -------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.parent)

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def live_count(self) -> int:
        return sum(1 for c, p in enumerate(self.parent) if p == c)

    def new_coset(self) -> int:
        if len(self.parent) >= self.max_cosets:
            raise CosetOverflow
        c = len(self.parent)
        self.parent.append(c)
        for col in self.table:
            col.append(-1)
        if c + 1 > self.high_water:
            self.high_water = c + 1
        return c

    def define(self, c: int, x: int) -> int:
        d = self.new_coset()
        self.table[x][c] = d
        self.table[self.inv[x]][d] = c
        return d

    def rep(self, c: int) -> int:
        parent = self.parent
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        table, inv = self.table, self.inv
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ncols):
                d = table[x][g]
                if d < 0:
                    continue
                xi = inv[x]
                table[xi][d] = -1
                mu, nu = self.rep(g), self.rep(d)
                if table[x][mu] >= 0:
                    self._merge(nu, table[x][mu], queue)
                elif table[xi][nu] >= 0:
                    self._merge(mu, table[xi][nu], queue)
                else:
                    table[x][mu] = nu
                    table[xi][nu] = mu

    def scan(self, alpha: int, w: list[int], fill: bool = False) -> None:
        """Trace ``w`` from ``alpha`` both ways, deducing a single missing
        entry or processing a coincidence; with ``fill`` new cosets are
        defined to close the gap."""
        table, inv = self.table, self.inv
        f, i = alpha, 0
        b, j = alpha, len(w) - 1
        while True:
            while i <= j:
                nf = table[w[i]][f]
                if nf < 0:
                    break
                f = nf
                i += 1
            if i > j:
                # forward trace met the backward one
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                nb = table[inv[w[j]]][b]
                if nb < 0:
                    break
                b = nb
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[w[i]][f] = b
                table[inv[w[i]]][b] = f
                return
            if not fill:
                return
            self.define(f, w[i])

    def lookahead(self) -> None:
        for beta in range(self.size):
            if not self.is_live(beta):
                continue
            for w in self.relators:
                self.scan(beta, w)
                if not self.is_live(beta):
                    break

    def compact(self) -> list[int]:
        """Renumber live cosets densely, keeping their order; returns the old->new map."""
        old_to_new = [-1] * self.size
        k = 0
        for c in range(self.size):
            if self.parent[c] == c:
                old_to_new[c] = k
                k += 1
        new_table = []
        for col in self.table:
            new_col = [-1] * k
            for c, d in enumerate(col):
                nc = old_to_new[c]
                if nc >= 0 and d >= 0:
                    new_col[nc] = old_to_new[self.rep(d)]
            new_table.append(new_col)
        self.table = new_table
        self.parent = list(range(k))
        return old_to_new

    def is_closed(self) -> bool:
        return all(d >= 0 for col in self.table for c, d in enumerate(col) if self.parent[c] == c)


@dataclass
class CosetTable:
    """Action of generators on the right cosets of a subgroup."""

    names: tuple[str, ...]
    involutions: tuple[bool, ...]
    status: str
    action: dict[str, list[int]] = field(default_factory=dict)
    high_water: int = 0
    title: str = ""

    @property
    def index(self) -> int:
        if self.status != COMPLETE:
            raise ValueError("index of an incomplete enumeration")
        return len(next(iter(self.action.values()))) if self.action else 1

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE

    def __len__(self) -> int:
        return self.index

    def inverse_action(self, name: str) -> list[int]:
        forward = self.action[name]
        out = [0] * len(forward)
        for c, d in enumerate(forward):
            out[d] = c
        return out

    def apply(self, coset: int, w: Word) -> int:
        for g, e in w:
            coset = (self.action[self.names[g]] if e > 0 or self.involutions[g]
                     else self.inverse_action(self.names[g]))[coset]
        return coset

    def relator_holds(self, w: Word) -> bool:
        return all(self.apply(c, w) == c for c in range(self.index))


def _canonical_order(enum: CosetEnumerator) -> list[int]:
    """BFS order of cosets from coset 0, scanning columns in order."""
    n = enum.size
    seen = [False] * n
    seen[0] = True
    order = [0]
    i = 0
    while i < len(order):
        c = order[i]
        i += 1
        for col in enum.table:
            d = col[c]
            if not seen[d]:
                seen[d] = True
                order.append(d)
    return order


def todd_coxeter(pres: GroupPresentation, subgroup_words: Sequence[Word | str] = (),
                 max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgroup_words``.

    HLT strategy: cosets are processed in order, every relator is scanned
    with filling, then remaining undefined entries are defined.  When the
    table hits ``max_cosets`` a lookahead pass and compaction are tried
    before giving up with an Overflow table.
    """
    words = [parse_word(w, pres.names) if isinstance(w, str) else list(w) for w in subgroup_words]
    enum = CosetEnumerator(pres, max_cosets)
    try:
        for w in words:
            enum.scan(0, enum.columns(w), fill=True)
        alpha = 0
        while alpha < enum.size:
            try:
                _process(enum, alpha)
            except CosetOverflow:
                enum.lookahead()
                old_to_new = enum.compact()
                if enum.size >= max_cosets:
                    raise
                # resume at the first live coset at or after alpha
                alpha = next((old_to_new[c] for c in range(alpha, len(old_to_new)) if old_to_new[c] >= 0),
                             enum.size)
                continue
            alpha += 1
    except CosetOverflow:
        return CosetTable(pres.names, pres.involutions, OVERFLOW, high_water=enum.high_water, title=pres.title)

    enum.compact()
    order = _canonical_order(enum)
    new = {c: k for k, c in enumerate(order)}
    action = {}
    for g, name in enumerate(pres.names):
        col = enum.table[enum.col_of[(g, 1)]]
        action[name] = [new[col[c]] for c in order]
    return CosetTable(pres.names, pres.involutions, COMPLETE, action, enum.high_water, pres.title)


def _process(enum: CosetEnumerator, alpha: int) -> None:
    if not enum.is_live(alpha):
        return
    for w in enum.relators:
        enum.scan(alpha, w, fill=True)
        if not enum.is_live(alpha):
            return
    for x in range(enum.ncols):
        if enum.table[x][alpha] < 0:
            enum.define(alpha, x)


# ---------------------------------------------------------------------------
# Cayley graphs


@dataclass
class CayleyGraph:
    """Vertices are cosets; ``edges[name][v]`` is ``v`` times the generator."""

    vertex_count: int
    names: tuple[str, ...]
    involutions: tuple[bool, ...]
    edges: dict[str, list[int]]

    def neighbors(self, v: int) -> list[int]:
        """Undirected neighbours (generators and their inverses), with repeats removed."""
        out = []
        for name, inv in zip(self.names, self.involutions):
            out.append(self.edges[name][v])
            if not inv:
                out.append(self._inverse(name)[v])
        return list(dict.fromkeys(out))

    def _inverse(self, name: str) -> list[int]:
        cache = self.__dict__.setdefault("_inv_cache", {})
        if name not in cache:
            fwd = self.edges[name]
            inv = [0] * len(fwd)
            for v, w in enumerate(fwd):
                inv[w] = v
            cache[name] = inv
        return cache[name]

    def out_degree(self) -> int:
        return len(self.names)

    def degree(self, v: int) -> int:
        """Undirected degree counting each generator and inverse action once."""
        return len(self.neighbors(v))

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def edge_list(self) -> list[tuple[int, int, str]]:
        """Labelled edges; an involution edge ``{v, w}`` is listed once."""
        out = []
        for name, inv in zip(self.names, self.involutions):
            for v, w in enumerate(self.edges[name]):
                if inv and w < v:
                    continue
                out.append((v, w, name))
        return out

    def to_dot(self, name: str = "cayley") -> str:
        lines = [f"digraph {name} {{"]
        inv = dict(zip(self.names, self.involutions))
        for v in range(self.vertex_count):
            lines.append(f"  {v};")
        for v, w, label in self.edge_list():
            attrs = f'label="{label}"' + (", dir=none" if inv[label] else "")
            lines.append(f"  {v} -> {w} [{attrs}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def labeled_isomorphism(self, other: "CayleyGraph", root: int = 0,
                            target: int = 0) -> list[int] | None:
        """Vertex bijection ``root -> target`` carrying each generator's edges
        to the same-position generator's edges of ``other``, or None."""
        if self.vertex_count != other.vertex_count or len(self.names) != len(other.names):
            return None
        pairs = [(self.edges[a], other.edges[b]) for a, b in zip(self.names, other.names)]
        img = [-1] * self.vertex_count
        used = [False] * other.vertex_count
        img[root], used[target] = target, True
        stack = [root]
        while stack:
            v = stack.pop()
            for mine, theirs in pairs:
                w, z = mine[v], theirs[img[v]]
                if img[w] < 0:
                    if used[z]:
                        return None
                    img[w], used[z] = z, True
                    stack.append(w)
                elif img[w] != z:
                    return None
        return img if min(img) >= 0 else None

    def to_adjacency(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "generators": list(self.names),
            "involutions": list(self.involutions),
            "edges": {name: list(self.edges[name]) for name in self.names},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_adjacency(), separators=(",", ":"))


def cayley_graph(table: CosetTable) -> CayleyGraph:
    if not table.complete:
        raise ValueError(f"cannot build a Cayley graph from a {table.status} table")
    return CayleyGraph(table.index, table.names, table.involutions,
                       {name: list(col) for name, col in table.action.items()})
