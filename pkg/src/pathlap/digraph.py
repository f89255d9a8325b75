"""Finite digraphs: construction, parsing, named families, products and motifs."""

from __future__ import annotations

import logging
import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import ParseError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arrow:
    tail: int
    head: int

    def __post_init__(self):
        if self.tail == self.head:
            raise ValueError(f"self-loop at vertex {self.tail}")


@dataclass(frozen=True)
class Digraph:
    """A loop-free digraph on vertices ``0..vertex_count-1``.

    ``arrows`` is stored as a sorted tuple of ``(tail, head)`` pairs; labels are
    for display only.
    """

    vertex_count: int
    arrows: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __init__(self, vertex_count, arrows=(), labels=None):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        arrows = tuple(sorted({(int(i), int(j)) for i, j in arrows}))
        for i, j in arrows:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < vertex_count and 0 <= j < vertex_count):
                raise ValueError(f"arrow ({i}, {j}) out of range")
        if labels is None:
            labels = [str(i) for i in range(vertex_count)]
        labels = tuple(labels)
        if len(labels) != vertex_count:
            raise ValueError("need exactly one label per vertex")
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "arrows", arrows)
        object.__setattr__(self, "labels", labels)

    @cached_property
    def arrow_set(self) -> frozenset:
        return frozenset(self.arrows)

    @cached_property
    def _succ(self):
        out = [[] for _ in range(self.vertex_count)]
        for i, j in self.arrows:
            out[i].append(j)
        return tuple(tuple(o) for o in out)

    def has_arrow(self, i, j) -> bool:
        return (i, j) in self.arrow_set

    def successors(self, i) -> tuple[int, ...]:
        return self._succ[i]

    def __len__(self):
        return self.vertex_count

    def __repr__(self):
        return f"Digraph({self.vertex_count} vertices, {len(self.arrows)} arrows)"


# ---------------------------------------------------------------- parsing

_ARROW_RE = re.compile(r"^(\S+)\s*->\s*(\S+)$")


def parse_digraph(text: str) -> Digraph:
    """Parse the edge-list format.

    Optional header ``vertices: a b c``; then one ``a -> b`` per line; ``#``
    starts a comment. Without a header, vertices are numbered in order of first
    appearance. Duplicate arrows are dropped with a logged warning.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    declared = False
    arrows: list[tuple[int, int]] = []
    seen = set()
    duplicates = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            if declared or arrows:
                raise ParseError("vertices header must come first", f"line {lineno}")
            declared = True
            for name in line[len("vertices:"):].split():
                if name in index:
                    raise ParseError(f"duplicate vertex {name!r}", f"line {lineno}")
                index[name] = len(labels)
                labels.append(name)
            continue
        m = _ARROW_RE.match(line)
        if m is None:
            raise ParseError(f"malformed line {raw.strip()!r}", f"line {lineno}")
        ends = []
        for name in m.groups():
            if name not in index:
                if declared:
                    raise ParseError(f"unknown vertex {name!r}", f"line {lineno}")
                index[name] = len(labels)
                labels.append(name)
            ends.append(index[name])
        a, b = ends
        if a == b:
            raise ParseError(f"self-loop at {m.group(1)!r}", f"line {lineno}")
        if (a, b) in seen:
            duplicates += 1
            continue
        seen.add((a, b))
        arrows.append((a, b))
    if duplicates:
        log.warning("dropped %d duplicate arrow(s)", duplicates)
    return Digraph(len(labels), arrows, labels)


def format_digraph(g: Digraph) -> str:
    lines = ["vertices: " + " ".join(g.labels)]
    lines += [f"{g.labels[i]} -> {g.labels[j]}" for i, j in g.arrows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- products

def cartesian_product(x: Digraph, y: Digraph) -> Digraph:
    """Box product; vertex ``(a, b)`` gets index ``a * |Y| + b``."""
    ny = y.vertex_count
    arrows = []
    for a in range(x.vertex_count):
        for i, j in y.arrows:
            arrows.append((a * ny + i, a * ny + j))
    for i, j in x.arrows:
        for b in range(ny):
            arrows.append((i * ny + b, j * ny + b))
    labels = [f"{la}.{lb}" for la in x.labels for lb in y.labels]
    return Digraph(x.vertex_count * ny, arrows, labels)


def join(x: Digraph, y: Digraph) -> Digraph:
    """Disjoint union of X and Y plus every arrow from X to Y."""
    nx_ = x.vertex_count
    arrows = list(x.arrows)
    arrows += [(i + nx_, j + nx_) for i, j in y.arrows]
    arrows += [(i, nx_ + j) for i in range(nx_) for j in range(y.vertex_count)]
    labels = list(x.labels) + list(y.labels)
    if len(set(labels)) != len(labels):
        labels = None
    return Digraph(nx_ + y.vertex_count, arrows, labels)


def box_pow(g: Digraph, n: int) -> Digraph:
    if n < 1:
        raise ValueError("repetition count must be >= 1")
    out = g
    for _ in range(n - 1):
        out = cartesian_product(out, g)
    return out


def join_pow(g: Digraph, n: int) -> Digraph:
    if n < 1:
        raise ValueError("repetition count must be >= 1")
    out = g
    for _ in range(n - 1):
        out = join(out, g)
    return out


# ---------------------------------------------------------------- families

def interval() -> Digraph:
    return Digraph(2, [(0, 1)])


def cycle(n: int) -> Digraph:
    if n < 3:
        raise ValueError("C(n) needs n >= 3")
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def discrete(m: int) -> Digraph:
    if m < 1:
        raise ValueError("D(m) needs m >= 1")
    return Digraph(m)


def family(name: str, *args) -> Digraph:
    """Named constructor: ``family("cube", 3)``, ``family("box_pow", g, 2)``, ...

    Recognised names: I, T, C(n), D(m), K(n), S(n), cube(n), torus(n),
    box_pow(G, n), join_pow(G, n).
    """
    def count(k, lo=1):
        if not isinstance(k, int) or k < lo:
            raise ValueError(f"{name}: repetition count must be an integer >= {lo}")
        return k

    if name == "I":
        return interval()
    if name == "T":
        return cycle(3)
    if name == "C":
        return cycle(args[0])
    if name == "D":
        return discrete(count(args[0]))
    if name == "K":
        return join_pow(discrete(1), count(args[0]))
    if name == "S":
        return join_pow(discrete(2), count(args[0], 0) + 1)
    if name == "cube":
        return box_pow(interval(), count(args[0]))
    if name == "torus":
        return box_pow(cycle(3), count(args[0]))
    if name == "box_pow":
        return box_pow(args[0], count(args[1]))
    if name == "join_pow":
        return join_pow(args[0], count(args[1]))
    raise ValueError(f"unknown family {name!r}")


def undirected_components(g: Digraph) -> int:
    parent = list(range(g.vertex_count))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in g.arrows:
        parent[find(i)] = find(j)
    return len({find(i) for i in range(g.vertex_count)})


# ---------------------------------------------------------------- motifs

@dataclass(frozen=True)
class MotifReport:
    double_arrows: tuple[tuple[int, int], ...]
    triangles: tuple[tuple[int, int, int], ...]
    squares: tuple[tuple[int, int, int, int], ...]
    multisquare_found: bool
    max_square_middles: int
    deg_triangle: dict
    deg_square: dict
    degree: tuple[int, ...]


def motifs(g: Digraph) -> MotifReport:
    """Enumerate double arrows, triangles and squares of ``g``.

    Squares are stored as ``(i, j, j2, k)`` with ``j < j2``. ``max_square_middles``
    is the largest number of middle vertices over a pair ``a -/-> c``.
    """
    E = g.arrow_set
    succ = g.successors
    n = g.vertex_count
    doubles = tuple((i, j) for i, j in g.arrows if i < j and (j, i) in E)

    triangles = []
    middles = defaultdict(list)
    for i in range(n):
        for j in succ(i):
            for k in succ(j):
                if k == i:
                    continue
                if (i, k) in E:
                    triangles.append((i, j, k))
                else:
                    middles[(i, k)].append(j)

    squares = []
    max_mid = 0
    for (i, k), mids in sorted(middles.items()):
        max_mid = max(max_mid, len(mids))
        for j, j2 in combinations(sorted(mids), 2):
            squares.append((i, j, j2, k))

    deg_t = {a: 0 for a in g.arrows}
    for i, j, k in triangles:
        for a in ((i, j), (j, k), (i, k)):
            deg_t[a] += 1
    deg_s = {a: 0 for a in g.arrows}
    for i, j, j2, k in squares:
        for a in ((i, j), (j, k), (i, j2), (j2, k)):
            deg_s[a] += 1
    degree = [0] * n
    for i, j in g.arrows:
        degree[i] += 1
        degree[j] += 1
    return MotifReport(
        double_arrows=doubles,
        triangles=tuple(sorted(triangles)),
        squares=tuple(squares),
        multisquare_found=max_mid >= 3,
        max_square_middles=max_mid,
        deg_triangle=deg_t,
        deg_square=deg_s,
        degree=tuple(degree),
    )
