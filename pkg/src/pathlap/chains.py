"""Path chain complex of a digraph: allowed paths, Omega bases, boundaries, homology.

Elementary paths are tuples of vertex indices; the empty tuple is the unit of
the augmented complex (degree -1).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .digraph import Digraph
from .errors import GuardrailError, NonTerminatingError
from .exact import QMatrix, kernel_basis

DEFAULT_MAX_PATHS = 200_000
UNIT = ()


def max_paths(cap=None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("PATHLAP_MAX_PATHS")
    return int(env) if env else DEFAULT_MAX_PATHS


# ---------------------------------------------------------------- chains

class Chain:
    """Finite rational combination of regular elementary paths of one degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, terms=None, degree=None):
        terms = {tuple(k): Fraction(v) for k, v in (terms or {}).items()}
        terms = {k: v for k, v in terms.items() if v}
        if degree is None:
            if not terms:
                raise ValueError("degree of an empty chain must be given")
            degree = len(next(iter(terms))) - 1
        for k in terms:
            if len(k) != degree + 1:
                raise ValueError(f"path {k} does not have degree {degree}")
            if any(a == b for a, b in zip(k, k[1:])):
                raise ValueError(f"path {k} is not regular")
        self.degree = degree
        self.terms = terms

    @classmethod
    def path(cls, vertices, coef=1):
        return cls({tuple(vertices): coef})

    @classmethod
    def unit(cls, coef=1):
        return cls({UNIT: coef}, degree=-1)

    @classmethod
    def zero(cls, degree):
        return cls({}, degree)

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return Chain(t, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self * -1

    def __mul__(self, c):
        c = Fraction(c)
        return Chain({k: c * v for k, v in self.terms.items()}, self.degree)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return f"Chain(0, degree={self.degree})"
        parts = [f"{v}*e{''.join(map(str, k)) or '()'}" for k, v in sorted(self.terms.items())]
        return "Chain(" + " + ".join(parts) + ")"

    def boundary(self, augmented=False) -> "Chain":
        return boundary(self, augmented)


def boundary(c: Chain, augmented=False) -> Chain:
    """Alternating face sum; faces with repeated consecutive vertices vanish.

    Degree-0 paths map to the unit when ``augmented``, to zero otherwise.
    """
    p = c.degree
    if p < 0 or (p == 0 and not augmented):
        return Chain.zero(p - 1)
    out = {}
    for path, coef in c.terms.items():
        for k in range(p + 1):
            if 0 < k < p and path[k - 1] == path[k + 1]:
                continue
            face = path[:k] + path[k + 1:]
            v = out.get(face, 0) + (coef if k % 2 == 0 else -coef)
            out[face] = v
    return Chain(out, p - 1)


def is_allowed(g: Digraph, path) -> bool:
    E = g.arrow_set
    return all((a, b) in E for a, b in zip(path, path[1:]))


def in_omega(g: Digraph, c: Chain) -> bool:
    """Membership test: allowed chain with allowed boundary."""
    if not all(is_allowed(g, k) for k in c.terms):
        return False
    return all(is_allowed(g, k) for k in boundary(c).terms)


# ---------------------------------------------------------------- allowed paths

def allowed_paths(g: Digraph, p: int, cap=None) -> list[tuple[int, ...]]:
    """All allowed elementary p-paths (walks along arrows) in lexicographic order."""
    if p < 0:
        raise ValueError("p must be >= 0")
    limit = max_paths(cap)
    paths = [(i,) for i in range(g.vertex_count)]
    for _ in range(p):
        nxt = []
        for path in paths:
            for j in g.successors(path[-1]):
                nxt.append(path + (j,))
            if len(nxt) > limit:
                raise GuardrailError(
                    f"more than {limit} allowed paths; raise PATHLAP_MAX_PATHS to continue")
        paths = nxt
    if len(paths) > limit:
        raise GuardrailError(f"more than {limit} allowed paths")
    return paths


# ---------------------------------------------------------------- Omega bases

@dataclass(frozen=True)
class OmegaBasis:
    """Basis of Omega_p in coordinates of the allowed p-paths.

    ``columns[j]`` is a sparse primitive integer vector ``{path_index: coef}``;
    ``free[j]`` is a coordinate where column ``j`` is the only nonzero column,
    which makes expressing Omega-chains in this basis a division.
    """

    degree: int
    allowed_paths: tuple
    columns: tuple
    free: tuple
    index: dict = field(compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.columns)

    def matrix(self):
        """Dense integer matrix, ``|A_p|`` rows by ``dim`` columns."""
        m = [[0] * self.dim for _ in self.allowed_paths]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                m[i][j] = x
        return m

    def chain(self, j) -> Chain:
        col = self.columns[j]
        return Chain({self.allowed_paths[i]: x for i, x in col.items()}, self.degree)

    def chains(self):
        return [self.chain(j) for j in range(self.dim)]

    def combine(self, coords) -> Chain:
        """Chain with the given coordinates in this basis."""
        terms = {}
        for j, x in enumerate(coords):
            if not x:
                continue
            for i, c in self.columns[j].items():
                terms[i] = terms.get(i, 0) + x * c
        return Chain({self.allowed_paths[i]: v for i, v in terms.items()}, self.degree)

    def coordinates(self, c: Chain) -> list:
        """Coordinates of an Omega-chain; raises ValueError if ``c`` is not in the span."""
        if c.degree != self.degree:
            raise ValueError("degree mismatch")
        vec = {}
        for path, v in c.terms.items():
            i = self.index.get(path)
            if i is None:
                raise ValueError(f"path {path} is not allowed")
            vec[i] = v
        coords = [Fraction(vec.get(f, 0), col[f]) for f, col in zip(self.free, self.columns)]
        rebuilt = {}
        for x, col in zip(coords, self.columns):
            if x:
                for i, a in col.items():
                    rebuilt[i] = rebuilt.get(i, 0) + x * a
        if {i: v for i, v in rebuilt.items() if v} != vec:
            raise ValueError("chain is not in Omega")
        return coords

    def gram(self) -> QMatrix:
        """Canonical Gram matrix ``M^T M`` of the basis columns."""
        n = self.dim
        by_path = {}
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                by_path.setdefault(i, []).append((j, x))
        g = QMatrix(n, n)
        for entries in by_path.values():
            for a, x in entries:
                row = g.rows[a]
                for b, y in entries:
                    row[b] = row.get(b, 0) + x * y
        for r in g.rows:
            for k in [k for k, v in r.items() if not v]:
                del r[k]
            for k in r:
                r[k] = Fraction(r[k])
        return g


def _unit_basis(p, paths):
    index = {q: i for i, q in enumerate(paths)}
    return OmegaBasis(p, tuple(paths), tuple({i: 1} for i in range(len(paths))),
                      tuple(range(len(paths))), index)


def omega_basis(g: Digraph, p: int, cap=None) -> OmegaBasis:
    """Exact basis of Omega_p(g).

    The constraint rows are the non-allowed regular faces reachable from allowed
    p-paths. Columns coupled through shared rows are solved together; the kernel
    of each group is taken from its reduced row echelon form, so the result equals
    the kernel of the full constraint matrix taken in column order.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    paths = allowed_paths(g, p, cap)
    if p <= 1:
        return _unit_basis(p, paths)
    E = g.arrow_set
    rows: dict = {}
    for c, path in enumerate(paths):
        for k in range(1, p):
            a, b = path[k - 1], path[k + 1]
            if a == b or (a, b) in E:
                continue
            face = path[:k] + path[k + 1:]
            r = rows.setdefault(face, {})
            r[c] = r.get(c, 0) + (1 if k % 2 == 0 else -1)

    parent = list(range(len(paths)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for r in rows.values():
        cols = [c for c, v in r.items() if v]
        for c in cols[1:]:
            a, b = find(cols[0]), find(c)
            if a != b:
                parent[a] = b
    groups: dict = {}
    for c in range(len(paths)):
        groups.setdefault(find(c), []).append(c)
    group_rows: dict = {}
    for r in rows.values():
        nz = {c: v for c, v in r.items() if v}
        if nz:
            group_rows.setdefault(find(next(iter(nz))), []).append(nz)

    found = []
    for root, cols in groups.items():
        constraints = group_rows.get(root)
        if not constraints:
            found.extend((c, {c: 1}) for c in cols)
            continue
        local = {c: k for k, c in enumerate(cols)}
        dense = []
        for r in constraints:
            line = [0] * len(cols)
            for c, v in r.items():
                line[local[c]] = v
            dense.append(line)
        vecs, frees = kernel_basis(dense, len(cols))
        for v, f in zip(vecs, frees):
            found.append((cols[f], {cols[k]: x for k, x in enumerate(v) if x}))
    found.sort(key=lambda t: t[0])
    index = {q: i for i, q in enumerate(paths)}
    return OmegaBasis(p, tuple(paths), tuple(col for _, col in found),
                      tuple(f for f, _ in found), index)


def _minus_one_basis(augmented):
    if augmented:
        return OmegaBasis(-1, (UNIT,), ({0: 1},), (0,), {UNIT: 0})
    return OmegaBasis(-1, (), (), (), {})


# ---------------------------------------------------------------- complex

class ComplexSnapshot:
    """Lazily computed path chain complex of one digraph.

    ``boundary(p)`` is the exact matrix of the boundary from Omega_p to
    Omega_{p-1} in the chosen bases. In the augmented complex Omega_{-1} is the
    line spanned by the unit and ``boundary(0)`` is the all-ones row.
    """

    def __init__(self, digraph: Digraph, augmented=False, cap=None):
        self.digraph = digraph
        self.augmented = augmented
        self.cap = cap
        self._omega: dict = {}
        self._boundary: dict = {}
        self._rank: dict = {}

    @property
    def max_degree(self):
        return max(self._omega, default=-1)

    def omega(self, p) -> OmegaBasis:
        if p < -1:
            return _minus_one_basis(False)
        b = self._omega.get(p)
        if b is None:
            if p == -1:
                b = _minus_one_basis(self.augmented)
            else:
                b = omega_basis(self.digraph, p, self.cap)
            self._omega[p] = b
        return b

    def dim(self, p) -> int:
        return self.omega(p).dim

    def boundary(self, p) -> QMatrix:
        m = self._boundary.get(p)
        if m is not None:
            return m
        src = self.omega(p)
        dst = self.omega(p - 1)
        if p <= -1:
            m = QMatrix(dst.dim, src.dim)
        elif p == 0:
            if self.augmented:
                m = QMatrix(1, src.dim, [{j: Fraction(1) for j in range(src.dim)}])
            else:
                m = QMatrix(0, src.dim)
        else:
            cols = []
            for j in range(src.dim):
                d = boundary(src.chain(j))
                coords = dst.coordinates(d)
                cols.append({i: x for i, x in enumerate(coords) if x})
            m = QMatrix.from_columns(dst.dim, cols)
        self._boundary[p] = m
        return m

    def boundary_rank(self, p) -> int:
        r = self._rank.get(p)
        if r is None:
            r = self._rank[p] = self.boundary(p).rank()
        return r

    def betti(self, p) -> int:
        return self.dim(p) - self.boundary_rank(p) - self.boundary_rank(p + 1)

    def dims_until_zero(self, max_degree=64):
        """``[dim Omega_0, ...]`` up to the first zero (inclusive of nothing after it)."""
        dims = []
        for p in range(max_degree + 1):
            d = self.dim(p)
            if d == 0:
                return dims
            dims.append(d)
        raise NonTerminatingError(max_degree)


_SNAPSHOTS: dict = {}


def snapshot(g: Digraph, augmented=False) -> ComplexSnapshot:
    """Shared snapshot per (digraph, augmented); results are deterministic so sharing is safe."""
    key = (g, augmented, max_paths())
    s = _SNAPSHOTS.get(key)
    if s is None:
        s = _SNAPSHOTS[key] = ComplexSnapshot(g, augmented)
    return s


def homology_dims(g: Digraph, max_p: int) -> list[int]:
    if max_p < 0:
        raise ValueError("max_p must be >= 0")
    s = snapshot(g)
    return [s.betti(p) for p in range(max_p + 1)]


def euler_characteristic(g: Digraph, max_degree=64) -> int:
    """Alternating sum of dim Omega_p, with the sign of dim Omega_0 positive."""
    dims = snapshot(g).dims_until_zero(max_degree)
    return sum((-1) ** p * d for p, d in enumerate(dims))


# ---------------------------------------------------------------- products

def cross_product(u: Chain, v: Chain, ny: int) -> Chain:
    """Cross product of chains on X and Y as a chain on X box Y.

    ``ny`` is the vertex count of Y; vertex ``(x, y)`` has index ``x * ny + y``.
    Each stair-like lift is signed by its elevation, the number of unit cells
    under the staircase.
    """
    p, q = u.degree, v.degree
    if p < 0 or q < 0:
        raise ValueError("cross product needs degrees >= 0")
    shapes = []
    for horiz in combinations(range(p + q), p):
        hs = set(horiz)
        steps, elevation, b = [], 0, 0
        for t in range(p + q):
            if t in hs:
                steps.append(0)
                elevation += b
            else:
                steps.append(1)
                b += 1
        shapes.append((steps, -1 if elevation % 2 else 1))
    out = {}
    for x, cx in u.terms.items():
        for y, cy in v.terms.items():
            c = cx * cy
            for steps, sign in shapes:
                i = j = 0
                z = [x[0] * ny + y[0]]
                for s in steps:
                    if s == 0:
                        i += 1
                    else:
                        j += 1
                    z.append(x[i] * ny + y[j])
                key = tuple(z)
                out[key] = out.get(key, 0) + sign * c
    return Chain(out, p + q)


def join_product(u: Chain, v: Chain, nx: int) -> Chain:
    """Concatenation product on X * Y; Y's vertices are shifted by ``nx``."""
    out = {}
    for x, cx in u.terms.items():
        for y, cy in v.terms.items():
            key = x + tuple(k + nx for k in y)
            out[key] = out.get(key, 0) + cx * cy
    return Chain(out, u.degree + v.degree + 1)


def format_basis(basis: OmegaBasis, labels) -> list[str]:
    """One line per basis chain: ``coef*a-b-c`` terms separated by spaces."""
    lines = []
    for col in basis.columns:
        terms = [f"{x}*" + "-".join(labels[k] for k in basis.allowed_paths[i])
                 for i, x in sorted(col.items())]
        lines.append(" ".join(terms))
    return lines
