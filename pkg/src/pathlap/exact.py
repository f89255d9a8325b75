"""Sparse exact rational matrices.

Just enough linear algebra for chain complexes: products, transposes,
row reduction, rank and block-wise inverses. Entries are ``Fraction``; zero
entries are never stored.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np


class QMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [{} for _ in range(nrows)]

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n, value=1):
        v = Fraction(value)
        return cls(n, n, [{i: v} for i in range(n)] if v else None)

    @classmethod
    def from_dense(cls, data, ncols=None):
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = [{j: Fraction(x) for j, x in enumerate(r) if x} for r in data]
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, nrows, columns):
        """Build from a list of sparse columns ``{row: value}``."""
        m = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, x in col.items():
                if x:
                    m.rows[i][j] = Fraction(x)
        return m

    def copy(self):
        return QMatrix(self.nrows, self.ncols, [dict(r) for r in self.rows])

    # views --------------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, Fraction(0))

    def columns(self):
        cols = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, x in row.items():
                cols[j][i] = x
        return cols

    def to_dense(self):
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, row in enumerate(self.rows):
            for j, x in row.items():
                out[i][j] = x
        return out

    def to_float(self):
        a = np.zeros((self.nrows, self.ncols))
        for i, row in enumerate(self.rows):
            for j, x in row.items():
                a[i, j] = float(x)
        return a

    @property
    def T(self):
        t = QMatrix(self.ncols, self.nrows)
        for i, row in enumerate(self.rows):
            for j, x in row.items():
                t.rows[j][i] = x
        return t

    def nnz(self):
        return sum(len(r) for r in self.rows)

    def is_zero(self):
        return not any(self.rows)

    # arithmetic ---------------------------------------------------------
    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            out = QMatrix(self.nrows, other.ncols)
            orows = other.rows
            for i, row in enumerate(self.rows):
                acc = {}
                for k, x in row.items():
                    for j, y in orows[k].items():
                        acc[j] = acc.get(j, 0) + x * y
                out.rows[i] = {j: v for j, v in acc.items() if v}
            return out
        # sparse vector as dict
        out = {}
        for i, row in enumerate(self.rows):
            s = sum((x * other[k] for k, x in row.items() if k in other), Fraction(0))
            if s:
                out[i] = s
        return out

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = self.copy()
        for i, row in enumerate(other.rows):
            r = out.rows[i]
            for j, x in row.items():
                v = r.get(j, 0) + sign * x
                if v:
                    r[j] = v
                else:
                    r.pop(j, None)
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, c):
        c = Fraction(c)
        if not c:
            return QMatrix(self.nrows, self.ncols)
        return QMatrix(self.nrows, self.ncols, [{j: c * x for j, x in r.items()} for r in self.rows])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    __hash__ = None

    def __repr__(self):
        return f"QMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # elimination ----------------------------------------------------------
    def rank(self):
        return len(_echelon(self.rows))

    def blocks(self):
        """Index groups of the connected components of the sparsity pattern (square only)."""
        n = self.nrows
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, row in enumerate(self.rows):
            for j in row:
                a, b = find(i), find(j)
                if a != b:
                    parent[a] = b
        groups = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def inverse(self):
        """Exact inverse, computed independently on each diagonal block."""
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        out = QMatrix(self.nrows, self.ncols)
        for idx in self.blocks():
            local = {g: k for k, g in enumerate(idx)}
            dense = [[Fraction(0)] * len(idx) for _ in idx]
            for a, g in enumerate(idx):
                for j, x in self.rows[g].items():
                    dense[a][local[j]] = x
            inv = dense_inverse(dense)
            for a, g in enumerate(idx):
                out.rows[g] = {idx[b]: x for b, x in enumerate(inv[a]) if x}
        return out


def _echelon(rows):
    """Reduce a list of sparse rows to echelon form; returns ``{pivot_col: row}``."""
    pivots = {}
    for row in rows:
        r = dict(row)
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                inv = 1 / Fraction(r[c])
                pivots[c] = {j: x * inv for j, x in r.items()}
                break
            f = r[c]
            for j, x in p.items():
                v = r.get(j, 0) - f * x
                if v:
                    r[j] = v
                else:
                    r.pop(j, None)
    return pivots


def rref(rows, ncols):
    """Reduced row echelon form of dense rational rows; returns ``(rows, pivot_cols)``."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def kernel_basis(rows, ncols):
    """Primitive integer kernel vectors, one per free column of the RREF, in column order.

    Each vector is rescaled to coprime integers with a positive first nonzero entry.
    Returns ``(vectors, free_cols)``.
    """
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    vecs, frees = [], []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        vecs.append(primitive(v))
        frees.append(f)
    return vecs, frees


def primitive(v):
    """Scale a rational vector to coprime integers with positive leading entry."""
    den = 1
    for x in v:
        if x:
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return [x // g for x in ints]


def dense_inverse(a):
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def column_space_equal(a_cols, b_cols):
    """Whether two families of sparse vectors span the same rational space."""
    ra = len(_echelon(a_cols))
    rb = len(_echelon(b_cols))
    return ra == rb == len(_echelon(list(a_cols) + list(b_cols)))


def span_rank(vectors):
    return len(_echelon(vectors))
