"""Eigenvalue multisets with tolerance-aware matching.

Values may be floats (from the eigensolver) or exact ``Fraction``s (closed
forms); all operations accept both and compare with a relative tolerance above 1.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Real

from .errors import SpectralIdentityError

MATCH_EPS = 1e-6
CLUSTER_EPS = 1e-7
ZERO_CLAMP = 1e-9


def close(a, b, eps=MATCH_EPS) -> bool:
    if a == b:
        return True
    fa, fb = float(a), float(b)
    return abs(fa - fb) <= eps * max(1.0, abs(fa), abs(fb))


class SpectrumMultiset:
    """Sorted ``(value, multiplicity)`` pairs; multiplicities are Python ints."""

    __slots__ = ("entries", "eps")

    def __init__(self, pairs=(), eps=MATCH_EPS):
        self.eps = eps
        merged: list[list] = []
        for v, m in sorted(((v, int(m)) for v, m in pairs), key=lambda t: t[0]):
            if m < 0:
                raise ValueError("negative multiplicity")
            if m == 0:
                continue
            if merged and close(merged[-1][0], v, eps):
                merged[-1][1] += m
            else:
                merged.append([v, m])
        self.entries = tuple((v, m) for v, m in merged)

    @classmethod
    def from_eigenvalues(cls, values, eps=MATCH_EPS, cluster_eps=CLUSTER_EPS):
        """Cluster raw eigenvalues; magnitudes below 1e-9 are taken as exact zeros."""
        vals = sorted(0.0 if abs(float(x)) < ZERO_CLAMP else float(x) for x in values)
        clusters: list[list[float]] = []
        for x in vals:
            if clusters and abs(x - clusters[-1][-1]) <= cluster_eps * max(1.0, abs(x), abs(clusters[-1][-1])):
                clusters[-1].append(x)
            else:
                clusters.append([x])
        pairs = []
        for c in clusters:
            v = 0.0 if 0.0 in c else sum(c) / len(c)
            pairs.append((v, len(c)))
        out = cls.__new__(cls)
        out.eps = eps
        out.entries = tuple(pairs)
        return out

    @classmethod
    def from_values(cls, values, eps=MATCH_EPS):
        return cls(((v, 1) for v in values), eps)

    # queries ---------------------------------------------------------------
    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __bool__(self):
        return bool(self.entries)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def values(self):
        return [v for v, _ in self.entries]

    def multiplicity(self, value) -> int:
        for v, m in self.entries:
            if close(v, value, self.eps):
                return m
        return 0

    @property
    def zero_multiplicity(self) -> int:
        return sum(m for v, m in self.entries if v == 0)

    def positive(self) -> "SpectrumMultiset":
        """The multiset with the eigenvalue 0 removed."""
        return self._wrap([(v, m) for v, m in self.entries if v != 0])

    def expanded(self):
        return [v for v, m in self.entries for _ in range(m)]

    @property
    def max(self):
        return self.entries[-1][0] if self.entries else None

    @property
    def min(self):
        return self.entries[0][0] if self.entries else None

    def as_float(self) -> "SpectrumMultiset":
        return self._wrap([(float(v), m) for v, m in self.entries])

    def _wrap(self, pairs):
        out = SpectrumMultiset.__new__(SpectrumMultiset)
        out.eps = self.eps
        out.entries = tuple(pairs)
        return out

    # comparison -------------------------------------------------------------
    def matches(self, other, eps=None) -> bool:
        eps = self.eps if eps is None else eps
        if len(self.entries) != len(other.entries):
            return False
        return all(m1 == m2 and close(v1, v2, eps)
                   for (v1, m1), (v2, m2) in zip(self.entries, other.entries))

    def __eq__(self, other):
        if not isinstance(other, SpectrumMultiset):
            return NotImplemented
        return self.matches(other)

    __hash__ = None

    def deviation(self, other) -> float:
        """Largest relative gap between the sorted expansions; inf if totals differ."""
        a, b = self.expanded(), other.expanded()
        if len(a) != len(b):
            return float("inf")
        return max((abs(float(x) - float(y)) / max(1.0, abs(float(x)), abs(float(y)))
                    for x, y in zip(a, b)), default=0.0)

    def __repr__(self):
        return "{" + format_spectrum(self) + "}"

    # multiset algebra -------------------------------------------------------
    def __or__(self, other):
        return ms_union(self, other)

    def __sub__(self, other):
        return ms_subtract(self, other)

    def __add__(self, other):
        return ms_add(self, other)

    def __rmul__(self, c):
        return ms_scale(self, c)


def ms_union(a: SpectrumMultiset, b: SpectrumMultiset) -> SpectrumMultiset:
    return SpectrumMultiset(list(a.entries) + list(b.entries), a.eps)


def ms_subtract(a: SpectrumMultiset, b: SpectrumMultiset) -> SpectrumMultiset:
    """Inverse of union; every value of ``b`` must be present in ``a`` often enough."""
    entries = [list(e) for e in a.entries]
    for v, m in b.entries:
        for e in entries:
            if close(e[0], v, a.eps):
                if e[1] < m:
                    raise SpectralIdentityError(
                        f"cannot remove {v} x{m}: only x{e[1]} present")
                e[1] -= m
                break
        else:
            raise SpectralIdentityError(f"cannot remove {v} x{m}: value absent")
    return SpectrumMultiset([(v, m) for v, m in entries if m], a.eps)


def ms_scale(a: SpectrumMultiset, c) -> SpectrumMultiset:
    if isinstance(c, Real) and not isinstance(c, (float, Fraction)):
        c = Fraction(c)
    return SpectrumMultiset([(c * v, m) for v, m in a.entries], a.eps)


def ms_add(a: SpectrumMultiset, b: SpectrumMultiset) -> SpectrumMultiset:
    """Minkowski sum; empty if either operand is empty."""
    return SpectrumMultiset([(x + y, m * n) for x, m in a.entries for y, n in b.entries], a.eps)


def ms_union_all(parts, eps=MATCH_EPS) -> SpectrumMultiset:
    pairs = []
    for p in parts:
        pairs.extend(p.entries)
    return SpectrumMultiset(pairs, eps)


# ---------------------------------------------------------------- formatting

def format_value(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return str(v)
    s = f"{float(v):.10g}"
    return "0" if s == "-0" else s


def format_spectrum(s: SpectrumMultiset) -> str:
    return ", ".join(f"{format_value(v)} ×{m}" for v, m in s.entries)


def spectrum_records(s: SpectrumMultiset) -> list[dict]:
    """Serializable layout: value to 17 significant digits, multiplicity as a decimal string."""
    out = []
    for v, m in s.entries:
        rec = {"value": f"{float(v):.17g}", "multiplicity": str(m)}
        if isinstance(v, Fraction):
            rec["exact"] = format_value(v)
        out.append(rec)
    return out
