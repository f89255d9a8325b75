"""Closed-form Hodge spectra and spectral pipelines for products and joins.

Closed forms carry exact rational eigenvalues and integer multiplicities;
floats appear only when a result is compared against the eigensolver.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod

from .chains import homology_dims, snapshot
from .digraph import Digraph, family, join_pow, discrete, motifs, undirected_components
from .errors import HypothesisError, NonTerminatingError
from .hodge import NORMALIZED, hodge_spectrum, l_spectra_from_delta
from .multiset import (
    MATCH_EPS,
    SpectrumMultiset,
    close,
    ms_add,
    ms_scale,
    ms_union,
    ms_union_all,
)


@dataclass(frozen=True)
class ClosedFormSpectrum:
    """Sorted ``(Fraction value, int multiplicity)`` pairs with a provenance tag."""

    entries: tuple
    provenance: str

    @classmethod
    def build(cls, terms, provenance):
        acc: dict = {}
        for v, m in terms:
            if m:
                v = Fraction(v)
                acc[v] = acc.get(v, 0) + m
        return cls(tuple(sorted(acc.items())), provenance)

    @property
    def multiset(self) -> SpectrumMultiset:
        return SpectrumMultiset(self.entries)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def as_multiset(s) -> SpectrumMultiset:
    return s.multiset if isinstance(s, ClosedFormSpectrum) else s


def _check_degree(n, p):
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= p <= n:
        raise ValueError(f"degree {p} out of range 0..{n}")


def cube_spectrum(n: int, p: int) -> ClosedFormSpectrum:
    """Canonical spec Delta_p of the n-cube I^n."""
    _check_degree(n, p)
    tag = f"cube n={n} p={p}"
    if p == 0:
        return ClosedFormSpectrum.build(((2 * k, comb(n, k)) for k in range(n + 1)), tag)
    lower = ((Fraction(2 * k, p), comb(n, k) * comb(k - 1, p - 1)) for k in range(p, n + 1))
    upper = ((Fraction(2 * k, p + 1), comb(n, k) * comb(k - 1, p)) for k in range(p + 1, n + 1))
    return ClosedFormSpectrum.build(itertools.chain(lower, upper), tag)


def torus_spectrum(n: int, p: int) -> ClosedFormSpectrum:
    """Canonical spec Delta_p of the n-torus T^n."""
    _check_degree(n, p)
    tag = f"torus n={n} p={p}"
    if p == 0:
        return ClosedFormSpectrum.build(((3 * k, 2**k * comb(n, k)) for k in range(n + 1)), tag)
    lower = ((Fraction(3 * k, p), 2**k * comb(n, k) * comb(n - 1, p - 1)) for k in range(n + 1))
    upper = ((Fraction(3 * k, p + 1), 2**k * comb(n, k) * comb(n - 1, p)) for k in range(n + 1))
    return ClosedFormSpectrum.build(itertools.chain(lower, upper), tag)


def join_power_spectrum(m: int, n: int, r: int) -> ClosedFormSpectrum:
    """Augmented spec of the Laplacian in degree r-1 on the join power D(m)^{*n}.

    For r >= 2 this is the ordinary Hodge Laplacian; r = 0, 1 only make sense
    in the augmented complex.
    """
    if m < 1 or n < 1 or r < 0:
        raise ValueError("need m, n >= 1 and r >= 0")
    tag = f"join m={m} n={n} r={r}"
    if n < r:
        return ClosedFormSpectrum((), tag)
    terms = (((n - k) * m, (m - 1) ** k * comb(r, k) * comb(n, r)) for k in range(r + 1))
    return ClosedFormSpectrum.build(terms, tag)


def multinomial(n, ks):
    rest = n - sum(ks)
    if rest < 0:
        return 0
    return factorial(n) // (prod(factorial(k) for k in ks) * factorial(rest))


# ---------------------------------------------------------------- Cartesian powers

def _exact_eigenvalues(spec: SpectrumMultiset, max_den=1000, tol=1e-9):
    """Rational approximations of the positive eigenvalues, or None if one is irrational."""
    out = []
    for v, m in spec.positive():
        q = Fraction(v).limit_denominator(max_den)
        if abs(float(q) - float(v)) > tol * max(1.0, abs(float(v))):
            return None
        out.append((q, m))
    return out


def power_case(g: Digraph):
    """'a' (|E| = |V|), 'b' (|E| = |V| - 1) or None when the closed form does not apply."""
    if undirected_components(g) != 1:
        return None
    mr = motifs(g)
    if mr.double_arrows or mr.triangles or mr.squares:
        return None
    e, v = len(g.arrows), g.vertex_count
    if e == v and v >= 3:
        return "a"
    if e == v - 1 and v >= 2:
        return "b"
    return None


def normalized_spectra(g: Digraph, max_degree=64) -> list[SpectrumMultiset]:
    """Numerical normalized spectra of g in every degree with nonzero Omega."""
    dims = snapshot(g).dims_until_zero(max_degree)
    return [hodge_spectrum(g, q, NORMALIZED) for q in range(len(dims))]


def _convolve_power(base: list, n: int) -> list:
    """Spectra of the n-th Cartesian power by repeated degree-wise convolution."""
    cur = list(base)
    for _ in range(n - 1):
        nxt = []
        for r in range(len(cur) + len(base) - 1):
            parts = [ms_add(cur[p], base[r - p])
                     for p in range(len(cur)) if 0 <= r - p < len(base)]
            nxt.append(ms_union_all(parts))
        cur = nxt
    return cur


def power_spectrum_normalized(g: Digraph, n: int, r: int):
    """spec Delta^(a)_r(G^n) for the weight a_p = p!.

    Returns a ClosedFormSpectrum when the motif-free closed form applies and the
    eigenvalues of Delta_0(G) are rational; otherwise the numerical convolution.
    """
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    case = power_case(g)
    lam = _exact_eigenvalues(hodge_spectrum(g, 0)) if case else None
    if lam is None:
        spectra = _convolve_power(normalized_spectra(g), n)
        return spectra[r] if r < len(spectra) else SpectrumMultiset()
    tag = f"power case ({case}) |V|={g.vertex_count} n={n} r={r}"
    if r > n:
        return ClosedFormSpectrum((), tag)
    terms = []
    for ks in itertools.product(range(n + 1), repeat=len(lam)):
        k = sum(ks)
        if k > n or (case == "b" and k < r):
            continue
        value = sum((kl * lv for kl, (lv, _) in zip(ks, lam)), Fraction(0))
        mult = prod(ml**kl for kl, (_, ml) in zip(ks, lam)) * multinomial(n, ks)
        mult *= comb(n, r) if case == "a" else comb(k, r)
        terms.append((value, mult))
    return ClosedFormSpectrum.build(terms, tag)


def _poly_power(coeffs, n):
    out = [1]
    for _ in range(n):
        nxt = [0] * (len(out) + len(coeffs) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(coeffs):
                nxt[i + j] += a * b
        out = nxt
    return out


def power_homology(g: Digraph, n: int) -> list[int]:
    """Betti numbers of G^n from those of G by the product formula."""
    top = len(snapshot(g).dims_until_zero()) - 1
    return _poly_power(homology_dims(g, max(top, 0)), n)


def power_spectrum_canonical(g: Digraph, n: int, p: int) -> SpectrumMultiset:
    """Canonical spec Delta_p(G^n) without constructing G^n.

    Normalized spectra of G^n give spec+ L^(a)_q by the alternating formula;
    L^(a)_q = q L_q; spec+ Delta_p = spec+ L_p | spec+ L_{p+1}; zeros come from
    the Betti numbers of G^n.
    """
    if n < 1 or p < 0:
        raise ValueError("need n >= 1 and p >= 0")
    weighted = [as_multiset(power_spectrum_normalized(g, n, q)) for q in range(p + 1)]

    def canonical_l(q):
        if q == 0:
            return SpectrumMultiset()
        return ms_scale(l_spectra_from_delta(weighted, q), Fraction(1, q))

    positive = ms_union(canonical_l(p), canonical_l(p + 1))
    betti = power_homology(g, n)
    zeros = betti[p] if p < len(betti) else 0
    return ms_union(positive, SpectrumMultiset([(0, zeros)]))


# ---------------------------------------------------------------- joins

def augmented_spectra(g: Digraph, max_degree=64) -> list[SpectrumMultiset]:
    """Augmented spectra in degrees -1, 0, ... (list index = degree + 1)."""
    dims = snapshot(g).dims_until_zero(max_degree)
    return [hodge_spectrum(g, q, augmented=True) for q in range(-1, len(dims))]


def generic_join_spectrum(x: Digraph, y: Digraph, r: int) -> SpectrumMultiset:
    """Augmented spec in degree r of the join X*Y from the augmented spectra of X and Y."""
    if r < -1:
        raise ValueError("r must be >= -1")
    sx, sy = augmented_spectra(x), augmented_spectra(y)
    parts = []
    for p in range(-1, r + 1):
        q = r - 1 - p
        if p + 1 < len(sx) and 0 <= q + 1 < len(sy):
            parts.append(ms_add(sx[p + 1], sy[q + 1]))
    return ms_union_all(parts)


# ---------------------------------------------------------------- bound

@dataclass(frozen=True)
class BoundReport:
    bound: int
    vertex_term: int
    motif_term: int
    corollary_applies: bool
    corollary_bound: int | None


def lambda1_bound(g: Digraph) -> BoundReport:
    """Upper bound on the largest eigenvalue of Delta_1 from degrees and motif counts."""
    mr = motifs(g)
    if mr.double_arrows:
        raise HypothesisError(f"double arrow {mr.double_arrows[0]} present")
    if mr.multisquare_found:
        raise HypothesisError("multisquare present")
    vertex_term = 2 * max(mr.degree, default=0)
    motif_term = max((3 * mr.deg_triangle[a] + 2 * mr.deg_square[a] for a in g.arrows), default=0)
    applies = all(d <= 2 for d in mr.deg_triangle.values())
    return BoundReport(max(vertex_term, motif_term), vertex_term, motif_term,
                       applies, vertex_term if applies else None)


# ---------------------------------------------------------------- isospectrality

def is_hodge_isospectral(g1: Digraph, g2: Digraph, max_p: int, eps=MATCH_EPS) -> bool:
    """Whether spec Delta_p agrees for p = 0..max_p.

    Both Omega sequences must vanish by degree max_p + 1.
    """
    for g in (g1, g2):
        if snapshot(g).dim(max_p + 1):
            raise NonTerminatingError(max_p + 1)
    return all(hodge_spectrum(g1, p).matches(hodge_spectrum(g2, p), eps)
               for p in range(max_p + 1))


# ---------------------------------------------------------------- verification report

@dataclass(frozen=True)
class ReportRow:
    family: str
    n: int
    p: int
    closed_entries: int
    numeric_entries: int
    max_deviation: float
    multiplicity_mismatches: int

    @property
    def ok(self) -> bool:
        return self.multiplicity_mismatches == 0 and self.max_deviation <= MATCH_EPS


def compare(closed: SpectrumMultiset, numeric: SpectrumMultiset, eps=MATCH_EPS):
    """``(max relative gap between matched values, number of unmatched or miscounted values)``."""
    left = list(closed.entries)
    right = list(numeric.entries)
    worst, mismatches = 0.0, 0
    used = set()
    for v, m in left:
        hit = next((i for i, (w, _) in enumerate(right) if i not in used and close(v, w, eps)), None)
        if hit is None:
            mismatches += 1
            continue
        used.add(hit)
        w, mw = right[hit]
        worst = max(worst, abs(float(v) - float(w)) / max(1.0, abs(float(v)), abs(float(w))))
        if mw != m:
            mismatches += 1
    mismatches += len(right) - len(used)
    return worst, mismatches


FAMILIES = ("cube", "torus", "simplex", "sphere", "join")


def family_cases(name: str, n: int, max_p=None, m=2):
    """``(p, closed form, digraph, augmented degree)`` for each degree checked at size n."""
    if name == "cube":
        g, gen = family("cube", n), lambda p: cube_spectrum(n, p)
        top = n
    elif name == "torus":
        g, gen = family("torus", n), lambda p: torus_spectrum(n, p)
        top = n
    elif name in ("simplex", "sphere", "join"):
        mm = {"simplex": 1, "sphere": 2}.get(name, m)
        g = join_pow(discrete(mm), n)
        gen = lambda p: join_power_spectrum(mm, n, p + 1)  # noqa: E731
        top = n - 1
    else:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    if max_p is not None:
        top = min(top, max_p)
    return g, [(p, gen(p)) for p in range(top + 1)]


def verify_family(name: str, max_n: int, max_p=None, m=2) -> list[ReportRow]:
    """Compare closed forms against the eigensolver for sizes 1..max_n."""
    rows = []
    for n in range(1, max_n + 1):
        g, cases = family_cases(name, n, max_p, m)
        augmented = name in ("simplex", "sphere", "join")
        for p, cf in cases:
            numeric = hodge_spectrum(g, p, augmented=augmented)
            dev, miss = compare(cf.multiset, numeric)
            rows.append(ReportRow(name, n, p, len(cf), len(numeric), dev, miss))
    return rows


def power_examples() -> dict:
    """The six motif-free base digraphs whose normalized powers have closed forms.

    Edges of the path and the star may be oriented arbitrarily; one mixed
    orientation is fixed here.
    """
    return {
        "i": family("I"),
        "ii": family("T"),
        "iii": family("C", 4),
        "iv": Digraph(4, [(0, 1), (1, 2), (2, 0), (0, 3)]),
        "v": Digraph(3, [(0, 1), (2, 1)]),
        "vi": Digraph(4, [(0, 1), (2, 0), (0, 3)]),
    }
