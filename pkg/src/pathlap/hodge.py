"""Hodge Laplacians on the path chain complex and their spectra.

Operators are assembled exactly in the (non-orthonormal) Omega bases using
explicit Gram matrices:

    L_p = G_p^-1 B_p^T G_{p-1} B_p,    K_p = B_{p+1} G_{p+1}^-1 B_{p+1}^T G_p,

and only converted to floats for the eigensolver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .chains import Chain, ComplexSnapshot, OmegaBasis, snapshot
from .digraph import Digraph
from .eigen import jacobi_eigenvalues, symmetrize
from .exact import QMatrix
from .multiset import (  # noqa: F401  (re-exported)
    SpectrumMultiset,
    ms_add,
    ms_scale,
    ms_subtract,
    ms_union,
    ms_union_all,
)

SYMMETRY_RESIDUAL = 1e-9


class AssemblyError(RuntimeError):
    """Symmetrized operator is not symmetric: the Gram or operator matrix is wrong."""


@dataclass(frozen=True)
class Weight:
    """Positive weights ``a_p``: elementary p-paths get squared norm ``1/a_p``.

    ``a_{-1}`` is always 1.
    """

    rule: str = "canonical"
    values: tuple = ()

    def __post_init__(self):
        if self.rule not in ("canonical", "normalized", "explicit"):
            raise ValueError(f"unknown weight rule {self.rule!r}")
        if self.rule == "explicit":
            vals = tuple(Fraction(v) for v in self.values)
            if not vals or any(v <= 0 for v in vals):
                raise ValueError("explicit weights must be positive")
            object.__setattr__(self, "values", vals)

    @classmethod
    def canonical(cls):
        return cls("canonical")

    @classmethod
    def normalized(cls):
        return cls("normalized")

    @classmethod
    def explicit(cls, values):
        return cls("explicit", tuple(values))

    def __call__(self, p) -> Fraction:
        if p < 0:
            return Fraction(1)
        if self.rule == "canonical":
            return Fraction(1)
        if self.rule == "normalized":
            return Fraction(factorial(p))
        if p >= len(self.values):
            raise ValueError(f"no weight given for degree {p}")
        return self.values[p]

    @property
    def is_canonical(self):
        return self.rule == "canonical" or all(v == 1 for v in self.values)

    def __str__(self):
        if self.rule == "explicit":
            return ",".join(str(v) for v in self.values)
        return self.rule


CANONICAL = Weight.canonical()
NORMALIZED = Weight.normalized()


def gram_matrix(basis: OmegaBasis, w: Weight = CANONICAL) -> QMatrix:
    """``(1/a_p) M^T M`` for the basis matrix M in elementary-path coordinates."""
    if basis.dim == 0:
        return QMatrix(0, 0)  # no weight needed for a zero space
    return basis.gram() * (1 / w(basis.degree))


@dataclass
class HodgeLevel:
    degree: int
    weight: Weight
    basis: OmegaBasis
    gram: QMatrix
    K: QMatrix
    L: QMatrix

    @property
    def delta(self) -> QMatrix:
        return self.K + self.L

    @property
    def dim(self):
        return self.basis.dim

    def operator(self, which="delta") -> QMatrix:
        which = which.lower()
        if which in ("delta", "d", "laplacian"):
            return self.delta
        if which == "k":
            return self.K
        if which == "l":
            return self.L
        raise ValueError(f"unknown operator {which!r}")

    def apply(self, chain: Chain, which="delta") -> Chain:
        """Apply the operator to an Omega-chain, returning a chain."""
        x = self.basis.coordinates(chain)
        vec = {i: v for i, v in enumerate(x) if v}
        y = self.operator(which) @ vec
        return self.basis.combine([y.get(i, 0) for i in range(self.dim)])

    def symmetric(self, which="delta"):
        s, resid = symmetrize(self.gram.to_float(), self.operator(which).to_float())
        scale = max(1.0, float(np.max(np.abs(s)))) if s.size else 1.0
        if resid > SYMMETRY_RESIDUAL * scale:
            raise AssemblyError(f"symmetry residual {resid:.3g} at degree {self.degree}")
        return s


def assemble_level(snap: ComplexSnapshot, p: int, w: Weight = CANONICAL) -> HodgeLevel:
    basis = snap.omega(p)
    g_lo = gram_matrix(snap.omega(p - 1), w)
    g = gram_matrix(basis, w)
    g_hi = gram_matrix(snap.omega(p + 1), w)
    b = snap.boundary(p)
    b_hi = snap.boundary(p + 1)
    g_inv = g.inverse()
    L = g_inv @ (b.T @ (g_lo @ b))
    K = b_hi @ (g_hi.inverse() @ (b_hi.T @ g))
    return HodgeLevel(p, w, basis, g, K, L)


def weighted_from_canonical(level: HodgeLevel, w: Weight) -> HodgeLevel:
    """Rescale a canonical level: K by a_{p+1}/a_p and L by a_p/a_{p-1}."""
    if not level.weight.is_canonical:
        raise ValueError("level must be assembled with the canonical weight")
    p = level.degree
    return HodgeLevel(
        p, w, level.basis, level.gram * (1 / w(p)),
        level.K * (w(p + 1) / w(p)),
        level.L * (w(p) / w(p - 1)),
    )


_LEVELS: dict = {}


def level(g: Digraph, p: int, w: Weight = CANONICAL, augmented=False) -> HodgeLevel:
    """Cached ``assemble_level`` on the shared snapshot of ``g``."""
    key = (g, p, w, augmented)
    lv = _LEVELS.get(key)
    if lv is None:
        lv = _LEVELS[key] = assemble_level(snapshot(g, augmented), p, w)
    return lv


def spectrum(lv: HodgeLevel, which="delta") -> SpectrumMultiset:
    """Eigenvalues of Delta, K or L at one level (Cholesky symmetrization + Jacobi)."""
    if lv.dim == 0:
        return SpectrumMultiset()
    vals = jacobi_eigenvalues(lv.symmetric(which))
    if vals.min() < -SYMMETRY_RESIDUAL * max(1.0, float(np.abs(vals).max())):
        raise AssemblyError(f"negative eigenvalue {vals.min():.3g}")
    return SpectrumMultiset.from_eigenvalues(vals)


_SPECTRA: dict = {}


def hodge_spectrum(g: Digraph, p: int, w: Weight = CANONICAL, which="delta",
                   augmented=False) -> SpectrumMultiset:
    key = (g, p, w, which, augmented)
    s = _SPECTRA.get(key)
    if s is None:
        s = _SPECTRA[key] = spectrum(level(g, p, w, augmented), which)
    return s


# ---------------------------------------------------------------- spectral calculus

@dataclass
class DecompositionReport:
    degree: int
    deviations: dict
    tolerance: float

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values(), default=0.0)

    @property
    def ok(self) -> bool:
        return self.max_deviation <= self.tolerance


def decompose_check(snap: ComplexSnapshot, p: int, w: Weight = CANONICAL,
                    tol=1e-9) -> DecompositionReport:
    """Check the positive-spectrum splittings at degree p.

    spec+ Delta_p = spec+ K_p | spec+ L_p,  spec+ K_p = spec+ L_{p+1},
    spec+ Delta_p = spec+ L_p | spec+ L_{p+1}.
    """
    here = assemble_level(snap, p, w)
    up = assemble_level(snap, p + 1, w)
    d = spectrum(here, "delta").positive()
    k = spectrum(here, "k").positive()
    lp = spectrum(here, "l").positive()
    lq = spectrum(up, "l").positive()
    devs = {
        "delta=K|L": d.deviation(ms_union(k, lp)),
        "K=L(p+1)": k.deviation(lq),
        "delta=L|L(p+1)": d.deviation(ms_union(lp, lq)),
    }
    return DecompositionReport(p, devs, tol)


def l_spectra_from_delta(delta_specs, p=None) -> SpectrumMultiset:
    """spec+ L_p from the spectra of Delta_0 .. Delta_{p-1}.

    Odd steps back are added, even steps back removed:
    L_p = (Delta_{p-1} | Delta_{p-3} | ...) minus (Delta_{p-2} | Delta_{p-4} | ...).
    """
    if p is None:
        p = len(delta_specs)
    if p < 1:
        raise ValueError("p must be >= 1")
    if len(delta_specs) < p:
        raise ValueError(f"need spectra for degrees 0..{p - 1}")
    plus = [delta_specs[p - j].positive() for j in range(1, p + 1, 2)]
    minus = [delta_specs[p - j].positive() for j in range(2, p + 1, 2)]
    return ms_subtract(ms_union_all(plus), ms_union_all(minus))


def canonical_specs_from_weighted(weighted_specs, w: Weight, homology_dims) -> list:
    """Recover canonical spec Delta_q, q = 0..p, from the weighted spectra for q = 0..p.

    Peels spec+ L_{q+1} = (a_q/a_{q+1}) (spec+ Delta^a_q minus (a_q/a_{q-1}) spec+ L_q),
    then spec+ Delta_q = spec+ L_q | spec+ L_{q+1}, then restores dim H_q zeros.
    """
    p = len(weighted_specs) - 1
    ls = [SpectrumMultiset()]
    for q in range(p + 1):
        rest = ms_subtract(weighted_specs[q].positive(), ms_scale(ls[q], w(q) / w(q - 1)))
        ls.append(ms_scale(rest, w(q) / w(q + 1)) if rest else SpectrumMultiset())
    out = []
    for q in range(p + 1):
        pos = ms_union(ls[q], ls[q + 1])
        out.append(ms_union(pos, SpectrumMultiset([(0, homology_dims[q])])))
    return out
