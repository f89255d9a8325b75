"""Acceptance gate: one test per criterion, at the stated tolerances."""

from math import comb

import numpy as np
import pytest

from pathlap.chains import ComplexSnapshot, cross_product, join_product, snapshot
from pathlap.digraph import Digraph, box_pow, cartesian_product, cycle, discrete, family, join, join_pow
from pathlap.exact import column_space_equal
from pathlap.formulas import (
    ClosedFormSpectrum,
    cube_spectrum,
    is_hodge_isospectral,
    join_power_spectrum,
    lambda1_bound,
    power_examples,
    power_spectrum_canonical,
    power_spectrum_normalized,
    torus_spectrum,
)
from pathlap.hodge import (
    CANONICAL,
    NORMALIZED,
    Weight,
    assemble_level,
    decompose_check,
    hodge_spectrum,
    level,
)
from pathlap.multiset import SpectrumMultiset

from corpus import bound_corpus, exact_corpus, spectral_corpus
from test_chains import motif_chains

EPS = 1e-6


def criterion(number, title):
    return pytest.mark.criterion(number, title)


@criterion(1, "base spectra")
def test_base_spectra():
    ex = power_examples()
    cases = [
        (ex["i"], [0, 2]),
        (ex["ii"], [0, 3, 3]),
        (ex["iii"], [0, 2, 2, 4]),
        (ex["iv"], [0, 1, 3, 4]),
        (ex["v"], [0, 1, 3]),
        (ex["vi"], [0, 1, 1, 4]),
    ]
    for g, expected in cases:
        got = hodge_spectrum(g, 0).expanded()
        assert len(got) == len(expected)
        assert np.max(np.abs(np.array(got, dtype=float) - expected)) <= 1e-9


@criterion(2, "cube spectra")
def test_cube_theorem():
    for n in range(1, 5):
        g = family("cube", n)
        for p in range(n + 1):
            numeric = hodge_spectrum(g, p)
            assert numeric.matches(cube_spectrum(n, p).multiset, EPS), (n, p)
            if p >= 1:
                lo_value, lo_mult = numeric.entries[0]
                assert abs(lo_value - 2) <= EPS and lo_mult == comb(n + 1, p + 1)
        assert abs(hodge_spectrum(g, 1).max - 2 * n) <= EPS * 2 * n


@criterion(3, "torus spectra")
def test_torus_theorem():
    for n in range(1, 4):
        g = family("torus", n)
        for p in range(n + 1):
            numeric = hodge_spectrum(g, p)
            assert numeric.matches(torus_spectrum(n, p).multiset, EPS), (n, p)
            assert numeric.zero_multiplicity == comb(n, p)


@criterion(4, "join power spectra")
def test_join_theorem():
    for m in range(1, 4):
        for n in range(1, 5):
            g = join_pow(discrete(m), n)
            for r in range(2, n + 1):
                numeric = hodge_spectrum(g, r - 1)
                assert numeric.matches(join_power_spectrum(m, n, r).multiset, EPS), (m, n, r)
    k33 = join(discrete(3), discrete(3))
    assert hodge_spectrum(k33, 1).matches(SpectrumMultiset([(0, 4), (3, 4), (6, 1)]), EPS)
    for n in range(2, 6):
        for r in range(2, n + 1):
            assert hodge_spectrum(family("K", n), r - 1).matches(SpectrumMultiset([(n, comb(n, r))]), EPS)


@criterion(5, "normalized powers")
def test_normalized_power_theorem():
    for key, g in power_examples().items():
        for n in range(1, 4):
            gn = box_pow(g, n)
            for r in range(n + 1):
                closed = power_spectrum_normalized(g, n, r)
                assert isinstance(closed, ClosedFormSpectrum), key
                numeric = hodge_spectrum(gn, r, NORMALIZED)
                assert numeric.matches(closed.multiset, EPS), (key, n, r)


@criterion(6, "pipeline equivalence")
def test_pipeline_equivalence():
    # any subtraction underflow raises and fails the test
    for g in (family("I"), family("T"), cycle(4)):
        for n in range(1, 4):
            gn = box_pow(g, n)
            for p in range(n + 2):
                predicted = power_spectrum_canonical(g, n, p)
                assert predicted.matches(hodge_spectrum(gn, p), EPS), (g, n, p)


@criterion(7, "spectral splittings")
def test_spectral_calculus_identities():
    for name, g, top in spectral_corpus():
        s = snapshot(g)
        for p in range(top + 1):
            rep = decompose_check(s, p, tol=1e-9)
            assert rep.ok, (name, p, rep.deviations)


def _cross_rule(x, y):
    z = cartesian_product(x, y)
    ny = y.vertex_count
    for p in range(3):
        for q in range(3):
            bx, by = snapshot(x).omega(p), snapshot(y).omega(q)
            if not (bx.dim and by.dim):
                continue
            lx, ly, lz = level(x, p, NORMALIZED), level(y, q, NORMALIZED), level(z, p + q, NORMALIZED)
            for u in bx.chains():
                for v in by.chains():
                    w = cross_product(u, v, ny)
                    d = w.boundary()
                    rhs = cross_product(u.boundary(), v, ny) if p else None
                    if q:
                        part = cross_product(u, v.boundary(), ny) * (-1) ** p
                        rhs = part if rhs is None else rhs + part
                    if rhs is not None:
                        assert d == rhs
                    else:
                        assert d.is_zero()
                    assert lz.apply(w) == cross_product(lx.apply(u), v, ny) + cross_product(u, ly.apply(v), ny)


def _join_rule(x, y):
    z = join(x, y)
    nx = x.vertex_count
    for p in range(-1, 2):
        for q in range(-1, 2):
            bx, by = snapshot(x, True).omega(p), snapshot(y, True).omega(q)
            if not (bx.dim and by.dim):
                continue
            lx, ly = level(x, p, augmented=True), level(y, q, augmented=True)
            lz = level(z, p + q + 1, augmented=True)
            for u in bx.chains():
                for v in by.chains():
                    w = join_product(u, v, nx)
                    d = w.boundary(augmented=True)
                    rhs = None
                    if p >= 0:
                        rhs = join_product(u.boundary(augmented=True), v, nx)
                    if q >= 0:
                        part = join_product(u, v.boundary(augmented=True), nx) * (-1) ** (p + 1)
                        rhs = part if rhs is None else rhs + part
                    if rhs is not None:
                        assert d == rhs
                    else:
                        assert d.is_zero()
                    assert lz.apply(w) == join_product(lx.apply(u), v, nx) + join_product(u, ly.apply(v), nx)


@criterion(8, "exact algebraic properties")
def test_exact_algebraic_properties():
    weights = [CANONICAL, NORMALIZED, Weight.explicit([3, "1/2", 7, "5/3"])]
    for g in exact_corpus():
        for augmented in (False, True):
            s = ComplexSnapshot(g, augmented)
            for p in range(4):
                assert (s.boundary(p) @ s.boundary(p + 1)).is_zero()
        s = ComplexSnapshot(g)
        for p in range(3):
            canon = assemble_level(s, p)
            for w in weights:
                lv = assemble_level(s, p, w)
                for op in (lv.K, lv.L):
                    assert lv.gram @ op == (lv.gram @ op).T
                assert lv.K == canon.K * (w(p + 1) / w(p))
                assert lv.L == canon.L * (w(p) / w(p - 1))
        assert column_space_equal(list(snapshot(g).omega(2).columns), motif_chains(g))
    _cross_rule(family("I"), family("T"))
    _cross_rule(cycle(4), family("I"))
    _cross_rule(family("cube", 2), family("I"))
    _join_rule(discrete(2), family("I"))
    _join_rule(family("T"), discrete(2))


@criterion(9, "top eigenvalue bound")
def test_lambda1_bound():
    corpus = bound_corpus(100)
    assert len(set(corpus)) == 100
    for g in corpus:
        top = hodge_spectrum(g, 1).max
        top = 0.0 if top is None else float(top)
        assert lambda1_bound(g).bound >= top - 1e-9
    for n in range(1, 5):
        g = family("cube", n)
        assert abs(lambda1_bound(g).bound - hodge_spectrum(g, 1).max) <= 1e-6


@criterion(10, "isospectral orientations")
def test_isospectrality():
    pentagon_mixed = Digraph(5, [(0, 1), (2, 1), (2, 3), (4, 3), (4, 0)])
    hexagon_alternating = Digraph(6, [(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5)])
    assert is_hodge_isospectral(cycle(5), pentagon_mixed, 3)
    assert is_hodge_isospectral(cycle(6), hexagon_alternating, 3)
    assert not is_hodge_isospectral(family("I"), family("T"), 3)
