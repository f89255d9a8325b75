from fractions import Fraction
from math import comb

import pytest

from pathlap.chains import snapshot
from pathlap.digraph import Digraph, box_pow, cycle, discrete, family, join, join_pow
from pathlap.errors import HypothesisError, NonTerminatingError
from pathlap.formulas import (
    ClosedFormSpectrum,
    as_multiset,
    augmented_spectra,
    compare,
    cube_spectrum,
    generic_join_spectrum,
    is_hodge_isospectral,
    join_power_spectrum,
    lambda1_bound,
    multinomial,
    power_case,
    power_examples,
    power_homology,
    power_spectrum_canonical,
    power_spectrum_normalized,
    torus_spectrum,
    verify_family,
)
from pathlap.hodge import NORMALIZED, hodge_spectrum, l_spectra_from_delta
from pathlap.multiset import SpectrumMultiset, ms_scale, ms_union

from corpus import multisquare

F = Fraction


def spec(*pairs):
    return SpectrumMultiset(pairs)


def power_dim(v, e, n, r):
    """dim Omega_r of G^n when Omega_p(G) vanishes for p >= 2."""
    return comb(n, r) * v ** (n - r) * e**r


# ---------------------------------------------------------------- cube and torus

def test_cube_small_cases():
    assert cube_spectrum(3, 3).entries == ((F(2), 1),)
    assert cube_spectrum(1, 1).entries == ((F(2), 1),)
    assert cube_spectrum(2, 1).entries == ((F(2), 3), (F(4), 1))
    assert cube_spectrum(3, 2).entries == ((F(2), 4), (F(3), 2))
    assert cube_spectrum(4, 3).entries == ((F(2), 5), (F(8, 3), 3))
    assert cube_spectrum(2, 0).provenance == "cube n=2 p=0"


@pytest.mark.parametrize("n", range(1, 7))
def test_cube_extremes(n):
    for p in range(1, n + 1):
        s = cube_spectrum(n, p)
        assert s.entries[0] == (F(2), comb(n + 1, p + 1))
        assert s.entries[-1] == (F(2 * n, p), comb(n - 1, p - 1))
    assert cube_spectrum(n, 1).entries[-1] == (F(2 * n), 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_cube_totals_match_dimensions(n):
    for p in range(n + 1):
        assert cube_spectrum(n, p).total == power_dim(2, 1, n, p)


@pytest.mark.parametrize("n", range(1, 6))
def test_torus_totals_zeros_and_top(n):
    for p in range(n + 1):
        s = torus_spectrum(n, p)
        assert s.total == power_dim(3, 3, n, p)
        assert dict(s.entries).get(F(0), 0) == comb(n, p)
        if p:
            assert s.entries[-1] == (F(3 * n, p), 2**n * comb(n - 1, p - 1))


def test_torus_square_edges():
    assert torus_spectrum(2, 1).entries == ((F(0), 2), (F(3, 2), 4), (F(3), 8), (F(6), 4))


def test_out_of_range_degree():
    with pytest.raises(ValueError):
        cube_spectrum(2, 3)
    with pytest.raises(ValueError):
        torus_spectrum(1, -1)


# ---------------------------------------------------------------- joins

def test_join_power_examples():
    assert join_power_spectrum(3, 2, 2).entries == ((F(0), 4), (F(3), 4), (F(6), 1))
    for n in range(1, 6):
        for r in range(n + 1):
            assert join_power_spectrum(1, n, r).entries == ((F(n), comb(n, r)),)
    assert join_power_spectrum(2, 3, 5).entries == ()
    assert join_power_spectrum(4, 3, 0).entries == ((F(12), 1),)


@pytest.mark.parametrize("n", range(2, 6))
def test_sphere_edge_spectrum(n):
    c = comb(n, 2)
    assert join_power_spectrum(2, n, 2).entries == (
        (F(2 * (n - 2)), c), (F(2 * (n - 1)), 2 * c), (F(2 * n), c))


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_join_totals_match_dimensions(m, n):
    s = snapshot(join_pow(discrete(m), n), augmented=True)
    for r in range(n + 1):
        assert join_power_spectrum(m, n, r).total == s.dim(r - 1)


def test_generic_join_of_two_pairs():
    x = discrete(2)
    diamond = join(x, x)
    for r in range(-1, 3):
        assert generic_join_spectrum(x, x, r) == hodge_spectrum(diamond, r, augmented=True)


def test_augmented_low_degrees():
    for m in (1, 2, 3, 4):
        sp = augmented_spectra(discrete(m))
        assert sp[0] == spec((m, 1))
        assert sp[1] == spec((0, m - 1), (m, 1))
    g = join_pow(discrete(3), 2)
    assert hodge_spectrum(g, -1, augmented=True) == spec((6, 1))


def test_generic_join_matches_direct_on_mixed_pair():
    x, y = family("T"), family("I")
    z = join(x, y)
    for r in range(-1, 4):
        assert generic_join_spectrum(x, y, r) == hodge_spectrum(z, r, augmented=True)


# ---------------------------------------------------------------- normalized powers

def test_power_cases():
    ex = power_examples()
    assert [power_case(ex[k]) for k in ("i", "ii", "iii", "iv", "v", "vi")] == ["b", "a", "a", "a", "b", "b"]
    assert power_case(family("K", 3)) is None
    assert power_case(discrete(2)) is None
    assert power_case(family("cube", 2)) is None


@pytest.mark.parametrize("key, delta0", [
    ("iv", [0, 1, 3, 4]), ("v", [0, 1, 3]), ("vi", [0, 1, 1, 4]),
])
def test_base_vertex_spectra(key, delta0):
    assert hodge_spectrum(power_examples()[key], 0) == SpectrumMultiset.from_values(delta0)


@pytest.mark.parametrize("n", range(1, 6))
def test_normalized_cube_formula(n):
    for r in range(n + 1):
        expected = ClosedFormSpectrum.build(((2 * k, comb(n, k) * comb(k, r)) for k in range(r, n + 1)), "")
        assert power_spectrum_normalized(family("I"), n, r).entries == expected.entries


@pytest.mark.parametrize("n", range(1, 5))
def test_normalized_torus_formula(n):
    for r in range(n + 1):
        expected = ClosedFormSpectrum.build(((3 * k, 2**k * comb(n, k) * comb(n, r)) for k in range(n + 1)), "")
        assert power_spectrum_normalized(family("T"), n, r).entries == expected.entries


@pytest.mark.parametrize("n", range(1, 5))
def test_normalized_path_formula(n):
    g = power_examples()["v"]
    for r in range(n + 1):
        terms = ((k1 + 3 * k2, multinomial(n, (k1, k2)) * comb(k1 + k2, r))
                 for k1 in range(n + 1) for k2 in range(n + 1 - k1) if k1 + k2 >= r)
        assert power_spectrum_normalized(g, n, r).entries == ClosedFormSpectrum.build(terms, "").entries


@pytest.mark.parametrize("key", ["i", "ii", "iii", "iv", "v", "vi"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_normalized_totals_and_extremes(key, n):
    g = power_examples()[key]
    v, e = g.vertex_count, len(g.arrows)
    top = hodge_spectrum(g, 0).max
    top_mult = hodge_spectrum(g, 0).entries[-1][1]
    for r in range(n + 1):
        s = power_spectrum_normalized(g, n, r)
        assert s.total == power_dim(v, e, n, r)
        assert s.entries[-1][0] == pytest.approx(n * top)
        assert s.entries[-1][1] == top_mult**n * comb(n, r)


@pytest.mark.parametrize("key", ["i", "v", "vi"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_case_b_minimum(key, n):
    g = power_examples()[key]
    lam1, m1 = hodge_spectrum(g, 0).positive().entries[0]
    for r in range(1, n + 1):
        lo = power_spectrum_normalized(g, n, r).entries[0]
        assert lo[0] == pytest.approx(r * lam1)
        assert lo[1] == m1**r * comb(n, r)


def test_multinomial():
    assert multinomial(4, (1, 2)) == 12
    assert multinomial(3, (2, 2)) == 0
    assert multinomial(5, ()) == 1


def test_fallback_convolution_for_triangle():
    g = family("K", 3)
    s = power_spectrum_normalized(g, 2, 2)
    assert isinstance(s, SpectrumMultiset)
    assert s == hodge_spectrum(box_pow(g, 2), 2, NORMALIZED)


def test_fallback_for_irrational_eigenvalues():
    g = cycle(5)
    assert power_case(g) == "a"
    s = power_spectrum_normalized(g, 2, 1)
    assert isinstance(s, SpectrumMultiset)
    assert s == hodge_spectrum(box_pow(g, 2), 1, NORMALIZED)


@pytest.mark.parametrize("key", ["i", "ii", "iii", "v"])
def test_normalized_splitting_consistency(key):
    g = power_examples()[key]
    n = 3
    deltas = [as_multiset(power_spectrum_normalized(g, n, q)) for q in range(n + 1)]
    ls = [SpectrumMultiset()] + [l_spectra_from_delta(deltas, q) for q in range(1, n + 2)]
    for p in range(n + 1):
        assert ms_union(ls[p], ls[p + 1]) == deltas[p].positive()


# ---------------------------------------------------------------- canonical pipeline

def test_power_homology():
    assert power_homology(family("T"), 3) == [1, 3, 3, 1]
    assert power_homology(family("I"), 4) == [1, 0, 0, 0, 0]


@pytest.mark.parametrize("n", range(1, 5))
def test_pipeline_reproduces_cube(n):
    for p in range(n + 1):
        assert power_spectrum_canonical(family("I"), n, p) == cube_spectrum(n, p).multiset


@pytest.mark.parametrize("n", range(1, 4))
def test_pipeline_reproduces_torus(n):
    for p in range(n + 1):
        assert power_spectrum_canonical(family("T"), n, p) == torus_spectrum(n, p).multiset


def test_pipeline_four_cycle_square():
    assert power_spectrum_canonical(cycle(4), 2, 1) == hodge_spectrum(box_pow(cycle(4), 2), 1)


def test_pipeline_beyond_top_degree_is_empty():
    assert power_spectrum_canonical(family("I"), 2, 3) == SpectrumMultiset()


def test_pipeline_scales_up_parts_by_degree():
    # up part of degree q for the normalized weight is q times the canonical one
    g = family("cube", 3)
    for q in range(1, 4):
        assert hodge_spectrum(g, q, NORMALIZED, which="l").positive() == ms_scale(
            hodge_spectrum(g, q, which="l").positive(), q)


# ---------------------------------------------------------------- bound

@pytest.mark.parametrize("n", range(1, 5))
def test_bound_on_cubes(n):
    rep = lambda1_bound(family("cube", n))
    assert rep.bound == 2 * n
    assert rep.corollary_applies and rep.corollary_bound == 2 * n


def test_bound_on_triangle():
    rep = lambda1_bound(family("K", 3))
    assert rep.bound == 4 and rep.motif_term == 3
    assert hodge_spectrum(family("K", 3), 1).max == pytest.approx(3)


def test_bound_reports_corollary_failure():
    rep = lambda1_bound(family("K", 5))
    assert rep.motif_term == 9 and rep.bound == 9
    assert not rep.corollary_applies and rep.corollary_bound is None
    assert hodge_spectrum(family("K", 5), 1).max <= rep.bound


def test_bound_hypotheses():
    with pytest.raises(HypothesisError):
        lambda1_bound(Digraph(2, [(0, 1), (1, 0)]))
    with pytest.raises(HypothesisError):
        lambda1_bound(multisquare())


# ---------------------------------------------------------------- isospectrality

def test_isospectral_basic():
    assert is_hodge_isospectral(family("T"), family("T"), 2)
    assert not is_hodge_isospectral(family("I"), family("T"), 2)
    with pytest.raises(NonTerminatingError):
        is_hodge_isospectral(family("cube", 3), family("cube", 3), 2)


def test_isospectral_orientations_of_hexagon():
    cyclic = cycle(6)
    alternating = Digraph(6, [(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5)])
    assert is_hodge_isospectral(cyclic, alternating, 3)
    assert is_hodge_isospectral(box_pow(cyclic, 2), box_pow(alternating, 2), 3)


# ---------------------------------------------------------------- report

def test_compare_counts_mismatches():
    assert compare(spec((1, 2), (3, 1)), spec((1, 2), (3, 1)))[1] == 0
    assert compare(spec((1, 2), (3, 1)), spec((1, 1), (3, 1)))[1] == 1
    assert compare(spec((1, 2)), spec((1, 2), (5, 1)))[1] == 1
    dev, miss = compare(spec((1, 2)), spec((1.0000001, 2)))
    assert miss == 0 and 0 < dev < 1e-6


@pytest.mark.parametrize("family_name", ["cube", "torus", "simplex", "sphere", "join"])
def test_verify_rows_all_ok(family_name):
    rows = verify_family(family_name, 3, m=3)
    assert rows and all(r.ok for r in rows)
