"""Digraphs shared by the test modules."""

import numpy as np

from pathlap.digraph import Digraph, family, join, discrete, motifs
from pathlap.formulas import power_examples

BOUND_SEED = 0xC0FFEE


def random_digraph(seed, n=6, prob=0.35):
    """Each ordered pair becomes an arrow independently; double arrows allowed."""
    rng = np.random.default_rng(seed)
    arrows = [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < prob]
    return Digraph(n, arrows)


def random_oriented(rng, n=10, prob=0.25):
    """One arrow per unordered pair with probability ``prob``, random direction."""
    arrows = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < prob:
                arrows.append((i, j) if rng.random() < 0.5 else (j, i))
    return Digraph(n, arrows)


def bound_corpus(count=100):
    """Seeded random digraphs without multisquares or double arrows."""
    rng = np.random.default_rng(BOUND_SEED)
    out = []
    while len(out) < count:
        g = random_oriented(rng)
        mr = motifs(g)
        if not mr.multisquare_found and not mr.double_arrows:
            out.append(g)
    return out


def multisquare():
    """Three middle vertices between 0 and 4."""
    return Digraph(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def spectral_corpus():
    """Digraphs for the spectral splitting checks, with the top degree to test."""
    items = [(f"example {k}", g, 2) for k, g in power_examples().items()]
    items += [(f"cube {n}", family("cube", n), n) for n in (1, 2, 3)]
    items += [(f"torus {n}", family("torus", n), n) for n in (1, 2)]
    items += [(f"sphere {n}", family("S", n), n) for n in (0, 1, 2)]
    items += [(f"simplex {n}", family("K", n), n - 1) for n in (3, 4, 5)]
    items += [(f"random {s}", random_digraph(s), 3) for s in range(20)]
    return items


def exact_corpus():
    """Small digraphs for exact identities, including double arrows and a multisquare."""
    return [
        family("I"),
        family("T"),
        family("C", 4),
        family("cube", 2),
        family("K", 3),
        join(discrete(2), discrete(2)),
        Digraph(2, [(0, 1), (1, 0)]),
        Digraph(3, [(0, 1), (1, 0), (1, 2)]),
        multisquare(),
        random_digraph(101, n=5),
        random_digraph(202, n=5),
    ]
