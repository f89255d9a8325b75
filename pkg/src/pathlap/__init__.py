"""Path homology and Hodge Laplacian spectra of directed graphs."""

from .chains import (
    Chain,
    ComplexSnapshot,
    OmegaBasis,
    allowed_paths,
    boundary,
    cross_product,
    euler_characteristic,
    homology_dims,
    join_product,
    omega_basis,
    snapshot,
)
from .digraph import (
    Digraph,
    box_pow,
    cartesian_product,
    family,
    join,
    join_pow,
    motifs,
    parse_digraph,
)
from .errors import (
    GuardrailError,
    HypothesisError,
    NonTerminatingError,
    ParseError,
    PathLapError,
    SpectralIdentityError,
)
from .formulas import (
    ClosedFormSpectrum,
    cube_spectrum,
    generic_join_spectrum,
    is_hodge_isospectral,
    join_power_spectrum,
    lambda1_bound,
    power_spectrum_canonical,
    power_spectrum_normalized,
    torus_spectrum,
)
from .hodge import CANONICAL, NORMALIZED, Weight, assemble_level, decompose_check, hodge_spectrum
from .multiset import SpectrumMultiset

__version__ = "0.1.0"

__all__ = [
    "Chain",
    "ComplexSnapshot",
    "OmegaBasis",
    "allowed_paths",
    "boundary",
    "cross_product",
    "euler_characteristic",
    "homology_dims",
    "join_product",
    "omega_basis",
    "snapshot",
    "Digraph",
    "box_pow",
    "cartesian_product",
    "family",
    "join",
    "join_pow",
    "motifs",
    "parse_digraph",
    "GuardrailError",
    "HypothesisError",
    "NonTerminatingError",
    "ParseError",
    "PathLapError",
    "SpectralIdentityError",
    "ClosedFormSpectrum",
    "cube_spectrum",
    "generic_join_spectrum",
    "is_hodge_isospectral",
    "join_power_spectrum",
    "lambda1_bound",
    "power_spectrum_canonical",
    "power_spectrum_normalized",
    "torus_spectrum",
    "CANONICAL",
    "NORMALIZED",
    "Weight",
    "assemble_level",
    "decompose_check",
    "hodge_spectrum",
    "SpectrumMultiset",
]
