"""refmod: exact modular-form arithmetic for reflective-form searches.

Subpackages cover formal q-expansions, the geometry of Gamma_0(N) and its
metaplectic cover, quadratic characters and eta multipliers, discriminant
forms with their Weil representations, dimension formulas, and the search
driver that compares reflective singularity space against obstruction
space.  Everything is exact: rationals, roots of unity and cyclotomic
integers, never floats.
"""

__version__ = "0.1.0"

from .characters import CharacterSpec, char_at_cusp, char_eval, chi_eta, chi_theta
from .cyclotomic import Cyclo, RootOfUnity, sqrt_cyclotomic
from .discforms import GenusSymbol, enumerate_symbols, milgram_signature, parse_genus_symbol, realize_group
from .exactnum import (
    DirichletCharacter,
    bernoulli,
    dirichlet_characters,
    generalized_bernoulli_b1,
    kronecker,
)
from .etaq import EtaQuotient, classify_bounded
from .gamma0 import MetaplecticElement, cusp_representatives, gamma0_data, parabolic_generator
from .qseries import (
    GramMatrix,
    QSeries,
    delta_series,
    eisenstein_chi,
    eisenstein_level1,
    eisenstein_weight1,
    eta_series,
    lattice_theta,
)
from .reflective import existence_bound, reflective_orders, search
from .weil import WeilContext, discriminant_form_character

__all__ = [
    "CharacterSpec",
    "Cyclo",
    "DirichletCharacter",
    "EtaQuotient",
    "GenusSymbol",
    "GramMatrix",
    "MetaplecticElement",
    "QSeries",
    "RootOfUnity",
    "WeilContext",
    "bernoulli",
    "char_at_cusp",
    "char_eval",
    "chi_eta",
    "chi_theta",
    "classify_bounded",
    "cusp_representatives",
    "delta_series",
    "dirichlet_characters",
    "discriminant_form_character",
    "eisenstein_chi",
    "eisenstein_level1",
    "eisenstein_weight1",
    "enumerate_symbols",
    "eta_series",
    "existence_bound",
    "gamma0_data",
    "generalized_bernoulli_b1",
    "kronecker",
    "lattice_theta",
    "milgram_signature",
    "parabolic_generator",
    "parse_genus_symbol",
    "realize_group",
    "reflective_orders",
    "search",
    "sqrt_cyclotomic",
    "__version__",
]
