"""Vertex-Ramsey problems on the hypercube: layer-set families of clique
unions, a certificate-producing translate-Ramsey decision engine, closed-form
classifiers and a brute-force cube oracle."""

from .model import (
    CliqueSpec,
    CliqueUnion,
    Decision,
    FiniteColoring,
    LayerSet,
    ParseError,
    PeriodicColoring,
    ResourceError,
    SetFamily,
    normalize,
    reduce_family,
)
from .embedding import min_layers, p_prime, p_star, w_prime, w_star
from .engine import decide, enumerate_witnesses, gcd_reduce, n_T_upper_bound, verify_coloring

__version__ = "0.1.0"
