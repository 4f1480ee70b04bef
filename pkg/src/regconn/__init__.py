"""Spectral certificates for edge and vertex connectivity of regular multigraphs."""

from .bounds import BoundRule, Certificate, certify, evaluate_bound, rho, rho_prime
from .canon import canonical_form, canonical_key
from .connectivity import cheeger_constant, edge_connectivity, vertex_connectivity
from .errors import (
    InapplicableError,
    InvalidGraphError,
    ParseError,
    PropertyViolation,
    RegconnError,
)
from .graph import (
    Multigraph,
    Partition,
    extremal_5vertex,
    extremal_6vertex,
    parse_mg,
    random_regular_multigraph,
    read_mg,
    serialize_mg,
    write_mg,
)
from .spectral import adjacency_spectrum, lambda2, laplacian_spectrum, mu2, quotient_matrix

__version__ = "0.1.0"
