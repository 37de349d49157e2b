"""Inertia, theta and expander certificates for small graphs."""
from .graph import (
    Graph,
    add_universal,
    complement,
    graph6_decode,
    graph6_encode,
    is_connected,
    is_triangle_free,
    spectral_params,
)
from .spectra import (
    IntegerSymmetricMatrix,
    SymmetricMatrix,
    charpoly_exact,
    eigen_sym,
    inertia_exact,
    inertia_float,
)

__version__ = "0.1.0"
