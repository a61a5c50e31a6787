"""Exact p-adic amoebas of reduced A-discriminants."""

from .amoeba2d import (
    AmoebaGraph,
    DigitTree,
    PLCurve,
    ZeroSet,
    assemble_amoeba,
    branch_pieces,
    build_digit_tree,
    is_generic,
    maximal_pieces,
    pl_curve,
    tree_pieces,
    zeros,
)
from .arrangement import (
    ComplementCount,
    check_bound,
    count_complement,
    grid_oracle_components,
    upper_bound,
)
from .errors import *  # noqa: F401,F403
from .extremal import extremal_family, extremal_map, search_prime
from .linalg import (
    AffineFormSystem,
    Matrix,
    affine_change,
    build_ahat,
    integer_kernel,
    parse_matrix,
)
from .padic import INF, DigitStream, digit, digits, is_prime, val_p
from .render import emit_svg
from .tropical import (
    DiscriminantMap,
    TropicalParametricMap,
    enumerate_index_sets,
    eval_F_exact,
    eval_tropical,
    tropicalize,
    witness_index_set,
)

__version__ = "0.1.0"
