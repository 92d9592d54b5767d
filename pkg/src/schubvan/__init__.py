"""Schubert calculus, randomized vanishing tests and lifted polynomial systems."""

from .errors import (
    BadPrime,
    DimensionMismatch,
    MalformedInput,
    NotForwardSolvable,
    NotHomogeneous,
    SchubvanError,
    TooLarge,
)
from .ff import MERSENNE_61, ff_det, ff_rank
from .lift import (
    LayeredDAG,
    LiftedFormulation,
    PolySystem,
    det_lifted,
    evaluate_lifted,
    leibniz_det,
    mv_graph,
    phi_size,
    power_chain,
    read_polysys,
    write_polysys,
)
from .perm import (
    Permutation,
    bruhat_leq,
    compose,
    inverse,
    lehmer_code,
    long_element,
    parse_permutation,
    rank_matrix,
    reduced_word,
)
from .poly import SparsePoly, divided_difference
from .purbhoo import (
    VanishVerdict,
    assemble_matrix,
    emit_hnp_system,
    inversion_support,
    random_unipotent,
    vanish_randomized,
)
from .schubert import (
    expand_product,
    extract_coefficient,
    fast_filters,
    pipe_dreams,
    schubert_coefficient,
    schubert_dd,
    vanish_exact,
)

__version__ = "0.1.0"
