"""Difference matrices, GBRDs, single-channel CACs and their composition."""

from .cac import (
    Cac,
    cac_from_generators,
    is_prime,
    is_tight,
    momihara_cac,
    momihara_hypothesis,
    multiplicative_order,
    quadratic_nonresidue,
    quadratic_residue,
    search_cac,
    search_equi_diff_tight_cac,
    tight_length_condition,
    verify_cac,
)
from .catalog import NAMES as CATALOG_NAMES
from .catalog import catalog
from .compose import (
    Certificate,
    compose,
    compose_4x4t,
    compose_optimal,
    exceptional_codewords,
    family_4_2t,
    largest_cac,
)
from .designs import (
    DifferenceMatrix,
    Gbrd,
    difference_matrix_cyclic,
    difference_matrix_prime,
    gbrd_4x4t,
    gbrd_column_count,
    gbrd_from_difference_matrix,
    search_gbrd,
    support_counts_feasible,
    verify_difference_matrix,
    verify_gbrd,
)
