"""Move graphs Gamma_{M,n}: the functional graph x -> M x on Z_n^m."""

from .algebra import (
    Gf2Element, ModMatrix, ModVector, euler_phi, gf2_mul, gf2_order, gf2_pow, is_prime,
    mat_apply, mat_pow, mult_order, sqrt_minus_one, zn_order,
)
from .errors import CapacityError, ContractError, DomainError, InvariantError, MoveGraphError
from .graph import (
    Decomposition, IsoWitness, MoveGraph, build, decompose, has_cycle_of_length,
    similarity_iso_witness, tensor_iso_witness, verify_cycle_divisibility, verify_embedding,
    verify_scaling_property, weak_components,
)
from .predictor import PrimePrediction, mod8_criterion, oeis_terms, predict, survey, verify_prediction
from .subadd import (
    LevelPartition, TreeReport, level_partition, subadd_matrix, tree_report, verify_level_arcs,
    verify_mixed, verify_odd_n,
)

__version__ = "0.1.0"
