"""Verified Hamiltonian-cycle certificates for Cayley graphs of small
finite groups: group tables and a small-group catalog, lifting lemmas,
order-form constructions, an exhaustive search oracle, and two
independent certificate verifiers.
"""

from .errors import (
    BudgetExceeded,
    HamcayError,
    HypothesisFailure,
    InternalInconsistency,
    InvalidAction,
    NotHamiltonian,
    ParseError,
    Unsupported,
)
from .groups import (
    GroupTable,
    cyclic,
    dihedral,
    direct_product,
    from_permutations,
    generalized_quaternion,
    load_table,
    save_table,
    semidirect,
)
from .cayley import (
    CayleyGraph,
    Certificate,
    CosetMultigraph,
    ThreePSquaredMultigraph,
    recognize_generalized_petersen,
    row_sweep_cycle,
    three_p_sq_multigraph,
)
from .catalog import builtin_catalog, enumerate_generating_sets
from .constructions import minimality_reduce, solve
from .oracle import (
    find_hamiltonian_cycle,
    find_hamiltonian_cycle_adj,
    parse_edge_list,
    verify_independent,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CayleyGraph",
    "Certificate",
    "CosetMultigraph",
    "GroupTable",
    "HamcayError",
    "HypothesisFailure",
    "InternalInconsistency",
    "InvalidAction",
    "NotHamiltonian",
    "ParseError",
    "ThreePSquaredMultigraph",
    "Unsupported",
    "builtin_catalog",
    "cyclic",
    "dihedral",
    "direct_product",
    "enumerate_generating_sets",
    "find_hamiltonian_cycle",
    "find_hamiltonian_cycle_adj",
    "from_permutations",
    "generalized_quaternion",
    "load_table",
    "minimality_reduce",
    "parse_edge_list",
    "recognize_generalized_petersen",
    "row_sweep_cycle",
    "save_table",
    "semidirect",
    "solve",
    "three_p_sq_multigraph",
    "verify_independent",
]
