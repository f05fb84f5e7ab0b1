"""Simple Hurwitz numbers of curves covering a base curve of genus h.

Hurwitz numbers come from the heat equation solved in the Schur basis and
are cross-checked by brute-force monodromy enumeration.  On top of them
sit the free energies, their PDE, and the exact operator identities of
the partition function.
"""
from .hurwitz import (
    BaseCurve,
    HurwitzTable,
    NegativeRamificationError,
    Skipped,
    connected_from_disconnected,
    disconnected_generating_function,
    hurwitz_number,
    ramification_count,
    verify_cut_and_join,
)
from .partitions import (
    CharacterTable,
    Partition,
    character,
    character_table,
    class_size,
    dim_of,
    enumerate_partitions,
    z_of,
)
from .symfun import DegreeBoundError, SymFun, cut_and_join, schur, shifted_p2
from .oracle import BudgetExceeded, MonodromyProblem, count_class_sums, count_covers
from .freeenergy import (
    FreeEnergy,
    InsufficientTableError,
    build_free_energy,
    diagonal_S,
    elliptic_F1_series,
    elliptic_Fg_series,
    verify_pde,
    verify_S_recursion,
)
from .opalgebra import (
    ExpLaurent,
    XSeries,
    apply,
    build_P,
    build_Q,
    closed_form_Z,
    diagonal_partition_function,
    verify_commutator,
    verify_P1_identity,
    verify_PZ,
    verify_QZ,
)
from .semiclassical import lambert_inverse, verify_S0_S1
from .series import USeries

__version__ = "0.1.0"
