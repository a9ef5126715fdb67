"""Exact invariants of Delsarte surfaces from finite quotients of GG = Z^3."""

from .cyclic import CyclicData, closed_form_factors, cyclic_weights, verify_cyclic
from .fundamental_group import Pi1Result, pi1
from .kernels import BACKEND
from .linalg import (
    AbelianGroupStructure,
    IntMatrix,
    SmithForm,
    abelian_subquotient,
    hermite_normal_form,
    lattice_intersection,
    smith_normal_form,
    solve_in_lattice,
)
from .modules import (
    best_torsion_bound,
    filtration_subquotient,
    module_rank_torsion,
    present_Am,
    present_Bprime,
    torsion_bound,
)
from .quotient import FiniteQuotient, QuotientError, classify, parse_kernel_matrix, subgroup_orders
from .report import InvariantReport, analyze

__all__ = [
    "BACKEND",
    "AbelianGroupStructure",
    "CyclicData",
    "FiniteQuotient",
    "IntMatrix",
    "InvariantReport",
    "Pi1Result",
    "QuotientError",
    "SmithForm",
    "abelian_subquotient",
    "analyze",
    "best_torsion_bound",
    "classify",
    "closed_form_factors",
    "cyclic_weights",
    "filtration_subquotient",
    "hermite_normal_form",
    "lattice_intersection",
    "module_rank_torsion",
    "parse_kernel_matrix",
    "pi1",
    "present_Am",
    "present_Bprime",
    "smith_normal_form",
    "solve_in_lattice",
    "subgroup_orders",
    "torsion_bound",
    "verify_cyclic",
]
