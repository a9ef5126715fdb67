"""pi_1 of the Delsarte surface X(alpha).

pi_1 = Ker alpha / N, where N is generated by the intersections of Ker alpha
with the six rank-two sublattices spanned by pairs of the vectors t_0..t_3.
The quotient is computed inside Ker alpha itself (rank 3), so no spurious
free part can appear.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import AbelianGroupStructure, cokernel, lattice_intersection, solve_in_lattice
from .quotient import PAIRS, T, FiniteQuotient


class Pi1AssertionError(AssertionError):
    """The computed group violates a structural property it must have."""


@dataclass(frozen=True)
class Pi1Result:
    structure: AbelianGroupStructure

    @property
    def order(self) -> int:
        return self.structure.order

    def to_dict(self) -> dict:
        return {"order": self.order, "structure": self.structure.to_dict()}


def pair_intersections(q: FiniteQuotient) -> list[list[int]]:
    """Generators of N, in the coordinates t_1, t_2, t_3."""
    kernel = q.kernel_matrix
    gens = []
    for i, j in PAIRS:
        gens.extend(lattice_intersection([list(T[i]), list(T[j])], kernel))
    return gens


def pi1(q: FiniteQuotient) -> Pi1Result:
    kernel = q.kernel_matrix
    coords = []
    for v in pair_intersections(q):
        x = solve_in_lattice(kernel, v)
        if x is None:
            raise Pi1AssertionError(f"intersection generator {v} is not in the kernel {kernel}")
        coords.append(x)
    structure = cokernel(coords, 3)
    if structure.free_rank or len(structure.torsion_factors) > 1:
        raise Pi1AssertionError(
            f"pi_1 = {structure} is not finite cyclic; kernel={kernel}, generators={coords}"
        )
    if q.height % structure.order:
        raise Pi1AssertionError(f"|pi_1| = {structure.order} does not divide height {q.height}")
    return Pi1Result(structure)
