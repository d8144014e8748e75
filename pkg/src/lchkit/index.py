"""Fredholm index formulas for holomorphic maps to the plane and to the
symplectization, plus the dimension count for decorated domain surfaces.

Rotation angles enter in exact pi/4 units; indices are exact integers.
A fractional Maslov number signals corrupt diagram data and raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ArityMismatchError, FractionalMaslovError, OddPunctureOrderError


@dataclass(frozen=True)
class CurveTopology:
    euler_char: int
    boundary_components: int
    # punctures: (sign "+"|"-", boundary component index)
    punctures: tuple = ()

    def __post_init__(self):
        two_g = 2 - self.euler_char - self.boundary_components
        if self.boundary_components < 1 or two_g < 0 or two_g % 2:
            raise ValueError(
                f"no surface with chi={self.euler_char}, "
                f"{self.boundary_components} boundary components"
            )
        for sign, b in self.punctures:
            if sign not in ("+", "-"):
                raise ValueError(f"bad puncture sign {sign!r}")
            if not 0 <= b < self.boundary_components:
                raise ValueError(f"puncture on missing boundary component {b}")

    @property
    def genus(self):
        return (2 - self.euler_char - self.boundary_components) // 2

    @property
    def n_punctures(self):
        return len(self.punctures)

    @property
    def n_positive(self):
        return sum(1 for s, _b in self.punctures if s == "+")


@dataclass(frozen=True)
class BranchData:
    boundary_puncture_orders: tuple = ()  # even integers >= 0
    boundary_crit_orders: tuple = ()  # integers >= 1
    interior_crit_orders: tuple = ()  # integers >= 1


@dataclass(frozen=True)
class LrsBoundaryData:
    cap_touch_count: int
    positive_puncture_count: int


def maslov_of_boundary(rotations, puncture_count):
    """Maslov number of one boundary component from the rotation angles of
    its smooth pieces (pi/4 units) and its puncture count.

    The -1/2 correction per puncture is applied here and nowhere else.
    Returns an exact Fraction; integrality is the caller's concern.
    """
    total = sum(rotations)
    return Fraction(total, 4) - Fraction(puncture_count, 2)


def index_from_maslov(topology: CurveTopology, maslovs, target: str) -> int:
    """Index from per-boundary Maslov numbers.

    target "plane":           ind(u) = sum Maslov - 2 chi + #punctures
    target "symplectization": ind(U) = sum Maslov -   chi + #punctures
    and always ind(U) = ind(u) + chi.
    """
    maslovs = [Fraction(m) for m in maslovs]
    if len(maslovs) != topology.boundary_components:
        raise ArityMismatchError(
            f"{len(maslovs)} Maslov numbers for {topology.boundary_components} "
            f"boundary components"
        )
    if target == "plane":
        chi_factor = 2
    elif target == "symplectization":
        chi_factor = 1
    else:
        raise ValueError(f"unknown target {target!r}")
    total = sum(maslovs) - chi_factor * topology.euler_char + topology.n_punctures
    if total.denominator != 1:
        raise FractionalMaslovError(f"index {total} is not an integer")
    return int(total)


def index_branch(topology: CurveTopology, branch: BranchData) -> int:
    """Plane index from branching data:
    ind(u) = 1/2 sum ord(p_i) + sum ord(boundary crit) + 2 sum ord(interior crit).
    Rigid maps are immersions with all corners convex (all orders zero)."""
    for o in branch.boundary_puncture_orders:
        if o < 0 or o % 2:
            raise OddPunctureOrderError(f"boundary puncture order {o} must be even >= 0")
    for o in branch.boundary_crit_orders + branch.interior_crit_orders:
        if o < 1:
            raise ValueError(f"critical point order {o} must be >= 1")
    return (
        sum(branch.boundary_puncture_orders) // 2
        + sum(branch.boundary_crit_orders)
        + 2 * sum(branch.interior_crit_orders)
    )


def index_crit(topology: CurveTopology, lrs: LrsBoundaryData):
    """Index pair (ind_u, ind_U) for left-right-simple diagrams:
    ind(u) = -2 chi + #cap touches + #positive punctures, ind(U) = ind(u) + chi."""
    if lrs.cap_touch_count < 0 or lrs.positive_puncture_count < 0:
        raise ValueError("cap touches and positive punctures must be >= 0")
    base = lrs.cap_touch_count + lrs.positive_puncture_count
    ind_u = -2 * topology.euler_char + base
    return ind_u, ind_u + topology.euler_char


def moduli_dim(topology: CurveTopology):
    """Stability and dimension of the moduli of decorated domain surfaces.

    Stable iff 2 chi - #punctures < 0, with dimension #punctures - 3 chi.
    The unstable disks with one or two punctures have automorphism groups
    of dimensions 2 and 1.
    """
    chi = topology.euler_char
    p = topology.n_punctures
    if 2 * chi - p < 0:
        return {"stable": True, "dim": p - 3 * chi}
    if chi == 1 and p == 1:
        return {"stable": False, "automorphism_dim": 2}
    if chi == 1 and p == 2:
        return {"stable": False, "automorphism_dim": 1}
    raise ValueError(f"unhandled unstable domain: chi={chi}, punctures={p}")
