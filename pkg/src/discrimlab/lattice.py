"""Very generic reference model for intersections of a discriminantal arrangement.

When the base arrangement is very generic, the flats of B(n, k, A) are
indexed by families ``{S_1, ..., S_m}`` satisfying the union-size condition
checked by :func:`athanasiadis_condition`, and such families intersect
transversally.  Comparing actual ranks with that prediction exposes
non-very generic arrangements.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .arrangement import CentralArrangement
from .discriminantal import Subset, discriminantal, is_simple
from .errors import PreconditionError


@dataclass(frozen=True)
class SetFamily:
    members: tuple[Subset, ...]
    n: int
    k: int

    def __post_init__(self):
        if len(set(self.members)) != len(self.members):
            raise PreconditionError("family members must be distinct")
        for S in self.members:
            if len(S) < self.k + 1:
                raise PreconditionError(f"|S_i| must be at least k+1 = {self.k + 1}")
            if any(not 1 <= i <= self.n for i in S):
                raise PreconditionError(f"{list(S)} is not inside 1..{self.n}")


def set_family(members: Iterable[Iterable[int]], n: int, k: int) -> SetFamily:
    return SetFamily(tuple(tuple(sorted(set(S))) for S in members), n, k)


def athanasiadis_condition(f: SetFamily) -> bool:
    """``|∪_I S_i| > k + Σ_I (|S_i| - k)`` for every sub-family of size ≥ 2."""
    m = len(f.members)
    for size in range(2, m + 1):
        for I in combinations(f.members, size):
            union = set().union(*I)
            if len(union) <= f.k + sum(len(S) - f.k for S in I):
                return False
    return True


def expected_rank(f: SetFamily, strict: bool = True) -> int:
    """Transversal rank ``Σ (|S_i| - k)`` predicted in the very generic case.

    The prediction is only meaningful for families passing
    :func:`athanasiadis_condition`; ``strict=False`` returns the sum anyway.
    """
    if strict and not athanasiadis_condition(f):
        raise PreconditionError("family violates the very generic union condition")
    return sum(len(S) - f.k for S in f.members)


@dataclass(frozen=True)
class Verdict:
    r_max: int
    witness: tuple[Subset, ...] | None = None
    rank: int | None = None

    @property
    def defect_found(self) -> bool:
        return self.witness is not None

    @property
    def verdict(self) -> bool:
        return self.witness is None

    @property
    def multiplicity(self) -> int | None:
        return None if self.witness is None else len(self.witness)

    def to_json(self) -> dict:
        return {
            "very_generic_upto": self.r_max,
            "defect_found": self.defect_found,
            "witness": None if self.witness is None else [list(L) for L in self.witness],
            "rank": self.rank,
            "multiplicity": self.multiplicity,
        }


def _doubly_covered(T) -> bool:
    seen, twice = set(), set()
    for L in T:
        twice.update(seen.intersection(L))
        seen.update(L)
    return seen == twice


def very_generic_upto(a: CentralArrangement, r_max: int) -> Verdict:
    """Look for a simple intersection of multiplicity ``r <= r_max`` and rank ``< r``.

    Families are scanned by increasing ``r`` and then lexicographically, so
    the returned witness is the first one in that order.  A family in which
    some index lies in a single member ``L`` cannot be the first witness:
    the normal of ``D_L`` is the only one supported there, so dropping ``L``
    leaves a smaller simple family with the same rank defect.  Such families
    are skipped.

    A clean verdict only means no simple defect exists up to ``r_max``.
    """
    if r_max < 2:
        raise PreconditionError("r_max must be at least 2")
    d = discriminantal(a)
    for r in range(2, r_max + 1):
        candidates = [T for T in combinations(d.subsets, r) if _doubly_covered(T)]
        d.prefetch(candidates)
        for T in candidates:
            if d.rank(T) < r and is_simple(a, T):
                return Verdict(r_max, T, d.rank(T))
    return Verdict(r_max)
