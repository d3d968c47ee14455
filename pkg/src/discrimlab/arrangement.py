"""Central generic arrangements and their parallel translates.

Hyperplane indices are 1-based throughout the public API, so ``H_1`` is
``normals[0]``.  A translate ``t`` moves ``H_i`` to ``{x : a_i . x = t_i}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DimensionError, NotGeneric, PreconditionError, ZeroNormal
from .exact_linalg import (
    Subspace,
    Vector,
    as_vector,
    format_rational,
    int_rank,
    int_rank_many,
    integer_row,
    solve_consistent,
    transpose,
)


@dataclass(frozen=True)
class CentralArrangement:
    """``n`` hyperplanes ``a_i . x = 0`` in ``Q^k``, any ``k`` normals independent.

    Build instances with :func:`new_arrangement`, which validates genericity.
    """

    k: int
    normals: tuple[Vector, ...]
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.k, self.normals)))

    def __hash__(self):
        return self._hash

    @property
    def n(self) -> int:
        return len(self.normals)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "normals": [[format_rational(x) for x in a] for a in self.normals],
        }


@dataclass(frozen=True)
class Translate:
    t: Vector

    def __len__(self):
        return len(self.t)

    def to_json(self) -> dict:
        return {"t": [format_rational(x) for x in self.t]}


def _check_indices(n: int, idxs: Iterable[int]) -> tuple[int, ...]:
    idxs = tuple(sorted(set(idxs)))
    for i in idxs:
        if not 1 <= i <= n:
            raise PreconditionError(f"index {i} outside 1..{n}")
    return idxs


def find_nongeneric_subset(k: int, normals: Sequence[Vector]) -> tuple[int, ...] | None:
    """First k-subset (1-based, lexicographic) of rank < k, or None."""
    n = len(normals)
    int_rows = [integer_row(a) for a in normals]
    subsets = list(combinations(range(n), k))
    ranks = int_rank_many([[int_rows[i] for i in s] for s in subsets], k)
    for s, rk in zip(subsets, ranks):
        if rk < k:
            return tuple(i + 1 for i in s)
    return None


def new_arrangement(k: int, normals) -> CentralArrangement:
    """Validated central generic arrangement.

    Raises ZeroNormal for a vanishing normal and NotGeneric with the first
    dependent k-subset otherwise.
    """
    normals = tuple(as_vector(a) for a in normals)
    n = len(normals)
    if not isinstance(k, int) or k < 1:
        raise PreconditionError("k must be a positive integer")
    if n <= k:
        raise PreconditionError(f"need more hyperplanes than dimensions (n={n}, k={k})")
    for i, a in enumerate(normals, start=1):
        if len(a) != k:
            raise DimensionError(f"normal {i} has length {len(a)}, expected {k}")
        if not any(a):
            raise ZeroNormal(i)
    bad = find_nongeneric_subset(k, normals)
    if bad is not None:
        raise NotGeneric(bad)
    return CentralArrangement(k, normals)


def new_translate(a: CentralArrangement, t) -> Translate:
    t = as_vector(t)
    if len(t) != a.n:
        raise DimensionError(f"translate has length {len(t)}, arrangement has n={a.n}")
    return Translate(t)


def is_generic_subset(a: CentralArrangement, idxs) -> bool:
    idxs = _check_indices(a.n, idxs)
    if len(idxs) > a.k:
        raise PreconditionError(f"|idxs| = {len(idxs)} exceeds k = {a.k}")
    rows = [integer_row(a.normals[i - 1]) for i in idxs]
    return int_rank(rows, a.k) == len(idxs)


def central_subspace(a: CentralArrangement) -> Subspace:
    """Translates ``t_i = a_i . v`` that keep a common point: the column space of the normals."""
    return Subspace.span(transpose(a.normals), a.n)


def is_central(a: CentralArrangement, t) -> bool:
    t = t.t if isinstance(t, Translate) else as_vector(t)
    return t in central_subspace(a)


def common_point(a: CentralArrangement, t, idxs) -> tuple[bool, Vector | None]:
    """Solve ``a_p . x = t_p`` for ``p`` in ``idxs``."""
    t = t.t if isinstance(t, Translate) else as_vector(t)
    if len(t) != a.n:
        raise DimensionError("translate length differs from n")
    idxs = _check_indices(a.n, idxs)
    if not idxs:
        raise PreconditionError("idxs must be nonempty")
    rows = [a.normals[i - 1] for i in idxs]
    return solve_consistent(rows, [t[i - 1] for i in idxs])


def translate_through_points(a: CentralArrangement, incidences) -> Translate:
    """Translate putting hyperplane ``i`` through the given point for each ``(i, point)``.

    Indices not mentioned stay central (``t_i = 0``).
    """
    t = [Fraction(0)] * a.n
    for i, point in incidences:
        point = as_vector(point)
        t[i - 1] = sum((x * y for x, y in zip(a.normals[i - 1], point)), Fraction(0))
    return Translate(tuple(t))
