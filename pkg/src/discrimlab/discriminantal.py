"""The discriminantal arrangement B(n, k, A) of a central generic arrangement.

For every (k+1)-subset ``L`` of ``[n]`` the hyperplane ``D_L`` of the space of
translates collects the ``t`` for which the translated hyperplanes indexed by
``L`` share a point.  It is cut out by one linear form whose coefficients are
the signed k x k minors of the normals of ``L`` (Laplace expansion of the
bordered determinant ``det[a_p | t_p]``, ``p`` in ``L``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .arrangement import CentralArrangement, Translate, central_subspace
from .errors import PreconditionError
from .exact_linalg import (
    Subspace,
    Vector,
    as_vector,
    det,
    int_rank,
    int_rank_many,
    kernel_basis,
    primitive_integer_row,
    rref,
)

Subset = tuple[int, ...]


@dataclass(frozen=True)
class DiscNormal:
    L: Subset
    coeffs: Vector

    def __call__(self, t) -> Fraction:
        t = t.t if isinstance(t, Translate) else t
        return sum((c * x for c, x in zip(self.coeffs, t)), Fraction(0))


@dataclass(frozen=True)
class Flat:
    """Intersection of the ``D_S`` for ``S`` in ``family``.

    ``rank`` is the codimension inside the space of translates, i.e. the
    rank of the stacked defining normals.
    """

    family: tuple[Subset, ...]
    subspace: Subspace
    rank: int


def as_subset(L: Iterable[int], n: int) -> Subset:
    L = tuple(sorted(set(int(i) for i in L)))
    if any(not 1 <= i <= n for i in L):
        raise PreconditionError(f"subset {list(L)} is not inside 1..{n}")
    return L


class Discriminantal:
    """Cached view of B(n, k, A) for one arrangement.

    Obtain it through :func:`discriminantal`, which memoises per arrangement.
    """

    def __init__(self, a: CentralArrangement):
        self.a = a
        self.n = a.n
        self.k = a.k
        self.subsets: tuple[Subset, ...] = tuple(
            tuple(c) for c in combinations(range(1, self.n + 1), self.k + 1)
        )
        self._normals: dict[Subset, DiscNormal] = {}
        self._int_rows: dict[Subset, tuple[int, ...]] = {}
        self._ranks: dict[frozenset, int] = {}
        self._ds_ranks: dict[Subset, int] = {}

    # -- hyperplanes -------------------------------------------------------

    def normal(self, L: Subset) -> DiscNormal:
        hit = self._normals.get(L)
        if hit is not None:
            return hit
        if len(L) != self.k + 1:
            raise PreconditionError(f"|L| must be k+1 = {self.k + 1}, got {len(L)}")
        L = as_subset(L, self.n)
        if len(L) != self.k + 1:
            raise PreconditionError("L has repeated indices")
        coeffs = [Fraction(0)] * self.n
        normals = self.a.normals
        for p, i in enumerate(L):
            minor = [normals[q - 1] for q in L if q != i]
            coeffs[i - 1] = det(minor) if p % 2 == 0 else -det(minor)
        lead = next(c for c in coeffs if c)
        if lead < 0:
            coeffs = [-c for c in coeffs]
        dn = DiscNormal(L, tuple(coeffs))
        self._normals[L] = dn
        return dn

    def int_row(self, L: Subset) -> tuple[int, ...]:
        row = self._int_rows.get(L)
        if row is None:
            row = tuple(primitive_integer_row(self.normal(L).coeffs))
            self._int_rows[L] = row
        return row

    # -- ranks ---------------------------------------------------------------

    def _rows(self, Ls) -> list[tuple[int, ...]]:
        return [self.int_row(L) for L in Ls]

    def rank(self, Ls: Iterable[Subset]) -> int:
        """Rank of the stacked normals of the hyperplanes ``D_L``, ``L`` in ``Ls``."""
        key = frozenset(Ls)
        hit = self._ranks.get(key)
        if hit is None:
            hit = int_rank(self._rows(sorted(key)), self.n)
            self._ranks[key] = hit
        return hit

    def prefetch(self, families: Iterable[Iterable[Subset]]) -> None:
        """Compute the ranks of many families in one batched kernel call."""
        todo = []
        seen = set()
        for fam in families:
            key = frozenset(fam)
            if key not in self._ranks and key not in seen:
                seen.add(key)
                todo.append(key)
        if not todo:
            return
        ranks = int_rank_many(
            [self._rows(sorted(key)) for key in todo], self.n, bound=self.n - self.k
        )
        self._ranks.update(zip(todo, ranks))

    def ds_members(self, S: Subset) -> tuple[Subset, ...]:
        return tuple(tuple(c) for c in combinations(S, self.k + 1))

    def ds_rank(self, S: Subset) -> int:
        """Rank of ``D_S``: stack every ``D_L`` with ``L`` inside ``S``."""
        hit = self._ds_ranks.get(S)
        if hit is None:
            hit = self.rank(self.ds_members(S))
            self._ds_ranks[S] = hit
        return hit

    def family_members(self, family: Iterable[Iterable[int]]) -> tuple[Subset, ...]:
        out = []
        for S in family:
            S = as_subset(S, self.n)
            if len(S) < self.k + 1:
                raise PreconditionError(f"|S| must be at least k+1 = {self.k + 1}")
            out.extend(self.ds_members(S))
        return tuple(sorted(set(out)))


@lru_cache(maxsize=128)
def discriminantal(a: CentralArrangement) -> Discriminantal:
    return Discriminantal(a)


def disc_normal(a: CentralArrangement, L) -> DiscNormal:
    L = tuple(L)
    if len(L) != a.k + 1 or len(set(L)) != len(L):
        raise PreconditionError(f"L must have k+1 = {a.k + 1} distinct indices")
    return discriminantal(a).normal(as_subset(L, a.n))


def all_disc_normals(a: CentralArrangement) -> list[DiscNormal]:
    d = discriminantal(a)
    return [d.normal(L) for L in d.subsets]


def in_DL(a: CentralArrangement, t, L) -> bool:
    t = t.t if isinstance(t, Translate) else as_vector(t)
    return disc_normal(a, L)(t) == 0


def flat_of(a: CentralArrangement, family) -> Flat:
    d = discriminantal(a)
    family = tuple(as_subset(S, a.n) for S in family)
    members = d.family_members(family)
    rows = [d.normal(L).coeffs for L in members]
    return Flat(family, kernel_basis(rows, a.n), d.rank(members))


def _check_tset(a: CentralArrangement, T, min_size: int = 2) -> tuple[Subset, ...]:
    T = tuple(as_subset(L, a.n) for L in T)
    if len(T) < min_size:
        raise PreconditionError(f"need at least {min_size} members")
    if any(len(L) != a.k + 1 for L in T):
        raise PreconditionError(f"every member must have k+1 = {a.k + 1} elements")
    if len(set(T)) != len(T):
        raise PreconditionError("members must be distinct")
    return T


def _sub_families(T: Sequence[Subset]):
    r = len(T)
    for size in range(2, r + 1):
        for I in combinations(range(r), size):
            yield I


def is_simple(a: CentralArrangement, T) -> bool:
    """Whether ``X = D_{L_1} ∩ ... ∩ D_{L_r}`` is a simple intersection.

    For every sub-family ``I`` with at least two members and every ``S``
    between ``∪_I L_i`` and ``∪_T L_i`` with ``|S| > k+1``, the partial
    intersection must differ from ``D_S``.  Since every ``L_i`` (i in I) lies
    in ``S``, ``D_S`` is contained in the partial intersection, so the two
    coincide exactly when their ranks agree.
    """
    T = _check_tset(a, T)
    d = discriminantal(a)
    d.prefetch([T[i] for i in I] for I in _sub_families(T))
    full = set().union(*T)
    for I in _sub_families(T):
        sub = [T[i] for i in I]
        rank_I = d.rank(sub)
        base = set().union(*sub)
        extra = sorted(full - base)
        for m in range(len(extra) + 1):
            for add in combinations(extra, m):
                S = tuple(sorted(base.union(add)))
                if len(S) > a.k + 1 and d.ds_rank(S) == rank_I:
                    return False
    return True


# ------------------------------------------------------------------ census


@dataclass(frozen=True)
class CensusEntry:
    normal_span: Subspace
    members: tuple[Subset, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.members)

    @property
    def flat(self) -> Subspace:
        return kernel_basis(self.normal_span.basis, self.normal_span.ambient_dim)


def _reduce_against(v: Sequence[Fraction], basis, pivots) -> bool:
    """True when ``v`` lies in the span of an RREF ``basis``."""
    w = list(v)
    for row, pc in zip(basis, pivots):
        f = w[pc]
        if f:
            w = [x - f * y for x, y in zip(w, row)]
    return not any(w)


def rank2_census(a: CentralArrangement) -> list[CensusEntry]:
    """Every rank-2 flat spanned by two ``D_L`` and the ``D_L`` that contain it.

    Entries are sorted by the canonical RREF of the normal span.
    """
    d = discriminantal(a)
    rows = {L: tuple(Fraction(x) for x in d.int_row(L)) for L in d.subsets}
    seen: dict[tuple, CensusEntry] = {}
    for L1, L2 in combinations(d.subsets, 2):
        basis, pivots = rref([rows[L1], rows[L2]], a.n)
        if basis in seen:
            continue
        members = tuple(L for L in d.subsets if _reduce_against(rows[L], basis, pivots))
        seen[basis] = CensusEntry(Subspace(a.n, basis), members)
    return [seen[key] for key in sorted(seen)]


def census_summary(entries: Iterable[CensusEntry]) -> list[dict]:
    counts: dict[int, int] = {}
    for e in entries:
        counts[e.multiplicity] = counts.get(e.multiplicity, 0) + 1
    return [{"multiplicity": m, "count": c} for m, c in sorted(counts.items())]


def central_is_in_flat(a: CentralArrangement, flat: Flat) -> bool:
    """Sanity helper: every central translate lies on every flat."""
    ker = flat.subspace
    return all(v in ker for v in central_subspace(a).basis)
