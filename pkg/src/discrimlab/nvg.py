"""Detecting and certifying non-very generic arrangements through r-sets.

An r-set is a family ``T = (L_1, ..., L_r)`` of (k+1)-subsets that pairwise
intersect and whose union is already covered by any ``r - 1`` of them.  A
translate realising every vertex ``P_i = ∩_{p in L_i} H_p`` gives a complete
graph (the K_T configuration) whose edge ``P_i P_j`` runs inside the
translated ``H_{i,j} = ∩_{p in L_i ∩ L_j} H_p``.

(r, s)-dependency says that, on translates realising the vertices outside a
subfamily ``S_l`` (all containing the index ``l``), moving ``H_l`` to realise
one member of ``S_l`` realises them all.  This module decides it with an
equivalent finite linear test, see :func:`certify_rs_dependency`.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .arrangement import (
    CentralArrangement,
    Translate,
    central_subspace,
    common_point,
)
from .discriminantal import Subset, _check_tset, discriminantal, is_simple
from .errors import MissingVertex, OnlyCentral, PreconditionError
from .exact_linalg import (
    Subspace,
    Vector,
    as_vector,
    in_span,
    kernel_basis,
    subspace_sum,
)

log = logging.getLogger(__name__)

TSet = tuple[Subset, ...]


def canonical_tset(T) -> TSet:
    return tuple(sorted(tuple(sorted(L)) for L in T))


# ------------------------------------------------------------------ r-sets


def is_r_set(T) -> bool:
    """Pairwise intersecting, and every index of the union lies in two members."""
    T = [frozenset(L) for L in T]
    if len(T) < 2:
        return False
    for A, B in combinations(T, 2):
        if not A & B:
            return False
    counts: dict[int, int] = {}
    for L in T:
        for i in L:
            counts[i] = counts.get(i, 0) + 1
    return all(c >= 2 for c in counts.values())


def enumerate_r_sets(n: int, k: int, r: int) -> Iterator[TSet]:
    """All r-sets over ``[n]`` with lexicographically sorted members, in lexicographic order.

    Depth-first over the sorted list of (k+1)-subsets; a branch is cut as soon
    as a new member misses an earlier one, or when the members still to come
    cannot cover the indices that so far appear only once.
    """
    if r < 2:
        raise PreconditionError("r must be at least 2")
    if not 1 <= k + 1 <= n:
        raise PreconditionError("need k+1 <= n")
    subsets = [tuple(c) for c in combinations(range(1, n + 1), k + 1)]
    masks = [sum(1 << i for i in L) for L in subsets]
    m = len(subsets)

    def rec(start: int, chosen: list[int], once: int, twice: int):
        depth = len(chosen)
        if depth == r:
            if once == 0:
                yield tuple(subsets[i] for i in chosen)
            return
        remaining = r - depth
        # each later member covers at most k+1 of the singly-covered indices
        if bin(once).count("1") > remaining * (k + 1):
            return
        for j in range(start, m - remaining + 1):
            mj = masks[j]
            if any(not (mj & masks[i]) for i in chosen):
                continue
            new_twice = twice | (once & mj)
            new_once = (once | mj) & ~new_twice
            chosen.append(j)
            yield from rec(j + 1, chosen, new_once, new_twice)
            chosen.pop()

    yield from rec(0, [], 0, 0)


# ------------------------------------------------------------------ K_T


@dataclass(frozen=True)
class KTConfiguration:
    """Vertices ``P_i`` and edge vectors ``P_j - P_i`` of a translate.

    ``violations`` lists ``(member, extra_index)`` pairs where an extra
    hyperplane also passes through the vertex, i.e. the translate is not
    K_T in the strict sense.  It is empty for a strict configuration.
    """

    T: TSet
    points: tuple[Vector, ...]
    edge_dirs: dict = field(compare=False)
    violations: tuple[tuple[Subset, int], ...] = ()

    @property
    def is_strict(self) -> bool:
        return not self.violations


def kt_configuration(a: CentralArrangement, t, T) -> KTConfiguration:
    T = _check_tset(a, T)
    t = t if isinstance(t, Translate) else Translate(as_vector(t))
    points = []
    for L in T:
        ok, P = common_point(a, t, L)
        if not ok:
            raise MissingVertex(L)
        points.append(P)
    violations = []
    for L, P in zip(T, points):
        for q in range(1, a.n + 1):
            if q in L:
                continue
            val = sum((x * y for x, y in zip(a.normals[q - 1], P)), Fraction(0))
            if val == t.t[q - 1]:
                violations.append((L, q))
    if violations:
        log.info("translate is not K_T: %d extra incidences", len(violations))
    edges = {}
    for i, j in combinations(range(len(T)), 2):
        edges[(i + 1, j + 1)] = tuple(y - x for x, y in zip(points[i], points[j]))
    return KTConfiguration(T, tuple(points), edges, tuple(violations))


def edge_space(a: CentralArrangement, Li: Subset, Lj: Subset) -> Subspace:
    """Direction space ``∩_{p in Li ∩ Lj} ker(a_p)`` of the translated ``H_{i,j}``."""
    common = sorted(set(Li) & set(Lj))
    return kernel_basis([a.normals[p - 1] for p in common], a.k)


def witness_translate(a: CentralArrangement, T) -> Translate:
    """A non-central translate lying on every ``D_{L_i}``.

    Picks the first canonical kernel basis vector outside the central
    subspace; raises OnlyCentral when there is none.
    """
    T = _check_tset(a, T, min_size=1)
    d = discriminantal(a)
    ker = kernel_basis([d.normal(L).coeffs for L in T], a.n)
    central = central_subspace(a)
    for v in ker.basis:
        if not in_span(v, central):
            return Translate(v)
    raise OnlyCentral(f"every translate on {[list(L) for L in T]} is central")


# ------------------------------------------------------------------ dependency


@dataclass(frozen=True)
class DependencyCertificate:
    T: TSet
    l: int
    S_l: TSet
    rank_base: int
    rank_full: int
    flat_rank: int

    @property
    def s(self) -> int:
        return len(self.S_l)

    @property
    def multiplicity(self) -> int:
        return len(self.T)

    def to_json(self) -> dict:
        return {
            "T": [list(L) for L in self.T],
            "l": self.l,
            "S_l": [list(L) for L in self.S_l],
            "s": self.s,
            "rank_base": self.rank_base,
            "rank_full": self.rank_full,
            "flat_rank": self.flat_rank,
            "multiplicity": self.multiplicity,
        }


def _forcing_vector(ci: Sequence[Fraction], cj: Sequence[Fraction], l: int) -> list[Fraction]:
    ratio = ci[l - 1] / cj[l - 1]
    return [x - ratio * y for x, y in zip(ci, cj)]


def certify_rs_dependency(
    a: CentralArrangement, T, l: int, S_l, pivot: Subset | None = None
) -> tuple[bool, DependencyCertificate | None]:
    """Decide (r, s)-dependency for one choice of ``(T, l, S_l)``.

    Let ``V`` be the flat cut out by the members outside ``S_l``.  For ``t``
    in ``V``, moving ``t_l`` by the unique amount that puts ``t`` on
    ``D_{L_j}`` (``L_j`` in ``S_l``) changes each form ``c_i`` into
    ``f_i = c_i - (c_i[l] / c_j[l]) c_j``.  Certification requires

    * the move is genuine: ``c_j`` is independent of the base normals;
    * every other member of ``S_l`` is forced: ``f_i`` is in the base row span;
    * base members containing ``l`` survive the move, by the same test.

    The last clause can only hold when ``S_l`` is every member containing
    ``l``; otherwise moving ``H_l`` would lose a base vertex.
    """
    T = _check_tset(a, T)
    if not is_r_set(T):
        raise PreconditionError("T is not an r-set")
    union = set().union(*T)
    inter = set(T[0]).intersection(*T[1:])
    if l not in union or l in inter:
        raise PreconditionError(f"l = {l} must lie in some but not all members")
    S_l = tuple(tuple(sorted(L)) for L in S_l)
    if len(S_l) < 2 or len(set(S_l)) != len(S_l):
        raise PreconditionError("S_l needs at least two distinct members")
    for L in S_l:
        if L not in T:
            raise PreconditionError(f"{list(L)} is not a member of T")
        if l not in L:
            raise PreconditionError(f"{list(L)} does not contain l = {l}")

    d = discriminantal(a)
    base = [L for L in T if L not in S_l]
    base_rows = [d.normal(L).coeffs for L in base]
    base_span = Subspace.span(base_rows, a.n) if base_rows else Subspace.zero(a.n)
    Lj = S_l[0] if pivot is None else tuple(sorted(pivot))
    if Lj not in S_l:
        raise PreconditionError("pivot must be a member of S_l")
    cj = d.normal(Lj).coeffs

    rank_base = base_span.dim
    if in_span(cj, base_span):
        return False, None
    moved = [L for L in S_l if L != Lj] + [L for L in base if l in L]
    for L in moved:
        if not in_span(_forcing_vector(d.normal(L).coeffs, cj, l), base_span):
            return False, None
    cert = DependencyCertificate(
        T=T,
        l=l,
        S_l=S_l,
        rank_base=rank_base,
        rank_full=rank_base + 1,
        flat_rank=d.rank(T),
    )
    return True, cert


def admissible_choices(T) -> Iterator[tuple[int, TSet]]:
    """Every ``(l, S_l)`` allowed by the dependency definition, ``|S_l| >= 2``."""
    union = sorted(set().union(*T))
    inter = set(T[0]).intersection(*T[1:])
    for l in union:
        if l in inter:
            continue
        holders = [L for L in T if l in L]
        for s in range(2, len(holders) + 1):
            for S_l in combinations(holders, s):
                yield l, S_l


def find_certificates(a: CentralArrangement, T) -> list[DependencyCertificate]:
    out = []
    for l, S_l in admissible_choices(T):
        ok, cert = certify_rs_dependency(a, T, l, S_l)
        if ok:
            out.append(cert)
    return out


def ls_dependency_check(a: CentralArrangement, T) -> bool:
    """Dependency test for ``n = 3s``, ``k = 2s - 1`` and a block-shaped 3-set.

    The three spaces ``H_{i,j}`` (each of dimension ``s - 1``) are dependent
    when their sum has dimension ``2s - 2`` instead of ``2s - 1``.
    """
    T = _check_tset(a, T)
    n, k = a.n, a.k
    if n % 3 or len(T) != 3:
        raise PreconditionError("need n = 3s and a 3-set")
    s = n // 3
    if s < 2 or k != 2 * s - 1:
        raise PreconditionError(f"need k = 2s - 1 = {2 * s - 1} with s >= 2")
    sets = [set(L) for L in T]
    if any(len(L) != 2 * s for L in sets) or len(set().union(*sets)) != 3 * s:
        raise PreconditionError("members must have 2s elements covering [3s]")
    if any(len(A & B) != s for A, B in combinations(sets, 2)):
        raise PreconditionError("pairwise intersections must have s elements")
    total = Subspace.zero(k)
    for Li, Lj in combinations(T, 2):
        total = subspace_sum(total, edge_space(a, Li, Lj))
    return total.dim == 2 * s - 2


# ------------------------------------------------------------------ search


@dataclass(frozen=True)
class NvgFinding:
    T: TSet
    rank: int
    certificates: tuple[DependencyCertificate, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.T)

    def to_json(self) -> dict:
        return {
            "T": [list(L) for L in self.T],
            "multiplicity": self.multiplicity,
            "rank": self.rank,
            "certificates": [c.to_json() for c in self.certificates],
        }


@dataclass
class SearchStats:
    """Per-run counters; ``simple_ranks`` maps each simple r-set to its flat rank."""

    simple_ranks: dict = field(default_factory=dict)
    examined: int = 0


def _scan(a: CentralArrangement, candidates: list[TSet], stats: SearchStats | None):
    d = discriminantal(a)
    d.prefetch(candidates)
    found = []
    for T in candidates:
        if stats is not None:
            stats.examined += 1
        if not is_simple(a, T):
            continue
        rk = d.rank(T)
        if stats is not None:
            stats.simple_ranks[T] = rk
        if rk < len(T):
            found.append(NvgFinding(T, rk, tuple(find_certificates(a, T))))
    return found


def _scan_shard(args):
    a, candidates = args
    stats = SearchStats()
    return _scan(a, candidates, stats), stats


def find_simple_nvg(
    a: CentralArrangement,
    r_max: int,
    jobs: int = 1,
    stats: SearchStats | None = None,
) -> list[NvgFinding]:
    """Simple r-set intersections with rank below multiplicity, ``r <= r_max``.

    Each finding carries every (r, s)-dependency certificate available for
    its ``T``.  Output is ordered by ``r`` and then lexicographically on
    ``T`` regardless of ``jobs``.
    """
    if r_max < 2:
        raise PreconditionError("r_max must be at least 2")
    candidates = [T for r in range(2, r_max + 1) for T in enumerate_r_sets(a.n, a.k, r)]
    if jobs <= 1 or len(candidates) < 2 * jobs:
        return _scan(a, candidates, stats)
    shards = [candidates[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_scan_shard, [(a, shard) for shard in shards]))
    found = []
    for part, part_stats in results:
        found.extend(part)
        if stats is not None:
            stats.examined += part_stats.examined
            stats.simple_ranks.update(part_stats.simple_ranks)
    order = {T: i for i, T in enumerate(candidates)}
    found.sort(key=lambda f: order[f.T])
    return found
