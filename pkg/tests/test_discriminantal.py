from fractions import Fraction
from itertools import combinations

import pytest

from discrimlab.arrangement import central_subspace
from discrimlab.catalog import braid, random_arrangement
from discrimlab.discriminantal import (
    all_disc_normals,
    census_summary,
    central_is_in_flat,
    disc_normal,
    discriminantal,
    flat_of,
    in_DL,
    is_simple,
    rank2_census,
)
from discrimlab.errors import PreconditionError
from discrimlab.exact_linalg import Subspace, dot, kernel_basis, subspace_equal


def named_arrangements(crapo, falk):
    arrs = [crapo[0], falk[0], braid(3), braid(5)]
    arrs += [random_arrangement(6, 2, s) for s in range(1, 21)]
    return arrs


def literal_is_simple(a, T):
    """Compare partial intersections with every D_S as subspaces."""
    full = sorted(set().union(*T))
    for size in range(2, len(T) + 1):
        for I in combinations(T, size):
            flat_I = flat_of(a, I).subspace
            base = set().union(*I)
            for m in range(a.k + 2, len(full) + 1):
                for S in combinations(full, m):
                    if base <= set(S) and subspace_equal(flat_I, flat_of(a, [S]).subspace):
                        return False
    return True


def test_disc_normal_examples(tri):
    b = braid(4)
    for i, j in combinations(range(1, 5), 2):
        expected = [0] * 4
        expected[i - 1], expected[j - 1] = 1, -1
        assert disc_normal(b, (i, j)).coeffs == tuple(expected)
    assert disc_normal(tri, (1, 2, 3)).coeffs == (1, 1, -1)
    with pytest.raises(PreconditionError):
        disc_normal(tri, (1, 2))


def test_disc_normal_matches_bordered_determinant(tri):
    # det[[1,0,t1],[0,1,t2],[1,1,t3]] = t3 - t1 - t2
    for t in ([1, 2, 3], [5, -1, 7], [0, 0, 1]):
        assert disc_normal(tri, (1, 2, 3))(t) == -(t[2] - t[0] - t[1])


def test_support_orthogonality_and_sign(crapo, falk):
    for a in named_arrangements(crapo, falk):
        central = central_subspace(a)
        for dn in all_disc_normals(a):
            support = tuple(i + 1 for i, c in enumerate(dn.coeffs) if c)
            assert support == dn.L
            assert next(c for c in dn.coeffs if c) > 0
            for v in central.basis:
                assert dot(dn.coeffs, v) == 0


def test_disc_normal_is_deterministic(crapo):
    a, _ = crapo
    first = [dn.coeffs for dn in all_disc_normals(a)]
    discriminantal.cache_clear()
    assert [dn.coeffs for dn in all_disc_normals(a)] == first


def test_in_DL_examples(tri):
    assert all(in_DL(tri, [0, 0, 0], L) for L in [(1, 2, 3)])
    assert in_DL(tri, [1, 1, 2], (1, 2, 3))
    assert not in_DL(tri, [1, 1, 3], (1, 2, 3))


def test_flat_of_examples(crapo):
    a, T = crapo
    assert flat_of(a, [(1, 2, 3)]).rank == 1
    assert flat_of(a, [(1, 2, 3, 4)]).rank == 2
    assert flat_of(a, T).rank == 3


def test_ds_rank_formula(crapo, falk):
    for a in named_arrangements(crapo, falk):
        for m in range(a.k + 1, a.n + 1):
            for S in combinations(range(1, a.n + 1), m):
                assert discriminantal(a).ds_rank(S) == m - a.k


def test_flat_contains_central_and_rank_bound(crapo, falk):
    for a in named_arrangements(crapo, falk)[:6]:
        d = discriminantal(a)
        for fam in combinations(d.subsets, 2):
            flat = flat_of(a, fam)
            assert central_is_in_flat(a, flat)
            assert flat.rank <= a.n - a.k
            assert flat.subspace == kernel_basis([d.normal(L).coeffs for L in fam], a.n)


def test_is_simple_examples(crapo, falk):
    a, T = crapo
    assert not is_simple(a, [(1, 2, 3), (1, 2, 4)])
    assert is_simple(a, T)
    assert is_simple(*falk)
    with pytest.raises(PreconditionError):
        is_simple(a, [(1, 2, 3)])
    with pytest.raises(PreconditionError):
        is_simple(a, [(1, 2, 3), (1, 2, 3)])


@pytest.mark.parametrize("which", ["crapo", "falk", "random"])
def test_is_simple_matches_subspace_oracle(which, crapo, falk):
    a = {"crapo": crapo[0], "falk": falk[0], "random": random_arrangement(6, 2, 3)}[which]
    subsets = discriminantal(a).subsets
    fams = list(combinations(subsets, 2)) + list(combinations(subsets, 3))[::7]
    if which == "crapo":
        fams.append(crapo[1])
    for T in fams:
        assert is_simple(a, T) == literal_is_simple(a, T), T


def test_census_braid4():
    entries = rank2_census(braid(4))
    triple = Subspace.span([[1, -1, 0, 0], [0, 1, -1, 0]])
    hit = [e for e in entries if e.normal_span == triple]
    assert len(hit) == 1
    assert hit[0].multiplicity == 3
    assert hit[0].members == ((1, 2), (1, 3), (2, 3))
    assert hit[0].flat == Subspace.span([[1, 1, 1, 0], [0, 0, 0, 1]])


def test_census_very_generic():
    for seed in range(1, 6):
        summary = census_summary(rank2_census(random_arrangement(6, 2, seed)))
        assert {row["multiplicity"] for row in summary} == {2, 4}
        # 15 D_S with |S| = 4, each holding C(4,3) = 4 hyperplanes
        assert {row["multiplicity"]: row["count"] for row in summary}[4] == 15


def test_census_falk(falk):
    summary = census_summary(rank2_census(falk[0]))
    assert 3 in {row["multiplicity"] for row in summary}


def test_census_is_complete(crapo):
    a, _ = crapo
    d = discriminantal(a)
    entries = rank2_census(a)
    covered = set()
    for e in entries:
        for pair in combinations(e.members, 2):
            covered.add(pair)
    assert covered == set(combinations(d.subsets, 2))
    # every member lies on the flat, no other hyperplane does
    for e in entries:
        flat = e.flat
        for L in d.subsets:
            on = all(dot(d.normal(L).coeffs, v) == 0 for v in flat.basis)
            assert on == (L in e.members)
