from itertools import combinations

import pytest

from discrimlab.arrangement import common_point
from discrimlab.catalog import (
    CRAPO_POINTS,
    braid,
    crapo,
    falk,
    quadrilateral,
    quadrilateral_translate,
    random_arrangement,
)
from discrimlab.discriminantal import all_disc_normals, flat_of, in_DL
from discrimlab.errors import NotGeneric, PreconditionError
from discrimlab.arrangement import new_arrangement
from discrimlab.exact_linalg import rank
from discrimlab.nvg import edge_space, is_r_set


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def test_braid():
    a = braid(3)
    assert a.k == 1 and [tuple(v) for v in a.normals] == [(1,)] * 3
    coeffs = {dn.L: dn.coeffs for dn in all_disc_normals(a)}
    assert coeffs == {(1, 2): (1, -1, 0), (1, 3): (1, 0, -1), (2, 3): (0, 1, -1)}
    for n in (3, 4, 5):
        assert rank([dn.coeffs for dn in all_disc_normals(braid(n))]) == n - 1
    with pytest.raises(PreconditionError):
        braid(1)


def test_quadrilateral_default():
    a, T = crapo()
    assert a.n == 6 and a.k == 2
    assert is_r_set(T)
    assert flat_of(a, T).rank == 3


@pytest.mark.parametrize("points", [CRAPO_POINTS, ((0, 0), (5, 1), (2, 7), (-3, 2)), ((1, 1), (7, 2), (4, 9), (0, 5))])
def test_quadrilateral_concurrences_exact(points):
    a, T = quadrilateral(points)
    t = quadrilateral_translate(a, points)
    hits = {L for L in combinations(range(1, 7), 3) if in_DL(a, t, L)}
    assert hits == set(T)
    for L, P in zip(T, points):
        ok, Q = common_point(a, t, L)
        assert ok and tuple(Q) == tuple(P)


def test_quadrilateral_collinear():
    with pytest.raises(PreconditionError):
        quadrilateral(((0, 0), (1, 1), (2, 2), (0, 5)))


def test_falk_invariants():
    a, T = falk()
    assert all(len(set(A) & set(B)) == 2 for A, B in combinations(T, 2))
    assert set().union(*T) == set(range(1, 7))
    dirs = [_cross(a.normals[i], a.normals[i + 1]) for i in (0, 2, 4)]
    assert rank(dirs) == 2
    for A, B in combinations(T, 2):
        assert edge_space(a, A, B).dim == 1
    assert flat_of(a, T).rank == 2


def test_falk_candidate_is_not_generic():
    cand = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, 1, 0)]
    dirs = [_cross(cand[i], cand[i + 1]) for i in (0, 2, 4)]
    assert dirs == [(0, 0, 1), (-1, 1, 0), (-3, 3, -1)]
    assert rank(dirs) == 2
    with pytest.raises(NotGeneric) as exc:
        new_arrangement(3, cand)
    assert exc.value.subset == (1, 2, 6)


def test_random_determinism():
    a = random_arrangement(6, 2, 1)
    assert a == random_arrangement(6, 2, 1)
    assert a != random_arrangement(6, 2, 2)
    assert all(abs(x) <= 100 for v in a.normals for x in v)
    small = random_arrangement(5, 3, 9, coeff_bound=3)
    assert all(abs(x) <= 3 for v in small.normals for x in v)


def test_random_preconditions():
    with pytest.raises(PreconditionError):
        random_arrangement(3, 3, 1)
    with pytest.raises(PreconditionError):
        random_arrangement(6, 2, 1, coeff_bound=1)
    with pytest.raises(PreconditionError):
        random_arrangement(6, 2, -1)
