"""Named example arrangements and seeded random ones.

Random arrangements use numpy's PCG64 bit generator
(``numpy.random.Generator(numpy.random.PCG64(seed))``) and draw the whole
n x k integer matrix with ``Generator.integers(-bound, bound, endpoint=True)``
in row-major order; a draw that is not generic is discarded and the next one
from the same stream is taken.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from .arrangement import (
    CentralArrangement,
    Translate,
    find_nongeneric_subset,
    new_arrangement,
    translate_through_points,
)
from .errors import NotGeneric, PreconditionError
from .exact_linalg import as_vector, det, rank

log = logging.getLogger(__name__)

CRAPO_POINTS = ((0, 0), (4, 0), (3, 4), (1, 3))

# H_1 = P1P2, H_2 = P1P3, H_3 = P1P4, H_4 = P2P3, H_5 = P2P4, H_6 = P3P4
QUADRILATERAL_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
QUADRILATERAL_T = ((1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6))
FALK_T = ((1, 2, 3, 4), (1, 2, 5, 6), (3, 4, 5, 6))


def braid(n: int) -> CentralArrangement:
    if n < 2:
        raise PreconditionError("braid arrangement needs n >= 2")
    return new_arrangement(1, [[1]] * n)


def quadrilateral(points=CRAPO_POINTS) -> tuple[CentralArrangement, tuple]:
    """Six lines through the point pairs of a quadrilateral, moved to the origin.

    Returns the arrangement and the 4-set of lines concurrent at each vertex.
    """
    pts = [as_vector(p) for p in points]
    if len(pts) != 4 or any(len(p) != 2 for p in pts):
        raise PreconditionError("need four points in the plane")
    for p, q, r in combinations(pts, 3):
        if det([[q[0] - p[0], q[1] - p[1]], [r[0] - p[0], r[1] - p[1]]]) == 0:
            raise PreconditionError("three of the points are collinear")
    normals = []
    for i, j in QUADRILATERAL_PAIRS:
        dx, dy = pts[j - 1][0] - pts[i - 1][0], pts[j - 1][1] - pts[i - 1][1]
        normals.append((-dy, dx))
    return new_arrangement(2, normals), QUADRILATERAL_T


def quadrilateral_translate(a: CentralArrangement, points=CRAPO_POINTS) -> Translate:
    """Translate of :func:`quadrilateral` putting each line back through its two points."""
    pts = [as_vector(p) for p in points]
    return translate_through_points(
        a, [(h, pts[i - 1]) for h, (i, j) in enumerate(QUADRILATERAL_PAIRS, start=1)]
    )


def crapo() -> tuple[CentralArrangement, tuple]:
    return quadrilateral(CRAPO_POINTS)


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


# a_1..a_4 and a_5 candidates, tried in order
_FALK_BASES = (
    ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)),
    ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 2, 3)),
    ((1, 2, 0), (0, 1, 3), (2, 0, 1), (1, 1, 1)),
)
_FALK_FIFTH = ((1, 2, 3), (2, -1, 5), (3, 1, -2), (1, -3, 2))


def falk() -> tuple[CentralArrangement, tuple]:
    """Six planes in Q^3 with ``a_1×a_2``, ``a_3×a_4``, ``a_5×a_6`` spanning a plane.

    ``W`` is the span of the first two cross products; with ``w`` normal to
    ``W``, any ``a_6 = α a_5 + β w`` makes ``a_5×a_6 = β a_5×w`` orthogonal to
    ``w``.  Candidates are tried in a fixed order until all triples of
    normals are independent.
    """
    for base in _FALK_BASES:
        a1, a2, a3, a4 = (as_vector(v) for v in base)
        w = _cross(_cross(a1, a2), _cross(a3, a4))
        if not any(w):
            continue
        for a5 in _FALK_FIFTH:
            a5 = as_vector(a5)
            for alpha, beta in product((1, 2, -1, 3), (1, -1, 2, -2)):
                a6 = tuple(Fraction(alpha) * x + Fraction(beta) * y for x, y in zip(a5, w))
                normals = (a1, a2, a3, a4, a5, a6)
                if any(not any(v) for v in normals):
                    continue
                if find_nongeneric_subset(3, normals) is None:
                    a = new_arrangement(3, normals)
                    dirs = [_cross(normals[i], normals[i + 1]) for i in (0, 2, 4)]
                    assert rank(dirs) == 2
                    return a, FALK_T
    raise RuntimeError("no generic Falk candidate found")  # pragma: no cover


def random_arrangement(n: int, k: int, seed: int, coeff_bound: int = 100) -> CentralArrangement:
    if not 1 <= k < n:
        raise PreconditionError("need 1 <= k < n")
    if coeff_bound < 2:
        raise PreconditionError("coeff_bound must be at least 2")
    if not 0 <= seed < 2**64:
        raise PreconditionError("seed must be an unsigned 64-bit integer")
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = 0
    while True:
        draws += 1
        m = rng.integers(-coeff_bound, coeff_bound, size=(n, k), endpoint=True)
        normals = [[int(x) for x in row] for row in m]
        if any(not any(row) for row in normals):
            continue
        try:
            a = new_arrangement(k, normals)
        except NotGeneric:
            continue
        log.debug("random_arrangement(n=%d, k=%d, seed=%d): %d draw(s)", n, k, seed, draws)
        return a


def example(name: str, n: int = 4):
    """Catalog lookup used by the CLI: returns ``(arrangement, T or None)``."""
    if name == "crapo":
        return crapo()
    if name == "falk":
        return falk()
    if name == "braid":
        return braid(n), None
    raise PreconditionError(f"unknown example {name!r}")
