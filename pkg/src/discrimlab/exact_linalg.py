"""Exact linear algebra over the rationals.

Matrices are plain sequences of rows; every scalar is a
:class:`fractions.Fraction` (ints are accepted on input).  Nothing here ever
touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import _kernels
from .errors import DimensionError

Rational = Fraction
Vector = tuple[Fraction, ...]
Matrix = Sequence[Sequence]


# ------------------------------------------------------------ serialization


def to_rational(x) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, ints or Fractions into a canonical Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x) -> str:
    """Canonical string: ``"p/q"``, or ``"p"`` when q = 1."""
    return str(Fraction(x))


def as_vector(v) -> Vector:
    return tuple(to_rational(x) for x in v)


def as_matrix(m: Matrix, ncols: int | None = None) -> tuple[Vector, ...]:
    rows = tuple(as_vector(r) for r in m)
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise DimensionError("ragged matrix")
    if ncols is not None and rows and len(rows[0]) != ncols:
        raise DimensionError(f"expected {ncols} columns, got {len(rows[0])}")
    return rows


def _ncols(rows, ncols):
    if ncols is not None:
        return ncols
    return len(rows[0]) if rows else 0


# ------------------------------------------------------------ integer lifting


def integer_row(v) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    v = [to_rational(x) for x in v]
    d = lcm(*(x.denominator for x in v)) if v else 1
    return [int(x * d) for x in v]


def primitive_integer_row(v) -> list[int]:
    """Integer multiple of ``v`` with coprime entries, same sign pattern."""
    from math import gcd

    row = integer_row(v)
    g = 0
    for x in row:
        g = gcd(g, x)
    if g > 1:
        row = [x // g for x in row]
    return row


def _bareiss_rank(rows: list[list[int]], ncols: int) -> int:
    """Fraction-free elimination on integer rows; mutates ``rows``."""
    m = len(rows)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        pr = rows[r]
        for i in range(r + 1, m):
            ri = rows[i]
            f = ri[c]
            for j in range(c + 1, ncols):
                ri[j] = (p * ri[j] - f * pr[j]) // prev
            ri[c] = 0
        prev = p
        r += 1
    return r


def int_rank(rows: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    """Exact rank of an integer matrix."""
    rows = [list(r) for r in rows]
    return _bareiss_rank(rows, _ncols(rows, ncols))


def int_rank_many(
    matrices: Sequence[Sequence[Sequence[int]]],
    ncols: int,
    bound: int | None = None,
) -> list[int]:
    """Exact ranks of many integer matrices with the same column count.

    A modular rank pass (numba or numpy) settles every matrix whose rank
    mod p reaches ``min(rows, ncols, bound)``; the rest go through exact
    Bareiss elimination.
    """
    if not matrices:
        return []
    stack = _kernels.pack_mod_p(matrices, ncols)
    modular = _kernels.rank_mod_p_batch(stack)
    out = []
    for rows, rk in zip(matrices, modular):
        cap = min(len(rows), ncols)
        if bound is not None:
            cap = min(cap, bound)
        out.append(cap if rk == cap else int_rank(rows, ncols))
    return out


# ------------------------------------------------------------ matrix ops


def transpose(m: Matrix) -> tuple[Vector, ...]:
    rows = as_matrix(m)
    if not rows:
        return ()
    return tuple(tuple(col) for col in zip(*rows))


def mat_vec(m: Matrix, v) -> Vector:
    rows = as_matrix(m)
    v = as_vector(v)
    if rows and len(rows[0]) != len(v):
        raise DimensionError("matrix/vector size mismatch")
    return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in rows)


def dot(u, v) -> Fraction:
    if len(u) != len(v):
        raise DimensionError("vector length mismatch")
    return sum((to_rational(a) * to_rational(b) for a, b in zip(u, v)), Fraction(0))


def det(m: Matrix) -> Fraction:
    """Determinant by Bareiss elimination on a row-wise integer lift."""
    rows = as_matrix(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("det of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scale = 1
    A = []
    for r in rows:
        d = lcm(*(x.denominator for x in r))
        scale *= d
        A.append([int(x * d) for x in r])
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        p = A[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                A[i][j] = (p * A[i][j] - A[i][c] * A[c][j]) // prev
            A[i][c] = 0
        prev = p
    return Fraction(sign * A[n - 1][n - 1], scale)


def rank(m: Matrix, ncols: int | None = None) -> int:
    rows = as_matrix(m)
    return int_rank([integer_row(r) for r in rows], _ncols(rows, ncols))


def rref(m: Matrix, ncols: int | None = None) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Reduced row-echelon form (nonzero rows only) and pivot columns."""
    rows = [list(r) for r in as_matrix(m)]
    width = _ncols(rows, ncols)
    pivots = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


# ------------------------------------------------------------ subspaces


@dataclass(frozen=True)
class Subspace:
    """Row span of rational vectors, stored in canonical RREF.

    Equal subspaces have identical ``basis`` tuples, so ``==`` and hashing
    are set-theoretic.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors, ambient_dim: int | None = None) -> Subspace:
        rows = as_matrix(vectors)
        if ambient_dim is None:
            if not rows:
                raise DimensionError("ambient dimension needed for an empty span")
            ambient_dim = len(rows[0])
        elif rows and len(rows[0]) != ambient_dim:
            raise DimensionError("vector length differs from ambient dimension")
        basis, _ = rref(rows, ambient_dim)
        return cls(ambient_dim, basis)

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return in_span(v, self)


def kernel_basis(m: Matrix, ncols: int | None = None) -> Subspace:
    """Right null space ``{v : m v = 0}``."""
    rows = as_matrix(m)
    width = _ncols(rows, ncols)
    R, pivots = rref(rows, width)
    free = [c for c in range(width) if c not in pivots]
    vecs = []
    for f in free:
        v = [Fraction(0)] * width
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, width)


def solve_consistent(m: Matrix, b) -> tuple[bool, Vector | None]:
    """Decide whether ``m x = b`` has a solution and return one if so.

    The witness sets every free variable to zero.
    """
    rows = as_matrix(m)
    b = as_vector(b)
    if len(b) != len(rows):
        raise DimensionError("right-hand side length differs from row count")
    width = len(rows[0]) if rows else 0
    aug = [r + (bi,) for r, bi in zip(rows, b)]
    R, pivots = rref(aug, width + 1)
    if width in pivots:
        return False, None
    x = [Fraction(0)] * width
    for row, pc in zip(R, pivots):
        x[pc] = row[width]
    return True, tuple(x)


def _check_same_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError("subspaces live in different ambient spaces")


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    _check_same_ambient(a, b)
    return a.basis == b.basis


def in_span(v, s: Subspace) -> bool:
    v = as_vector(v)
    if len(v) != s.ambient_dim:
        raise DimensionError("vector length differs from ambient dimension")
    if not any(v):
        return True
    return rank(s.basis + (v,), s.ambient_dim) == s.dim


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    return Subspace.span(a.basis + b.basis, a.ambient_dim)


def orthogonal_complement(s: Subspace) -> Subspace:
    return kernel_basis(s.basis, s.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection as the kernel of the stacked constraint systems."""
    _check_same_ambient(a, b)
    constraints = orthogonal_complement(a).basis + orthogonal_complement(b).basis
    return kernel_basis(constraints, a.ambient_dim)
