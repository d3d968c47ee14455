"""Batched rank kernels over the prime field GF(p).

These are used only as a fast filter in front of the exact integer
elimination in :mod:`discrimlab.exact_linalg`.  For an integer matrix the
rank modulo ``p`` never exceeds the rational rank, so a batch member whose
modular rank already hits its upper bound is certified full rank; every
other member is re-checked exactly by the caller.

Two interchangeable backends exist:

* ``numba``: an ``@njit`` loop over the batch (default when numba imports).
* ``numpy``: the same elimination vectorised across the batch axis.

Set ``DISCRIMLAB_NUMBA=0`` in the environment to force the numpy path.
"""

from __future__ import annotations

import logging
import os

import numpy as np

log = logging.getLogger(__name__)

# 2**31 - 1 is prime; (p - 1)**2 < 2**62 keeps every product inside int64.
PRIME = 2_147_483_647

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAS_NUMBA = numba is not None


def _default_backend() -> str:
    flag = os.environ.get("DISCRIMLAB_NUMBA", "1").strip().lower()
    if flag in ("0", "false", "no", "off") or not HAS_NUMBA:
        return "numpy"
    return "numba"


_backend = _default_backend()


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    """Switch the kernel backend at runtime (``"numba"`` or ``"numpy"``)."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba is not importable")
    _backend = name


# ---------------------------------------------------------------- numpy path


def _powmod_vec(base: np.ndarray, exp: int, p: int) -> np.ndarray:
    result = np.ones_like(base)
    b = base % p
    while exp:
        if exp & 1:
            result = result * b % p
        b = b * b % p
        exp >>= 1
    return result


def _rank_mod_p_numpy(mats: np.ndarray, p: int) -> np.ndarray:
    A = mats.copy()
    B, R, C = A.shape
    rank = np.zeros(B, dtype=np.int64)
    row_ids = np.arange(R)
    for c in range(C):
        eligible = (A[:, :, c] != 0) & (row_ids[None, :] >= rank[:, None])
        active = np.nonzero(eligible.any(axis=1))[0]
        if active.size == 0:
            continue
        piv = np.argmax(eligible[active], axis=1)
        top = rank[active]
        # bring the pivot row to position `top`
        pivot_rows = A[active, piv].copy()
        A[active, piv] = A[active, top]
        A[active, top] = pivot_rows
        inv = _powmod_vec(pivot_rows[:, c], p - 2, p)
        pivot_rows = pivot_rows * inv[:, None] % p
        A[active, top] = pivot_rows
        below = row_ids[None, :] > top[:, None]
        factors = np.where(below, A[active, :, c], 0)
        sub = A[active] - factors[:, :, None] * pivot_rows[:, None, :]
        A[active] = np.remainder(sub, p)
        rank[active] += 1
    return rank


# ---------------------------------------------------------------- numba path

if HAS_NUMBA:

    @numba.njit(cache=True)
    def _powmod(base, exp, p):
        result = 1
        b = base % p
        while exp > 0:
            if exp & 1:
                result = result * b % p
            b = b * b % p
            exp >>= 1
        return result

    @numba.njit(cache=True)
    def _rank_mod_p_numba(mats, p):
        B, R, C = mats.shape
        out = np.empty(B, dtype=np.int64)
        A = np.empty((R, C), dtype=np.int64)
        for b in range(B):
            for i in range(R):
                for j in range(C):
                    A[i, j] = mats[b, i, j]
            r = 0
            for c in range(C):
                if r == R:
                    break
                piv = -1
                for i in range(r, R):
                    if A[i, c] != 0:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != r:
                    for j in range(C):
                        tmp = A[r, j]
                        A[r, j] = A[piv, j]
                        A[piv, j] = tmp
                inv = _powmod(A[r, c], p - 2, p)
                for j in range(c, C):
                    A[r, j] = A[r, j] * inv % p
                for i in range(r + 1, R):
                    f = A[i, c]
                    if f != 0:
                        for j in range(c, C):
                            x = (A[i, j] - f * A[r, j]) % p
                            if x < 0:
                                x += p
                            A[i, j] = x
                r += 1
            out[b] = r
        return out


def rank_mod_p_batch(mats: np.ndarray, p: int = PRIME) -> np.ndarray:
    """Rank modulo ``p`` of every matrix in an ``int64`` stack of shape (B, R, C).

    Entries must already lie in ``[0, p)``.  Zero padding rows are harmless.
    """
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    if mats.ndim != 3:
        raise ValueError("expected a (batch, rows, cols) array")
    if mats.shape[0] == 0 or mats.shape[1] == 0 or mats.shape[2] == 0:
        return np.zeros(mats.shape[0], dtype=np.int64)
    if _backend == "numba":
        return _rank_mod_p_numba(mats, p)
    return _rank_mod_p_numpy(mats, p)


def pack_mod_p(rows_per_matrix, ncols: int, p: int = PRIME) -> np.ndarray:
    """Reduce lists of integer rows mod ``p`` into a zero-padded int64 stack."""
    height = max((len(rows) for rows in rows_per_matrix), default=0)
    out = np.zeros((len(rows_per_matrix), height, ncols), dtype=np.int64)
    for b, rows in enumerate(rows_per_matrix):
        for i, row in enumerate(rows):
            out[b, i] = [x % p for x in row]
    return out
