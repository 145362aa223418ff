"""Gallery propagation kernels.

The state of a walk is ``(dtype, triple)``; one step moves the count held
by every state to its ``q`` neighbours across the panel of the requested
type.  The compiled kernel runs on ``int64`` counts; the numpy fallback
works on ``int64`` or on object arrays of Python ints (used once counts can
reach ``2**62``).

Set ``AFFCOINV_DISABLE_NUMBA=1`` to force the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

INT64_LIMIT = 2**62


def _numba_requested() -> bool:
    return os.environ.get("AFFCOINV_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes")


try:
    if not _numba_requested():
        raise ImportError("numba disabled by AFFCOINV_DISABLE_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def propagate_numpy(trans: np.ndarray, rebase: np.ndarray, word: np.ndarray,
                    starts: np.ndarray, dtype=np.int64) -> np.ndarray:
    """Count matrix rows for ``starts`` using dense transition matrices.

    ``trans[r]`` is the ``T x T`` 0/1 matrix of the step whose crossing label
    exceeds the current dtype by ``r`` (``r = 0`` moves the base vertex and
    raises the dtype).  ``rebase[d, t]`` maps a final state to its orbit.
    """
    n = trans.shape[1]
    tr = [trans[r].astype(dtype) for r in range(3)]
    cur = [np.zeros((len(starts), n), dtype=dtype) for _ in range(3)]
    for row, s in enumerate(starts):
        cur[0][row, s] = 1
    for letter in word:
        nxt = [np.zeros((len(starts), n), dtype=dtype) for _ in range(3)]
        for d in range(3):
            if not cur[d].any():
                continue
            r = (letter - d) % 3
            if r == 0:
                nxt[(d + 1) % 3] += cur[d] @ tr[0]
            else:
                nxt[d] += cur[d] @ tr[r]
        cur = nxt
    out = np.zeros((len(starts), n), dtype=dtype)
    for d in range(3):
        out[:, rebase[d]] += cur[d]
    return out


def _propagate_loops(nbr, rebase, word, starts):
    n = nbr.shape[1]
    q = nbr.shape[2]
    out = np.zeros((starts.shape[0], n), dtype=np.int64)
    cur = np.zeros((3, n), dtype=np.int64)
    nxt = np.zeros((3, n), dtype=np.int64)
    for row in range(starts.shape[0]):
        cur[:, :] = 0
        cur[0, starts[row]] = 1
        for step in range(word.shape[0]):
            letter = word[step]
            nxt[:, :] = 0
            for d in range(3):
                r = (letter - d) % 3
                nd = (d + 1) % 3 if r == 0 else d
                for t in range(n):
                    c = cur[d, t]
                    if c == 0:
                        continue
                    for m in range(q):
                        nxt[nd, nbr[r, t, m]] += c
            cur, nxt = nxt, cur
        for d in range(3):
            for t in range(n):
                out[row, rebase[d, t]] += cur[d, t]
    return out


if HAVE_NUMBA:
    propagate_compiled = njit(nogil=True, cache=True)(_propagate_loops)
else:
    propagate_compiled = None


def propagate(nbr: np.ndarray, trans: np.ndarray, rebase: np.ndarray, word: np.ndarray,
              starts: np.ndarray, big: bool) -> np.ndarray:
    """Dispatch: compiled loops when available and counts fit ``int64``."""
    if big:
        return propagate_numpy(trans.astype(object), rebase, word, starts, dtype=object)
    if HAVE_NUMBA:
        return propagate_compiled(nbr, rebase, word, starts)
    return propagate_numpy(trans, rebase, word, starts)


def backend_name(big: bool = False) -> str:
    if big:
        return "numpy-object"
    return "numba" if HAVE_NUMBA else "numpy"
