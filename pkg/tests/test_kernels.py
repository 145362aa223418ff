import os
import subprocess
import sys

import numpy as np
import pytest

from affcoinv import _kernels
from affcoinv.chambers import gallery_matrix_dfs


def _inputs(system, word):
    return system.nbr, system.trans, system.rebase, np.array(word, dtype=np.int64), np.arange(len(system))


@pytest.mark.parametrize("word", [(0, 1, 2, 1), (0, 2, 1, 0, 2, 1), (0,), ()])
def test_numpy_matches_dfs(system_q3, word):
    nbr, trans, rebase, w, starts = _inputs(system_q3, word)
    out = _kernels.propagate_numpy(trans, rebase, w, starts)
    letters = ",".join("sab"[x] for x in word)
    assert np.array_equal(out, gallery_matrix_dfs(system_q3, letters).astype(np.int64))


def test_object_path_matches_int64(system_q3):
    nbr, trans, rebase, w, starts = _inputs(system_q3, (0, 1, 2, 0, 1, 2))
    a = _kernels.propagate_numpy(trans, rebase, w, starts)
    b = _kernels.propagate(nbr, trans, rebase, w, starts, big=True)
    assert b.dtype == object
    assert np.array_equal(a, b.astype(np.int64))


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba unavailable or disabled")
def test_compiled_matches_numpy(system_q4):
    nbr, trans, rebase, w, starts = _inputs(system_q4, (0, 1, 2, 0, 1, 2))
    assert np.array_equal(_kernels.propagate_compiled(nbr, rebase, w, starts),
                          _kernels.propagate_numpy(trans, rebase, w, starts))


def test_big_counts_stay_exact(system_q3):
    # 3^40 > 2^62: forces the object path
    word = (0, 1, 2, 1) * 10
    letters = ",".join("sab"[x] for x in word)
    from affcoinv.chambers import gallery_matrix

    m = gallery_matrix(system_q3, letters)
    assert m.n_value == 3**40 and m.row_sums_ok and m.col_sums_ok


def test_env_flag_selects_numpy():
    env = dict(os.environ, AFFCOINV_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from affcoinv import _kernels; print(_kernels.backend_name())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
