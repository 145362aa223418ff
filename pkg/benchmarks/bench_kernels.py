"""Time gallery propagation on each backend.

    python3 benchmarks/bench_kernels.py [--repeat N] [--fixture NAME]

Backends: compiled loops (when numba is importable), dense int64 numpy,
and numpy on object arrays (the path used once counts can reach 2**62).
All three must produce the same matrix; the script checks that before
printing timings.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from affcoinv import _kernels
from affcoinv.chambers import ChamberSystem, default_galleries
from affcoinv.presentation import BUNDLED, load_bundled


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--fixture", choices=BUNDLED, action="append")
    args = ap.parse_args()
    for name in args.fixture or BUNDLED:
        system = ChamberSystem(load_bundled(name))
        starts = np.arange(len(system), dtype=np.int64)
        for g in default_galleries():
            word = np.array(g.as_ints(), dtype=np.int64)
            backends = {
                "numpy-int64": lambda: _kernels.propagate_numpy(system.trans, system.rebase, word, starts),
                "numpy-object": lambda: _kernels.propagate_numpy(system.trans.astype(object), system.rebase,
                                                                 word, starts, dtype=object),
            }
            if _kernels.HAVE_NUMBA:
                backends["numba"] = lambda: _kernels.propagate_compiled(system.nbr, system.rebase, word, starts)
                backends["numba"]()  # compile / load cache outside the timing
            ref = backends["numpy-int64"]()
            for key, fn in backends.items():
                if not np.array_equal(np.asarray(fn(), dtype=object), ref.astype(object)):
                    raise SystemExit(f"{key} disagrees with numpy-int64 on {name} {g}")
            for key, fn in backends.items():
                print(f"{name:14s} {str(g):14s} {len(system):4d} orbits  {key:13s} "
                      f"{best_of(fn, args.repeat) * 1e3:9.3f} ms")


if __name__ == "__main__":
    main()
