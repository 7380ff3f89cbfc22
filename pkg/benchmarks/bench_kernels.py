"""Time the compiled kernels against the pure-Python reference.

    python benchmarks/bench_kernels.py            # micro-benchmarks only
    python benchmarks/bench_kernels.py --grid     # also the equivalence grid on both backends

Both backends get identical inputs; the script checks that they agree before timing.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time
import timeit

from drinlevel import _pykernels
from drinlevel.algebra import algebra_new

try:
    from drinlevel import _ckernels
except ImportError:
    _ckernels = None


def workloads(spec, rng):
    B = algebra_new(*spec)
    args = (B.p, B.q, B.Q, B.k, B.residue.zech)
    el = lambda: B.from_code(rng.randrange(B.cardinality))  # noqa: E731
    f = tuple(el() for _ in range(6))
    g = tuple(el() for _ in range(6))
    xs = [el() for _ in range(64)]
    imgs = [el() for _ in range(5)]
    return B, args, {
        "el_mul": lambda K, c: [K.el_mul(c, x, y) for x, y in zip(xs, xs[1:])],
        "tw_mul": lambda K, c: K.tw_mul(c, f, g),
        "tw_eval": lambda K, c: [K.tw_eval(c, f, x) for x in xs],
        "subspace_poly": lambda K, c: K.subspace_poly(c, imgs),
        "span_values": lambda K, c: K.span_values(c, imgs),
        "roots_product": lambda K, c: K.roots_product(c, K.span_values(c, imgs[:4])),
    }


def best_of(fn, repeat=5):
    n, _ = timeit.Timer(fn).autorange()
    return min(timeit.Timer(fn).repeat(repeat, n)) / n


def micro(specs):
    rng = random.Random(0)
    print(f"{'algebra':<22}{'kernel':<16}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}")
    for spec in specs:
        B, args, loads = workloads(spec, rng)
        pc = _pykernels.make_ctx(*args)
        cc = _ckernels.make_ctx(*args)
        for name, job in loads.items():
            if job(_pykernels, pc) != job(_ckernels, cc):
                raise SystemExit(f"backends disagree on {name} over {B}")
            tp = best_of(lambda: job(_pykernels, pc)) * 1e6
            tc = best_of(lambda: job(_ckernels, cc)) * 1e6
            print(f"{repr(B):<22}{name:<16}{tp:>14.1f}{tc:>14.1f}{tp / tc:>9.1f}x")


def grid():
    for label, env in (("cython", {}), ("python", {"DRINLEVEL_PURE_PYTHON": "1"})):
        t0 = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "drinlevel", "equivalence"], env={**os.environ, **env},
                              capture_output=True, text=True)
        print(f"equivalence default run, {label}: {time.perf_counter() - t0:.1f}s  ({proc.stdout.strip()})")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--grid", action="store_true", help="also time the default equivalence run (minutes)")
    args = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e .` with Cython available")
    micro([(2, 1, 1, 2), (2, 1, 4, 2), (3, 1, 2, 3), (2, 1, 12, 1)])
    if args.grid:
        grid()


if __name__ == "__main__":
    main()
