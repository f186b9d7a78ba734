"""Time the compiled recurrence kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py --n 100,1000 --order 8 --repeat 3
"""

import argparse
import time

import numpy as np

from bidiagtrace import _backend, ratios
from bidiagtrace.cli.generators import Distribution, draw
from bidiagtrace.ykyy14 import BinomialCache


def kernel_calls(b, order):
    r = ratios(b)
    binom = BinomialCache.build(order).as_float()
    return {
        "first_order": lambda k: k.first_order(b.q, b.e),
        "kyn11": lambda k: k.kyn11(b.q, b.e, order, False),
        "ykn12": lambda k: k.ykn12(r.b_check, r.f, r.f_tilde, order),
        "ykyy14": lambda k: k.ykyy14(r.b_check, r.f, r.f_tilde, order, False, binom, True),
        "new": lambda k: k.unified(r.b_check, r.f, r.f_tilde, order, False, True),
    }


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", default="100,1000")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    sets = _backend.available()
    if "compiled" not in sets:
        print("compiled kernels are not built; timing the fallback only")
    rng = np.random.default_rng(args.seed)
    dist = Distribution("uniform", lo=0.5, hi=2.0)
    print("kernel, n, order, " + ", ".join(f"{s}_seconds" for s in sets) + ", speedup")
    for n in (int(x) for x in args.n.split(",")):
        b = draw(dist, n, rng)
        for name, call in kernel_calls(b, args.order).items():
            times = {s: best_of(lambda: call(_backend._MODULES[s]), args.repeat) for s in sets}
            speedup = times["python"] / times["compiled"] if "compiled" in times else float("nan")
            cells = ", ".join(f"{times[s]:.4g}" for s in sets)
            print(f"{name}, {n}, {args.order}, {cells}, {speedup:.1f}")


if __name__ == "__main__":
    main()
