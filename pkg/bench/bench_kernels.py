"""Compare the compiled kernels with the pure-Python fallback.

    python bench/bench_kernels.py [--norm 16] [--repeat 3]

Both backends are imported directly, so the comparison does not depend on
QUARTSHAPE_PURE. Results are checked for equality before timings are printed.
"""
import argparse
import random
import sys
import time

from quartshape import _pure

try:
    from quartshape import _kernel
except ImportError:
    _kernel = None


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--norm", type=int, default=16, help="squared radius of the ball scan")
    ap.add_argument("--tuples", type=int, default=2000, help="random tuples for disc/sp_min")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    if _kernel is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    tuples = [tuple(rng.randint(-4, 4) for _ in range(12)) for _ in range(args.tuples)]
    cases = [
        ("scan_ball", lambda m: lambda: m.scan_ball(args.norm, 10 ** 4)),
        ("disc_of", lambda m: lambda: [m.disc_of(t) for t in tuples]),
        ("sp_min", lambda m: lambda: [m.sp_min(t) for t in tuples]),
    ]
    print(f"{'kernel':<12}{'compiled s':>12}{'python s':>12}{'speedup':>10}")
    for name, make in cases:
        tc, rc = _best(make(_kernel), args.repeat)
        tp, rp = _best(make(_pure), 1)
        if rc != rp:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 2
        print(f"{name:<12}{tc:>12.4f}{tp:>12.4f}{tp / tc:>10.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
