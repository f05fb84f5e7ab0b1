"""Compare the compiled and pure-Python monodromy enumerators.

    python3 benchmarks/bench_oracle.py [--repeat N]

Each case is run on both backends; the histograms must agree and the
table shows wall time per backend and the speed-up.
"""
import argparse
import time

from basehurwitz import oracle

CASES = [
    # (h, d, r, connected)
    (0, 4, 4, False),
    (0, 5, 4, True),
    (1, 3, 3, False),
    (1, 4, 2, True),
    (2, 3, 1, False),
    (1, 4, 4, False),
]


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if not oracle.HAVE_KERNEL:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")
    perms_trans = {}
    print(f"{'h':>2} {'d':>2} {'r':>2} {'conn':>5} {'tuples':>10} {'compiled':>10} {'python':>10} {'speedup':>8}")
    for h, d, r, conn in CASES:
        perms, trans = perms_trans.setdefault(d, oracle._group(d))
        tc, hc = timed(lambda: oracle._oracle_kernel.histogram(d, h, r, conn, perms, trans), args.repeat)
        tp, hp = timed(lambda: oracle._oracle_py.histogram(d, h, r, conn, perms, trans), 1)
        if hc != hp:
            raise SystemExit(f"backends disagree at h={h} d={d} r={r}")
        size = oracle.enumeration_size(h, d, r)
        print(f"{h:>2} {d:>2} {r:>2} {str(conn):>5} {size:>10} {tc:>9.4f}s {tp:>9.4f}s {tp / tc:>7.0f}x")


if __name__ == "__main__":
    main()
