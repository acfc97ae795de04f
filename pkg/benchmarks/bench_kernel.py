"""Compare the compiled and pure-Python enumeration kernels.

    python benchmarks/bench_kernel.py [--max-total 9] [--repeat 3]

Prints one CSV row per (shape, mode, kernel) with the best wall time and
the throughput in ray partitions per second, and checks that both kernels
return the same histogram.
"""
import argparse
import math
import time

from vertconf import _pykernel

try:
    from vertconf import _ckernel
except ImportError:
    _ckernel = None

SHAPES = [(2, 2, 2), (3, 3, 2), (2, 2, 2, 2), (3, 3, 3), (2, 2, 2, 2, 2), (4, 4, 3)]
MODES = {"aggregate": 0, "component": 1}


def best_time(fn, repeat):
    best = math.inf
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-total", type=int, default=9, help="skip shapes with more points")
    ap.add_argument("--python-max-total", type=int, default=8,
                    help="largest shape the pure-Python kernel is timed on")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    kernels = [_pykernel] + ([_ckernel] if _ckernel else [])
    print("shape,n,mode,kernel,seconds,partitions_per_second,speedup")
    for sizes in SHAPES:
        n = sum(sizes)
        if n > args.max_total:
            continue
        for mode_name, mode in MODES.items():
            timings = {}
            results = {}
            for k in kernels:
                if k is _pykernel and n > args.python_max_total:
                    continue
                secs, res = best_time(lambda: k.histogram(sizes, 1, 1, mode, 0), args.repeat)
                timings[k.IMPLEMENTATION] = secs
                results[k.IMPLEMENTATION] = res
            if len(set(map(lambda r: tuple(sorted(r.items())), results.values()))) > 1:
                raise SystemExit(f"kernels disagree on {sizes} {mode_name}")
            py = timings.get("python")
            for name, secs in timings.items():
                speed = "" if py is None else f"{py / secs:.1f}"
                shape = "-".join(map(str, sizes))
                rate = math.factorial(n) / secs
                print(f"{shape},{n},{mode_name},{name},{secs:.4f},{rate:.3e},{speed}")


if __name__ == "__main__":
    main()
