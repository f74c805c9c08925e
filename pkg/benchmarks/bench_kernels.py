#!/usr/bin/env python3
"""Benchmark: compiled kernel vs the pure-Python fallback.

Micro section times the polynomial kernels head to head in one process;
the end-to-end section runs a fixed submodularity batch in subprocesses
with FFLAT_PURE_PYTHON toggled, which is how the fallback is actually
selected at import.

Usage: python benchmarks/bench_kernels.py [--micro-iters N] [--e2e-count N]
"""

import argparse
import os
import subprocess
import sys
import time

from fflat.algebra import FieldConfig
from fflat._core import _pykernel

try:
    from fflat._core import _kernel
except ImportError:
    _kernel = None


def field_ops(field, mod):
    return mod.FieldOps(field.q, field._add_t, field._sub_t, field._mul_t,
                        field._neg_t, field._inv_t)


def time_call(fn, args, iters):
    start = time.perf_counter()
    for _ in range(iters):
        fn(*args)
    return time.perf_counter() - start


def micro(iters):
    import random

    rng = random.Random(1)
    rows = []
    for q in (2, 5):
        field = FieldConfig(q)
        mods = [("python", _pykernel)]
        if _kernel is not None:
            mods.append(("cython", _kernel))
        poly_a = [rng.randrange(q) for _ in range(8)] + [1]
        poly_b = [rng.randrange(q) for _ in range(4)] + [1]
        num = [rng.randrange(q) for _ in range(6)] + [1]
        den = [rng.randrange(q) for _ in range(6)] + [1]
        cases = [
            ("poly_mul deg8*deg4", "poly_mul", (poly_a, poly_b)),
            ("poly_divmod deg8/deg4", "poly_divmod", (poly_a, poly_b)),
            ("poly_gcd deg6,deg6", "poly_gcd", (num, den)),
            ("frac_normalize deg6/deg6", "frac_normalize", (num, den)),
        ]
        for label, fn_name, args in cases:
            timings = {}
            for mod_name, mod in mods:
                ops = field_ops(field, mod)
                fn = getattr(mod, fn_name)
                timings[mod_name] = time_call(fn, (ops, *args), iters)
            rows.append((f"q={q} {label}", timings))
    print(f"micro-kernels ({iters} iterations each)")
    print(f"{'case':34s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, timings in rows:
        py = timings["python"]
        cy = timings.get("cython")
        if cy is None:
            print(f"{label:34s} {py*1e3:9.1f}ms {'-':>10s} {'-':>8s}")
        else:
            print(f"{label:34s} {py*1e3:9.1f}ms {cy*1e3:9.1f}ms {py/cy:7.1f}x")


E2E_SNIPPET = """
import time
from fflat.harness import GenParams, run_property_suite
from fflat._core import BACKEND
t0 = time.perf_counter()
rep = run_property_suite(GenParams(count={count}, seed=777),
                         names=["submodularity"])
dt = time.perf_counter() - t0
assert rep.all_passed
print(f"{{BACKEND}} {{dt:.3f}}")
"""


def end_to_end(count):
    print(f"\nend-to-end: submodularity property, {count} instances "
          f"(q in {{2,3,5}}, n <= 4)")
    results = {}
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("FFLAT_PURE_PYTHON", None)
        if pure:
            env["FFLAT_PURE_PYTHON"] = "1"
        out = subprocess.run(
            [sys.executable, "-c", E2E_SNIPPET.format(count=count)],
            env=env, capture_output=True, text=True, check=True)
        backend, seconds = out.stdout.split()
        results[backend] = float(seconds)
        print(f"  {backend:8s} {float(seconds):8.3f}s")
    if "cython" in results and "python" in results:
        print(f"  speedup {results['python'] / results['cython']:.1f}x")
    elif "cython" not in results:
        print("  compiled kernel not built; only the fallback was timed")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--micro-iters", type=int, default=20000)
    parser.add_argument("--e2e-count", type=int, default=150)
    args = parser.parse_args()
    if _kernel is None:
        print("note: compiled kernel unavailable; pure backend only\n")
    micro(args.micro_iters)
    end_to_end(args.e2e_count)


if __name__ == "__main__":
    main()
