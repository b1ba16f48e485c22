"""Compiled vs pure-Python F_p row reduction.

Two measurements:

* the raw kernel on random dense matrices of several sizes;
* an end-to-end workload (the A3 axiom suite) in a subprocess per backend,
  the pure-Python one forced with ``WEIGHTLAB_PURE_PYTHON=1``.

Usage: python benchmarks/bench_kernels.py [--sizes 10 40 120] [--repeat 5]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import timeit

from weightlab.linalg import kernels

WORKLOAD = """
import time
from weightlab.acceptance import a3
from weightlab.linalg.kernels import BACKEND
from weightlab.sampling import make_rng, random_complex
from weightlab.weights import WeightStructureSpec
from weightlab.weights.checks import check_axioms
rng = make_rng(0)
xs = [random_complex(rng, a3()) for _ in range(60)]
t = time.perf_counter()
ok = check_axioms(WeightStructureSpec.stupid(), xs).ok
print(BACKEND, time.perf_counter() - t, ok)
"""


def random_matrix(rng, n, p):
    return [[rng.randrange(p) for _ in range(n)] for _ in range(n)]


def bench_kernel(sizes, repeat, p=32003):
    rng = random.Random(0)
    rows = []
    for n in sizes:
        m = random_matrix(rng, n, p)
        assert kernels.rref_mod_p(m, n, p) == kernels.rref_mod_p_python(m, n, p)
        number = max(1, 2000 // (n * n))
        fast = min(timeit.repeat(lambda: kernels.rref_mod_p(m, n, p), number=number, repeat=repeat)) / number
        slow = min(timeit.repeat(lambda: kernels.rref_mod_p_python(m, n, p), number=number, repeat=repeat)) / number
        rows.append({"n": n, "compiled_s": fast, "python_s": slow, "speedup": slow / fast})
    return rows


def bench_workload():
    out = {}
    for label, extra in (("default", {}), ("python", {"WEIGHTLAB_PURE_PYTHON": "1"})):
        env = dict(os.environ, **extra)
        res = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
        backend, seconds, ok = res.stdout.split()
        out[label] = {"backend": backend, "seconds": float(seconds), "ok": ok == "True"}
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 10, 40, 120])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if kernels.BACKEND != "cython":
        print("compiled kernel not built; run `pip install --no-build-isolation -e .` first", file=sys.stderr)
    report = {"loaded_backend": kernels.BACKEND, "kernel": bench_kernel(args.sizes, args.repeat),
              "workload": bench_workload()}
    if args.json:
        print(json.dumps(report, indent=2))
        return 0
    print(f"loaded backend: {report['loaded_backend']}")
    print(f"{'n':>5} {'compiled':>12} {'python':>12} {'speedup':>8}")
    for r in report["kernel"]:
        print(f"{r['n']:>5} {r['compiled_s'] * 1e3:>10.3f}ms {r['python_s'] * 1e3:>10.3f}ms {r['speedup']:>7.1f}x")
    w = report["workload"]
    print(f"A3 axiom suite (60 samples): {w['default']['backend']} {w['default']['seconds']:.2f}s, "
          f"python {w['python']['seconds']:.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
