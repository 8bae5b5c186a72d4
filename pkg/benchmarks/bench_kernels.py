"""Compare the compiled and pure-Python elimination kernels.

The integer matrices are recorded from real workloads (algebra builds,
stabiliser pencil, Casimir decompositions, cyclic identities) and then
replayed through each backend.  Both backends must return identical
reductions; the script reports wall time per workload.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]
"""
from __future__ import annotations

import argparse
import random
import time

from so3eight import _kernels_py, linalg

try:
    from so3eight import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def record(workload) -> list:
    """Run ``workload`` and return every (rows, ncols) passed to the kernel."""
    calls = []
    original = linalg.rref_int

    def recorder(rows, ncols):
        calls.append(([list(r) for r in rows], ncols))
        return original(rows, ncols)

    linalg.rref_int = recorder
    try:
        workload()
    finally:
        linalg.rref_int = original
    return calls


def _algebras():
    from so3eight import liealg

    liealg.build_algebra.cache_clear()
    for k in ("g", "so3so5", "su3", "sp2sp1"):
        liealg.build_algebra(k)
    liealg.verify_intersection_theorem()


def _pencil():
    from so3eight import exforms

    exforms.pencil_scan(exforms.invariant_pencil())


def _casimir():
    from so3eight import liealg

    liealg.cotangent_isotypes(liealg.orth_complement(liealg.build_algebra("g").space))


def _cyclic():
    from so3eight import torsion

    torsion.verify_cyclic_identities()


def _random_dense(n=60, seed=1):
    rng = random.Random(seed)
    rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
    return [(rows, n)]


WORKLOADS = {
    "algebra builds": lambda: record(_algebras),
    "stabiliser pencil": lambda: record(_pencil),
    "cotangent Casimir (200-dim)": lambda: record(_casimir),
    "cyclic identities (224-dim)": lambda: record(_cyclic),
    "random dense 60x60": lambda: _random_dense(),
}


def replay(kernel, calls) -> tuple[float, list]:
    start = time.perf_counter()
    out = [kernel.rref_int(rows, ncols) for rows, ncols in calls]
    return time.perf_counter() - start, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the two largest workloads")
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernel not available; only the Python kernel can be timed")
    print(f"{'workload':<30} {'calls':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, make in WORKLOADS.items():
        if args.quick and ("Casimir" in name or "cyclic" in name):
            continue
        calls = make()
        tp = min(replay(_kernels_py, calls)[0] for _ in range(args.repeat))
        if _ckernels is None:
            print(f"{name:<30} {len(calls):>6} {tp:>10.4f} {'-':>10} {'-':>8}")
            continue
        tc = min(replay(_ckernels, calls)[0] for _ in range(args.repeat))
        same = replay(_kernels_py, calls)[1] == replay(_ckernels, calls)[1]
        if not same:
            print(f"{name}: backends disagree")
            return 1
        print(f"{name:<30} {len(calls):>6} {tp:>10.4f} {tc:>10.4f} {tp / tc if tc else float('inf'):>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
