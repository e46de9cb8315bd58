#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure NumPy fallback.

Times the two raw kernels on representative workloads plus one
end-to-end Kronecker jet evaluation, which is where all residual
checks spend their time.

Usage: python benchmarks/bench_kernels.py [--repeat 2000]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from superkron import _kernels_py

try:
    from superkron import _core
except ImportError:
    _core = None


def timeit(fn, repeat: int) -> float:
    start = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - start) / repeat


def bench_backend(impl, repeat: int) -> dict[str, float]:
    z, tau = 0.31 + 0.17j, 0.13 + 1.1j
    rng = np.random.default_rng(0)
    a = rng.normal(size=(5, 3, 2)) + 1j * rng.normal(size=(5, 3, 2))
    b = rng.normal(size=(5, 3, 2)) + 1j * rng.normal(size=(5, 3, 2))
    return {
        "theta_series(6,1)": timeit(lambda: impl.theta_series(z, tau, 20, 6, 1), repeat),
        "theta_series(0,0)": timeit(lambda: impl.theta_series(z, tau, 20, 0, 0), repeat),
        "jet_mul(5x3x2)": timeit(lambda: impl.jet_mul(a, b), repeat),
    }


def bench_end_to_end(repeat: int) -> dict[str, dict[str, float]]:
    """Full phi-jet evaluation under each backend, by rebinding the
    kernel module's function pointers."""
    from superkron import _kernels
    from superkron.elliptic import EllipticContext, kronecker_jet

    ctx = EllipticContext(0.13 + 1.1j)
    out: dict[str, dict[str, float]] = {}
    backends = {"python": _kernels_py}
    if _core is not None:
        backends["cython"] = _core
    originals = (_kernels.theta_series, _kernels.jet_mul)
    try:
        for name, impl in backends.items():
            # elliptic.py binds superkron._kernels.theta_series at import
            # time; jets.py binds jet_mul the same way
            import superkron.elliptic as ell
            import superkron.jets as jets

            ell.theta_series = impl.theta_series
            jets.jet_mul = impl.jet_mul
            out[name] = {
                "kronecker_jet(4,2,1)": timeit(
                    lambda: kronecker_jet(ctx, 0.21 - 0.12j, 0.37 + 0.29j, (4, 2, 1)),
                    max(repeat // 20, 10),
                ),
                "kronecker_jet(2,0,1)": timeit(
                    lambda: kronecker_jet(ctx, 0.21 - 0.12j, 0.37 + 0.29j, (2, 0, 1)),
                    max(repeat // 10, 10),
                ),
            }
    finally:
        import superkron.elliptic as ell
        import superkron.jets as jets

        ell.theta_series, jets.jet_mul = originals
    return out


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=2000)
    args = parser.parse_args()

    results = {"python": bench_backend(_kernels_py, args.repeat)}
    if _core is not None:
        results["cython"] = bench_backend(_core, args.repeat)
    else:
        print("compiled kernels not built; benchmarking the fallback only")

    names = sorted(next(iter(results.values())))
    print(f"{'kernel':<22s}" + "".join(f"{b:>14s}" for b in results) + "       speedup")
    for name in names:
        row = f"{name:<22s}"
        times = [results[b][name] for b in results]
        for t in times:
            row += f"{t * 1e6:>12.2f}us"
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>10.1f}x"
        print(row)

    print()
    e2e = bench_end_to_end(args.repeat)
    names = sorted(next(iter(e2e.values())))
    print(f"{'end-to-end':<22s}" + "".join(f"{b:>14s}" for b in e2e) + "       speedup")
    for name in names:
        row = f"{name:<22s}"
        times = [e2e[b][name] for b in e2e]
        for t in times:
            row += f"{t * 1e6:>12.2f}us"
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>10.1f}x"
        print(row)


if __name__ == "__main__":
    main()
