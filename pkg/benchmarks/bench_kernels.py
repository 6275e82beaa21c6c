"""Timing comparison of the quadrature backends.

Run from the repository root:

    python3 benchmarks/bench_kernels.py

Times kernel_sums on self-interaction workloads of increasing size for
every available backend, then one finite-difference Jacobian assembly
through the public solver path.  Each cell is the best of several
repeats, so background noise only ever inflates, never deflates, the
reported speedup.
"""

import time

import numpy as np

from vstates import SolverConfig, fd_jacobian, perturbed_annulus, sample
from vstates.kernels import active_backend, available_backends, use_backend

SIZES = (128, 256, 512, 1024, 2048)
REPEATS = 5


def contour_at(nodes):
    coeffs = perturbed_annulus(0.63, 4, 7, a1_1=0.04, a2_1=-0.03)
    return sample(coeffs, nodes)


def best_of(fn, repeats=REPEATS):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_kernel_sums():
    from vstates.kernels import kernel_sums

    backends = available_backends()
    print(f"kernel_sums self-interaction, best of {REPEATS} (ms)")
    header = f"{'nodes':>7}" + "".join(f"{name:>12}" for name in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for nodes in SIZES:
        sc = contour_at(nodes)
        row = f"{nodes:>7}"
        per_backend = {}
        for name in backends:
            use_backend(name)
            kernel_sums(sc.z1, sc.z1, sc.dz1, True)  # warm up
            per_backend[name] = best_of(
                lambda: kernel_sums(sc.z1, sc.z1, sc.dz1, True)
            )
            row += f"{per_backend[name] * 1e3:>12.3f}"
        if len(backends) > 1:
            row += f"{per_backend['python'] / per_backend['compiled']:>9.1f}x"
        print(row)


def bench_jacobian():
    config = SolverConfig(modes=31, nodes=512)
    coeffs = perturbed_annulus(0.63, 4, 31, a1_1=0.04, a2_1=-0.06)
    print(f"\nfd_jacobian at modes={config.modes}, nodes={config.nodes} "
          f"(62 residual assemblies), best of 3 (s)")
    for name in available_backends():
        use_backend(name)
        elapsed = best_of(lambda: fd_jacobian(coeffs, 0.1520, config), repeats=3)
        print(f"{name:>12}: {elapsed:.3f}")


def main():
    default = active_backend()
    try:
        bench_kernel_sums()
        bench_jacobian()
    finally:
        use_backend(default)


if __name__ == "__main__":
    main()
