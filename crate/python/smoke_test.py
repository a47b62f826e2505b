#!/usr/bin/env python3
"""Smoke test for the spincorr extension module.

Build the extension first (either profile works):

    cargo build -p spincorr-py --release

The script locates the built cdylib, copies it next to itself under the
importable name, and exercises the main entry points.
"""

import math
import pathlib
import shutil
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]


def load_module():
    for profile in ("release", "debug"):
        built = ROOT / "target" / profile / "libspincorr.so"
        if built.exists():
            dest = built.with_name("spincorr.so")
            if not dest.exists() or built.stat().st_mtime > dest.stat().st_mtime:
                shutil.copy2(built, dest)
            sys.path.insert(0, str(dest.parent))
            import spincorr

            return spincorr
    sys.exit("build the extension first: cargo build -p spincorr-py --release")


def main():
    sc = load_module()
    third = math.pi / 3

    # Exact engine: cos for a single spin, -cos for the singlet.
    assert abs(sc.correlation_exact(0.0, third) - 0.5) < 1e-12
    assert abs(sc.correlation_singlet(0.0, third) + 0.5) < 1e-12
    assert abs(sc.correlation_singlet_direct(0.0, third) + 0.5) < 1e-12

    m = sc.cond_prob_matrix(0.0, third)
    assert abs(m[0][0] - 0.75) < 1e-12 and abs(m[0][1] - 0.25) < 1e-12
    ms = sc.cond_prob_matrix_singlet(0.0, third)
    assert abs(ms[0][0] - 0.25) < 1e-12

    weights = sc.spectral_weights(0.0, third)
    assert abs(sum(weights) - 1.0) < 1e-12

    amps = sc.singlet()
    assert abs(amps[1].real - 1 / math.sqrt(2)) < 1e-12
    (plus, minus) = sc.basis_states(math.pi / 2)
    assert abs(plus[0].real - math.cos(math.pi / 4)) < 1e-12
    assert abs(plus[0].real * minus[0].real + plus[1].real * minus[1].real) < 1e-12

    # Sampler: reproducible, correctly distributed, converging.
    draws = sc.sample_phi(10_000, seed=7)
    assert draws == sc.sample_phi(10_000, seed=7)
    assert all(0.0 <= phi <= math.pi for phi in draws)
    assert sc.pdf(math.pi / 2) == 0.5
    assert sc.classify(math.pi / 6, "single", third) == -1
    assert sc.classify(math.pi / 6, "bipartite", third) == +1

    est = sc.estimate_correlation("single", third, n=200_000, seed=11)
    assert abs(est.mean - 0.5) < 4 * est.std_error
    p_plus, p_minus = sc.partition_probabilities("single", third, n=200_000, seed=11)
    assert p_plus + p_minus == 1.0
    assert abs(p_plus - 0.75) < 4 * math.sqrt(0.75 * 0.25 / 200_000)

    hi, lo = sc.numeric_partition_integrals(third)
    assert abs(hi - 0.75) < 1e-10 and abs(lo - 0.25) < 1e-10

    # Harness: CHSH at the standard angles and the sweep.
    exact = sc.chsh("exact")
    assert abs(exact.s_value - 2 * math.sqrt(2)) < 1e-12
    sampled = sc.chsh("sampled", n=100_000, seed=3)
    assert abs(sampled.s_value - exact.s_value) < 4 * sampled.s_std_error

    report = sc.agreement_sweep("bipartite", grid_size=11, n=10_000, seed=5)
    assert not report.flagged and report.max_abs_z < 5
    assert len(report.rows) == 11

    stat, crit, ok = sc.ks_test(n=50_000, seed=1)
    assert ok and stat < crit

    # Error paths surface as ValueError, not panics.
    for bad in (
        lambda: sc.correlation_exact(float("nan"), 0.0),
        lambda: sc.estimate_correlation("triple", 0.5),
        lambda: sc.chsh("sampled", n=10),
    ):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("spincorr smoke test: all checks passed")


if __name__ == "__main__":
    main()
