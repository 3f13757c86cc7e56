#!/usr/bin/env python3
"""Hunt for matrices near the spectral boundary and inspect oracle behaviour.

The discrete theory decides H-status exactly, but the numerical oracles
(LU singularity flag, inverse sign test, Jacobi radius threshold) have a
gray zone around rho = 1.  This script scans an ensemble with magnitudes
spanning many orders of magnitude, collects instances inside the band
|rho - 1| <= band, and reports whether the exact verdict and the oracles
ever point in different directions there.

    python3 scripts/boundary_hunt.py --count 2000 --band 1e-6
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from ddh import (
    EnsembleSpec,
    InconsistencyError,
    Matrix,
    chain_condition,
    inverse_nonneg_oracle,
    is_h_dd,
    jacobi_oracle,
    jacobi_spectral_radius,
    non_sdd_rows,
    random_dd_matrix,
)
from ddh.oracle import RandomStream, derive_seed


@dataclass
class HuntConfig:
    count: int = 2000
    band: float = 1e-6
    order: int = 6
    seed: int = 0


def graded_matrix(cfg: HuntConfig, k: int) -> Matrix:
    """Dominant matrix whose magnitudes span ~9 orders of magnitude.

    Start from the standard ensemble and shrink each off-diagonal by a
    random power of two, then re-balance the diagonal; wide grading makes
    tiny dominance margins (and hence boundary instances) far more likely
    than the plain ensemble does.
    """
    base = random_dd_matrix(
        EnsembleSpec(n=cfg.order, density=0.7, equality_rows=0.8,
                     seed=derive_seed(cfg.seed, k))
    )
    rng = RandomStream(derive_seed(cfg.seed ^ 0xBEEF, k))
    entries = base.entries.copy()
    n = cfg.order
    for i in range(n):
        for j in range(n):
            if i != j and entries[i, j] != 0.0:
                entries[i, j] *= 2.0 ** -(rng.next_u64() % 31)
    for i in range(n):
        row = 0.0
        for j in range(n):
            if j != i:
                row += abs(entries[i, j])
        strict = (base.diagonal_modulus[i] - base.deleted_row_sums[i]) > 0.0
        entries[i, i] = row + (2.0 ** -(rng.next_u64() % 31) if strict else 0.0)
    return Matrix(entries)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=2000)
    parser.add_argument("--band", type=float, default=1e-6)
    parser.add_argument("--order", type=int, default=6)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    cfg = HuntConfig(count=args.count, band=args.band, order=args.order, seed=args.seed)

    in_band = 0
    scaling_failures = 0
    band_splits = 0
    graded_splits = 0
    for k in range(cfg.count):
        A = graded_matrix(cfg, k)
        T = non_sdd_rows(A)
        exact = (
            chain_condition(A).holds
            and bool((A.diagonal_modulus > 0.0).all())
            and not T.is_full
        )
        rho = jacobi_spectral_radius(A)
        banded = rho is not None and abs(rho - 1.0) <= cfg.band
        try:
            peel = is_h_dd(A).is_h
        except InconsistencyError:
            # exact verdict is H, but the scaling solve hit the global
            # pivot threshold; with heavily row-graded entries this can
            # happen even when rho is far from 1
            peel = None
            scaling_failures += 1
        if peel is not None:
            assert peel == exact, f"exact mismatch at k={k}"  # never expected
        inv = inverse_nonneg_oracle(A)
        if banded:
            in_band += 1
            if inv != exact or jacobi_oracle(A) != exact:
                band_splits += 1
                print(f"  band instance k={k}: exact={exact} rho={rho!r} "
                      f"inverse={inv}{' (scaling failed)' if peel is None else ''}")
        elif inv != exact or peel is None:
            graded_splits += 1
            print(f"  graded instance k={k}: exact={exact} rho={rho!r} "
                  f"inverse={inv}{' (scaling failed)' if peel is None else ''}")

    print(f"\n{cfg.count} graded matrices, order {cfg.order}: "
          f"{in_band} inside |rho-1|<={cfg.band:g} with {band_splits} oracle/exact "
          f"splits; {graded_splits} splits outside the band from row grading; "
          f"{scaling_failures} scaling solve failures")
    print("the structural verdict (chain / peel) never disagreed with itself; "
          "every split above is a floating-point oracle artifact")
    return 0


if __name__ == "__main__":
    sys.exit(main())
