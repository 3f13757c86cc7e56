"""Ground-truth machinery: dense LU, H-matrix oracles, matrix ensembles.

Two independent oracles decide H-status without the dominance theory:

* ``inverse_nonneg_oracle`` inverts the comparison matrix and checks the
  inverse is entrywise nonnegative (the normative test), and
* ``jacobi_oracle`` estimates the spectral radius of the point-Jacobi
  iteration matrix and requires it below one (a consistency witness).

The ensemble generator uses an explicitly specified 64-bit mixing
generator (splitmix64, constants in the README) so ensembles are
reproducible from a seed alone.  Magnitudes are dyadic multiples of
2^-30, which keeps every row sum, split row sum and dominance comparison
exact in double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import InconsistencyError, Matrix, comparison_matrix

#: per-column residual bound for lu_solve: ||M x - b||_inf <= RTOL ||M||_inf ||x||_inf
LU_RESIDUAL_RTOL = 1e-9
#: a pivot below PIVOT_RTOL * max |initial entry| declares singularity
PIVOT_RTOL = 1e-12
#: inverse entries may undershoot zero by this fraction of ||inverse||_inf
INVERSE_TOL = 1e-9
#: jacobi_oracle demands rho < 1 - JACOBI_MARGIN
JACOBI_MARGIN = 1e-9
#: |rho - 1| <= JACOBI_BAND is the do-not-adjudicate boundary band
JACOBI_BAND = 1e-6


@dataclass(frozen=True, eq=False)
class LuFactorization:
    """Packed L\\U factors with the row permutation applied during pivoting."""

    factors: np.ndarray
    pivots: np.ndarray
    singular: bool
    pivot_threshold: float


def _norm_inf(M: np.ndarray) -> float:
    if M.ndim == 1:
        return float(np.max(np.abs(M))) if M.size else 0.0
    return float(np.max(np.sum(np.abs(M), axis=1))) if M.size else 0.0


def lu_factor(M) -> LuFactorization:
    """LU with partial pivoting; flags singularity instead of raising."""
    a = np.array(M, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("lu_factor expects a square real matrix")
    n = a.shape[0]
    pivots = np.arange(n)
    threshold = PIVOT_RTOL * float(np.max(np.abs(a))) if a.size else 0.0
    singular = False
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        pivot = a[p, k]
        if pivot == 0.0 or abs(pivot) < threshold:
            singular = True
            break
        if p != k:
            a[[k, p], :] = a[[p, k], :]
            pivots[[k, p]] = pivots[[p, k]]
        a[k + 1 :, k] /= a[k, k]
        a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    return LuFactorization(a, pivots, singular, threshold)


def _solve_factored(fac: LuFactorization, B: np.ndarray) -> np.ndarray:
    n = fac.factors.shape[0]
    y = B[fac.pivots].astype(np.float64, copy=True)
    for i in range(1, n):
        y[i] -= fac.factors[i, :i] @ y[:i]
    for i in range(n - 1, -1, -1):
        if i + 1 < n:
            y[i] -= fac.factors[i, i + 1 :] @ y[i + 1 :]
        y[i] /= fac.factors[i, i]
    return y


def lu_solve(M, B) -> np.ndarray | None:
    """Solve M X = B column by column; None when M is declared singular.

    Every solve is residual-checked; a violated bound means the
    factorization itself is broken and raises InconsistencyError.
    """
    a = np.asarray(M, dtype=np.float64)
    b = np.asarray(B, dtype=np.float64)
    one_dim = b.ndim == 1
    if one_dim:
        b = b[:, None]
    if b.shape[0] != a.shape[0]:
        raise ValueError("right-hand side length does not match matrix order")
    fac = lu_factor(a)
    if fac.singular:
        return None
    x = _solve_factored(fac, b)
    residual = np.abs(a @ x - b)
    norm_m = _norm_inf(a)
    for col in range(x.shape[1]):
        bound = LU_RESIDUAL_RTOL * norm_m * float(np.max(np.abs(x[:, col])))
        worst = float(np.max(residual[:, col])) if residual.size else 0.0
        if worst > bound:
            raise InconsistencyError(
                f"LU residual {worst:.3e} exceeds bound {bound:.3e}"
            )
    return x[:, 0] if one_dim else x


def inverse_nonneg_oracle(A: Matrix) -> bool:
    """H-status via the comparison matrix: nonsingular with inverse >= 0."""
    if (A.diagonal_modulus == 0.0).any():
        return False
    comp = comparison_matrix(A).entries
    inv = lu_solve(comp, np.eye(A.n))
    if inv is None:
        return False
    return float(np.min(inv)) >= -INVERSE_TOL * _norm_inf(inv)


def spectral_radius(B) -> float:
    """Spectral radius of an entrywise nonnegative matrix.

    Repeated squaring with per-step infinity-norm normalization:
    ``||B^(2^k)||_inf^(1/2^k)`` accumulated in log space for k up to 40.
    """
    b = np.asarray(B, dtype=np.float64)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise ValueError("spectral_radius expects a square matrix")
    if (b < 0.0).any():
        raise ValueError("spectral_radius expects entrywise nonnegative input")
    scale = _norm_inf(b)
    if scale == 0.0:
        return 0.0
    c = b / scale
    log_correction = 0.0
    for k in range(1, 41):
        c = c @ c
        s = _norm_inf(c)
        if s == 0.0:
            return 0.0  # nilpotent
        log_correction += math.log(s) / (1 << k)
        c = c / s
    return scale * math.exp(log_correction)


def jacobi_spectral_radius(A: Matrix) -> float | None:
    """rho of the point-Jacobi iteration matrix; None on a zero diagonal."""
    diag = A.diagonal_modulus
    if (diag == 0.0).any():
        return None
    J = A.modulus / diag[:, None]
    J = J.copy()
    np.fill_diagonal(J, 0.0)
    return spectral_radius(J)


def jacobi_oracle(A: Matrix) -> bool:
    """H-status via convergence of point-Jacobi on the comparison matrix."""
    rho = jacobi_spectral_radius(A)
    return rho is not None and rho < 1.0 - JACOBI_MARGIN


# ---------------------------------------------------------------------------
# Reproducible ensembles
# ---------------------------------------------------------------------------

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class RandomStream:
    """splitmix64: state advances by a fixed odd gamma, output is mixed state."""

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix64(self._state)

    def next_unit(self) -> float:
        """Dyadic value in (0, 1]: (top-30-bits + 1) / 2^30."""
        return ((self.next_u64() >> 34) + 1) / 1073741824.0


def derive_seed(seed: int, k: int) -> int:
    """Stable per-item seed for families of ensembles."""
    return _mix64((int(seed) + int(k) * _GAMMA) & _MASK64)


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters of one random diagonally dominant matrix."""

    n: int
    density: float
    equality_rows: float
    seed: int
    complex_entries: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ensemble order must be at least 1")
        if not (0.0 <= self.density <= 1.0):
            raise ValueError("density must lie in [0, 1]")
        if not (0.0 <= self.equality_rows <= 1.0):
            raise ValueError("equality_rows must lie in [0, 1]")


_PHASES = (1.0 + 0.0j, 0.0 + 1.0j, -1.0 + 0.0j, 0.0 - 1.0j)


def random_dd_matrix(spec: EnsembleSpec) -> Matrix:
    """Draw a diagonally dominant matrix; deterministic in the seed.

    Off-diagonal magnitudes are dyadic multiples of 2^-30 in (0, 1];
    complex mode multiplies them by an axis phase (1, i, -1, -i) so the
    magnitude stays bit-exact.  Each diagonal entry is set to its row sum
    (an equality row) or to the row sum plus a dyadic offset in about
    (0.1, 1] (a strict row), so generated matrices are exactly
    diagonally dominant at zero tolerance.

    Draw order (one splitmix64 stream seeded by ``spec.seed``): for each
    row i and column j != i in row-major order, one unit for pattern
    inclusion, then if included one unit for magnitude, then in complex
    mode one raw word for the phase; afterwards, per row, one unit for
    the equality decision and, for strict rows only, one unit for the
    offset.
    """
    rng = RandomStream(spec.seed)
    n = spec.n
    dtype = np.complex128 if spec.complex_entries else np.float64
    entries = np.zeros((n, n), dtype=dtype)
    magnitudes = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if rng.next_unit() <= spec.density:
                m = rng.next_unit()
                magnitudes[i, j] = m
                if spec.complex_entries:
                    entries[i, j] = m * _PHASES[rng.next_u64() & 3]
                else:
                    entries[i, j] = m
    for i in range(n):
        row_sum = 0.0
        for j in range(n):  # increasing column order, matching core row sums
            if j != i:
                row_sum += magnitudes[i, j]
        if rng.next_unit() <= spec.equality_rows:
            entries[i, i] = row_sum
        else:
            offset = round((0.1 + 0.9 * rng.next_unit()) * 1048576) / 1048576.0
            entries[i, i] = row_sum + offset
    return Matrix(entries)
