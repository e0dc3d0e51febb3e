"""Reduced two-mode density matrix, partial transpose and negativity.

Each mode is confined to the three Fock values ``n-1, n, n+1``; the
flattened two-mode index is ``k = 3*alpha + beta`` where mode 1 holds
``n1 - 1 + alpha`` photons and mode 2 holds ``n2 - 1 + beta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from ._matrix import HermitianMatrix, hermiticity_defect
from .errors import ConvergenceError, NonHermitianError
from .model import AmplitudeSet

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
EIG_HERMITIAN_ATOL = 1e-10
PSD_ATOL = 1e-10

# flattened positions of |n1-1,n2-1>, |n1,n2>, |n1+1,n2+1>
LOW, MID, HIGH = 0, 4, 8


@dataclass(frozen=True, eq=False)
class ModeDensityMatrix:
    entries: np.ndarray
    n1: int
    n2: int
    amplitudes: Optional[AmplitudeSet] = None

    def trace(self) -> float:
        return float(np.trace(self.entries).real)


@dataclass(frozen=True)
class NegativityResult:
    value: float
    pt_eigenvalues: tuple
    closed_form_value: float
    eigen_closed_gap: float


def mode_density(amps: AmplitudeSet, n1: int = 0, n2: int = 0) -> ModeDensityMatrix:
    """Trace out the atom from the four-amplitude state.

    The up-atom part is ``a|n1,n2> + d|n1-1,n2-1>`` and the down-atom part
    ``b|n1,n2> + c|n1+1,n2+1>``; they add incoherently.
    """
    a, b, c, d = amps.as_tuple()
    rho = np.zeros((9, 9), dtype=complex)
    rho[LOW, LOW] = abs(d) ** 2
    rho[MID, MID] = abs(a) ** 2 + abs(b) ** 2
    rho[HIGH, HIGH] = abs(c) ** 2
    rho[LOW, MID] = d * a.conjugate()
    rho[MID, LOW] = a * d.conjugate()
    rho[MID, HIGH] = b * c.conjugate()
    rho[HIGH, MID] = c * b.conjugate()
    return ModeDensityMatrix(rho, n1, n2, amps)


def partial_transpose(rho, mode: int = 1) -> HermitianMatrix:
    """Transpose the indices of one mode (1 or 2) of a 3x3 two-mode matrix."""
    m = rho.entries if isinstance(rho, ModeDensityMatrix) else np.asarray(rho)
    r4 = np.asarray(m, dtype=complex).reshape(3, 3, 3, 3)  # [a1, b1, a2, b2]
    if mode == 1:
        out = r4.transpose(2, 1, 0, 3)
    elif mode == 2:
        out = r4.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"mode must be 1 or 2, got {mode!r}")
    return HermitianMatrix(out.reshape(9, 9))


def hermitian_eigenvalues(m, backend=None) -> list:
    """Ascending eigenvalues by cyclic Jacobi rotations.

    Converges when the off-diagonal Frobenius norm drops below
    ``1e-13 * ||m||_F``; gives up after 100 sweeps.
    """
    entries = m.dense() if isinstance(m, HermitianMatrix) else np.asarray(m, dtype=complex)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise NonHermitianError(f"expected a square matrix, got shape {entries.shape}")
    defect = hermiticity_defect(entries)
    if not defect <= EIG_HERMITIAN_ATOL:
        raise NonHermitianError(f"matrix is not Hermitian (defect {defect:.3g})")
    eigs, sweeps = _kernels.jacobi_eigenvalues(entries, JACOBI_TOL, JACOBI_MAX_SWEEPS, backend)
    if eigs is None:
        raise ConvergenceError(f"Jacobi iteration did not converge in {sweeps} sweeps")
    return list(eigs)


def negativity_closed_form(amps: AmplitudeSet) -> float:
    """|a d| + |b c|: the partial transpose splits into two 2x2 blocks."""
    return abs(amps.a) * abs(amps.d) + abs(amps.b) * abs(amps.c)


def negativity(rho: ModeDensityMatrix, mode: int = 1, backend=None) -> NegativityResult:
    eigs = hermitian_eigenvalues(partial_transpose(rho, mode), backend=backend)
    value = math.fsum(-x for x in eigs if x < 0.0)
    if rho.amplitudes is not None:
        closed = negativity_closed_form(rho.amplitudes)
        gap = abs(value - closed)
    else:
        closed = gap = math.nan
    return NegativityResult(value, tuple(eigs), closed, gap)


def density_defects(rho: ModeDensityMatrix) -> dict:
    """Deviations of ``rho`` from the properties every reduced state must have.

    Keys: hermiticity, trace, psd (most negative eigenvalue clipped at 0,
    reported positive), rank3 (third-largest eigenvalue) and sparsity
    (largest entry outside the allowed pattern).
    """
    m = rho.entries
    eigs = hermitian_eigenvalues(m)
    allowed = np.zeros((9, 9), dtype=bool)
    for i, j in [(LOW, LOW), (MID, MID), (HIGH, HIGH), (LOW, MID), (MID, LOW),
                 (MID, HIGH), (HIGH, MID)]:
        allowed[i, j] = True
    return {
        "hermiticity": hermiticity_defect(m),
        "trace": abs(rho.trace() - 1.0),
        "psd": max(0.0, -eigs[0]),
        "rank3": max(0.0, eigs[-3]),
        "sparsity": float(np.max(np.abs(m[~allowed]))),
    }
