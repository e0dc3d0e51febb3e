"""Brute-force reference dynamics on truncated Fock spaces.

Nothing here uses the closed-form branch formulas of :mod:`kerrjc.model`.
Hamiltonians are assembled from ladder-operator matrix elements and states
are propagated with ``exp(-iHT)`` via Hermitian eigendecomposition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from ._matrix import HermitianMatrix
from .errors import CutoffError, DimensionError, ParameterError
from .model import AmplitudeSet, ModelParams

__all__ = [
    "HermitianMatrix", "StateVector", "subspace_basis", "build_subspace_hamiltonian",
    "build_truncated_hamiltonian", "evolve", "amplitudes_oracle", "subspace_leakage",
    "default_cutoffs",
]

UP, DOWN = "up", "down"
NORM_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray
    basis_labels: tuple

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).ravel()
        amps.flags.writeable = False
        labels = tuple(tuple(lab) for lab in self.basis_labels)
        if len(labels) != amps.size:
            raise DimensionError(f"{amps.size} amplitudes but {len(labels)} basis labels")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_ATOL:
            raise ParameterError("amplitudes", f"state is not normalized (norm {norm!r})")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "basis_labels", labels)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def index(self, label) -> int:
        return self.basis_labels.index(tuple(label))


def _energy(m1, m2, level, zeta):
    # diagonal of H/omega: photon number + sigma_z + Kerr a^+2 a^2
    s = 1 if level == UP else -1
    return m1 + m2 + s + zeta * (m1 * (m1 - 1) + m2 * (m2 - 1))


def subspace_basis(params: ModelParams):
    n1, n2 = params.n1, params.n2
    return ((n1, n2, UP), (n1, n2, DOWN), (n1 + 1, n2 + 1, DOWN), (n1 - 1, n2 - 1, UP))


def build_subspace_hamiltonian(params: ModelParams) -> HermitianMatrix:
    """4x4 Hamiltonian (units of omega) on the invariant subspace.

    The fourth basis state ``|n1-1, n2-1, up>`` is unphysical when either
    mode starts empty; it is then kept as a decoupled placeholder.
    """
    basis = subspace_basis(params)
    h = np.zeros((4, 4), dtype=complex)
    for i, (m1, m2, level) in enumerate(basis):
        h[i, i] = _energy(m1, m2, level, params.zeta)
    n1, n2, eta = params.n1, params.n2, params.eta
    # <m1+1, m2+1, down| a1^+ a2^+ sigma_- |m1, m2, up> = sqrt((m1+1)(m2+1))
    h[0, 2] = h[2, 0] = eta * math.sqrt((n1 + 1) * (n2 + 1))
    if n1 > 0 and n2 > 0:
        h[1, 3] = h[3, 1] = eta * math.sqrt(n1 * n2)
    return HermitianMatrix(h)


def _ladder(cutoff):
    """Annihilation operator on {0..cutoff}."""
    return sp.diags(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), 1, format="csr")


def full_basis(cutoff1, cutoff2):
    """Labels of the truncated product basis, mode 1 slowest, atom fastest."""
    return tuple((m1, m2, level) for m1 in range(cutoff1 + 1)
                 for m2 in range(cutoff2 + 1) for level in (UP, DOWN))


def build_truncated_hamiltonian(params: ModelParams, cutoff1: int, cutoff2: int) -> HermitianMatrix:
    """Sparse Hamiltonian on {0..cutoff1} x {0..cutoff2} x {up, down}."""
    if cutoff1 < params.n1 + 2:
        raise CutoffError("cutoff1", f"need >= n1 + 2 = {params.n1 + 2}, got {cutoff1}")
    if cutoff2 < params.n2 + 2:
        raise CutoffError("cutoff2", f"need >= n2 + 2 = {params.n2 + 2}, got {cutoff2}")
    a1, a2 = _ladder(cutoff1), _ladder(cutoff2)
    i1, i2 = sp.identity(cutoff1 + 1, format="csr"), sp.identity(cutoff2 + 1, format="csr")
    i_atom = sp.identity(2, format="csr")
    sz = sp.csr_matrix(np.diag([1.0, -1.0]))
    s_plus = sp.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def kron3(x, y, z):
        return sp.kron(sp.kron(x, y, format="csr"), z, format="csr")

    num1 = a1.T @ a1
    num2 = a2.T @ a2
    kerr1 = (a1.T @ a1.T) @ (a1 @ a1)
    kerr2 = (a2.T @ a2.T) @ (a2 @ a2)
    h = (kron3(num1, i2, i_atom) + kron3(i1, num2, i_atom) + kron3(i1, i2, sz)
         + params.zeta * (kron3(kerr1, i2, i_atom) + kron3(i1, kerr2, i_atom)))
    coupling = kron3(a1, a2, s_plus)
    h = h + params.eta * (coupling + coupling.T)
    h = sp.csr_matrix(h, dtype=complex)
    h.eliminate_zeros()
    return HermitianMatrix(h)


def _blocks(h, support):
    """Index sets of the connected components of ``h`` that touch ``support``."""
    if not sp.issparse(h):
        return _dense_blocks(np.asarray(h), support)
    pattern = abs(sp.csr_matrix(h))
    pattern.eliminate_zeros()
    _, labels = connected_components(pattern, directed=False)
    wanted = np.unique(labels[support])
    return [np.flatnonzero(labels == lab) for lab in wanted]


def _dense_blocks(h, support):
    # breadth-first search over the nonzero pattern; cheap for small dense H
    linked = h != 0
    seen = set()
    blocks = []
    for start in support:
        start = int(start)
        if start in seen:
            continue
        block, frontier = {start}, [start]
        while frontier:
            i = frontier.pop()
            for j in np.flatnonzero(linked[i]):
                j = int(j)
                if j not in block:
                    block.add(j)
                    frontier.append(j)
        seen |= block
        blocks.append(np.array(sorted(block)))
    return blocks


def evolve(h: HermitianMatrix, psi0: StateVector, t_scaled: float) -> StateVector:
    """``exp(-i H T) psi0`` by eigendecomposition.

    ``H`` is split into its connected (block-diagonal) components first, and
    only components carrying amplitude are diagonalized; this is exact and
    keeps the large truncated spaces tractable.
    """
    if h.dim != psi0.dim:
        raise DimensionError(f"Hamiltonian dim {h.dim} != state dim {psi0.dim}")
    if t_scaled == 0:
        return psi0
    psi = psi0.amplitudes
    out = np.zeros_like(psi)
    support = np.flatnonzero(psi)
    for idx in _blocks(h.entries, support):
        if h.is_sparse:
            block = h.entries[idx][:, idx].toarray()
        else:
            block = np.asarray(h.entries)[np.ix_(idx, idx)]
        w, v = np.linalg.eigh(block)
        out[idx] = v @ (np.exp(-1j * w * t_scaled) * (v.conj().T @ psi[idx]))
    return StateVector(out, psi0.basis_labels)


def initial_state(params: ModelParams, basis) -> StateVector:
    n1, n2 = params.n1, params.n2
    psi = np.zeros(len(basis), dtype=complex)
    psi[basis.index((n1, n2, UP))] = math.cos(params.theta)
    psi[basis.index((n1, n2, DOWN))] = math.sin(params.theta)
    return StateVector(psi, basis)


def amplitudes_oracle(params: ModelParams, t_scaled: float) -> AmplitudeSet:
    basis = subspace_basis(params)
    psi = evolve(build_subspace_hamiltonian(params), initial_state(params, basis), t_scaled)
    a, b, c, d = (complex(z) for z in psi.amplitudes)
    return AmplitudeSet(a, b, c, d, float(t_scaled))


def default_cutoffs(params: ModelParams):
    return params.n1 + 3, params.n2 + 3


def subspace_leakage(params: ModelParams, t_scaled: float, cutoff1=None, cutoff2=None) -> float:
    """Probability found outside the four-state subspace after full evolution."""
    d1, d2 = default_cutoffs(params)
    cutoff1 = d1 if cutoff1 is None else cutoff1
    cutoff2 = d2 if cutoff2 is None else cutoff2
    h = build_truncated_hamiltonian(params, cutoff1, cutoff2)
    basis = full_basis(cutoff1, cutoff2)
    psi = evolve(h, initial_state(params, basis), t_scaled)
    # placeholder label (-1, -1, up) is absent from the truncated basis
    inside = {lab for lab in subspace_basis(params) if min(lab[0], lab[1]) >= 0}
    mask = np.array([lab not in inside for lab in basis])
    return float(np.sum(np.abs(psi.amplitudes[mask]) ** 2))
