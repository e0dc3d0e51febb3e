from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import NonHermitianError

HERMITIAN_ATOL = 1e-12


def hermiticity_defect(entries) -> float:
    """max |H - H^dagger| for a dense or sparse matrix."""
    if sp.issparse(entries):
        diff = entries - entries.conj().T
        return float(abs(diff).max()) if diff.nnz else 0.0
    entries = np.asarray(entries)
    return float(np.max(np.abs(entries - entries.conj().T))) if entries.size else 0.0


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Square complex Hermitian matrix, dense (ndarray) or sparse (CSR).

    The entries are validated once at construction and then treated as
    read-only.
    """

    entries: object

    def __post_init__(self):
        m = self.entries
        if sp.issparse(m):
            m = sp.csr_matrix(m, dtype=complex)
        else:
            m = np.array(m, dtype=complex)
            if m.ndim != 2:
                raise NonHermitianError(f"expected a 2-D matrix, got ndim={m.ndim}")
            m.flags.writeable = False
        if m.shape[0] != m.shape[1]:
            raise NonHermitianError(f"matrix is not square: {m.shape}")
        defect = hermiticity_defect(m)
        if defect > HERMITIAN_ATOL:
            raise NonHermitianError(f"matrix is not Hermitian (defect {defect:.3g})")
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.entries)

    def dense(self) -> np.ndarray:
        if self.is_sparse:
            return self.entries.toarray()
        return np.array(self.entries)
