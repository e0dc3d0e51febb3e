"""Entanglement dynamics of two cavity modes coupled to a two-level atom in a Kerr medium."""
from ._kernels import BACKEND
from .entanglement import (ModeDensityMatrix, NegativityResult, hermitian_eigenvalues, mode_density,
                           negativity, negativity_closed_form, partial_transpose)
from .errors import (ConvergenceError, CutoffError, DegenerateBranchError, DimensionError,
                     KerrJCError, NonHermitianError, ParameterError)
from .model import (AmplitudeSet, BranchParams, ModelParams, amplitudes, branch_excited,
                    branch_ground, printed_amplitudes)
from .oracle import (HermitianMatrix, StateVector, amplitudes_oracle, build_subspace_hamiltonian,
                     build_truncated_hamiltonian, evolve, subspace_leakage)

__version__ = "0.1.0"
