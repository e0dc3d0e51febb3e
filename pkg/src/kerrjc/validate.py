"""Seeded invariant suite run by ``kerrjc validate``."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .entanglement import (density_defects, hermitian_eigenvalues, mode_density, negativity,
                           negativity_closed_form, partial_transpose)
from .model import ModelParams, amplitudes, branch_excited, branch_ground
from .oracle import (HermitianMatrix, StateVector, amplitudes_oracle, build_subspace_hamiltonian, evolve,
                     subspace_leakage)


def random_draw(rng):
    """One (params, T) from the standard test ranges."""
    params = ModelParams(n1=int(rng.integers(0, 101)), n2=int(rng.integers(0, 101)),
                         theta=float(rng.uniform(0.0, math.pi)), eta=float(rng.uniform(0.0, 5.0)),
                         zeta=float(rng.uniform(-20.0, 20.0)))
    return params, float(rng.uniform(0.0, 10.0))


def random_draws(seed, count):
    rng = np.random.default_rng(seed)
    return [random_draw(rng) for _ in range(count)]


def random_hermitian(rng, n, scale=1.0):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (m + m.conj().T) / 2


def faulty_amplitudes(params, t):
    """Closed form with the sign of the ground-branch coupling flipped."""
    amps = amplitudes(params, t)
    return replace(amps, d=-amps.d)


@dataclass(frozen=True)
class Check:
    name: str
    violation: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.violation <= self.tol


def _amp_gap(x, y):
    return max(abs(p - q) for p, q in zip(x.as_tuple(), y.as_tuple()))


def run_suite(seed: int = 42, draws: int = 100, amplitude_fn=amplitudes):
    if draws < 1:
        raise ValueError("need at least one draw")
    rng = np.random.default_rng(seed)
    cases = [random_draw(rng) for _ in range(draws)]
    v = {k: 0.0 for k in ("normalization", "initial", "oracle", "branch", "unitarity",
                          "composition", "leakage", "hermiticity", "trace", "psd", "rank",
                          "sparsity", "eig_vs_closed", "bound", "period", "zeros",
                          "symmetry", "eig_sums", "pt_involution")}

    for params, t in cases:
        amps = amplitude_fn(params, t)
        v["normalization"] = max(v["normalization"], abs(amps.norm_sq() - 1.0))
        a0 = amplitude_fn(params, 0.0)
        v["initial"] = max(v["initial"], _amp_gap(
            a0, replace(a0, a=math.cos(params.theta), b=math.sin(params.theta), c=0j, d=0j)))
        v["oracle"] = max(v["oracle"], _amp_gap(amps, amplitudes_oracle(params, t)))

        h = build_subspace_hamiltonian(params).dense()
        for branch, (i, j) in ((branch_excited(params), (0, 2)), (branch_ground(params), (1, 3))):
            w = np.linalg.eigvalsh(h[np.ix_([i, j], [i, j])])
            half_gap = (w[1] - w[0]) / 2
            v["branch"] = max(v["branch"], abs(half_gap - branch.omega_r) / max(1.0, branch.omega_r))

        rho = mode_density(amps, params.n1, params.n2)
        for key, val in density_defects(rho).items():
            key = "rank" if key == "rank3" else key
            v[key] = max(v[key], val)
        res = negativity(rho)
        v["eig_vs_closed"] = max(v["eig_vs_closed"], res.eigen_closed_gap)
        v["bound"] = max(v["bound"], res.value - 0.5)
        v["symmetry"] = max(v["symmetry"], abs(negativity(rho, mode=2).value - res.value))
        pt = partial_transpose(partial_transpose(rho).dense())
        v["pt_involution"] = max(v["pt_involution"], float(np.max(np.abs(pt.dense() - rho.entries))))

        shifted = negativity_closed_form(amplitude_fn(params.replace(theta=params.theta + math.pi / 2), t))
        v["period"] = max(v["period"], abs(shifted - res.value))
        for zero in (params.replace(theta=0.0), params.replace(theta=math.pi / 2), params.replace(eta=0.0)):
            v["zeros"] = max(v["zeros"], negativity_closed_form(amplitude_fn(zero, t)))

    # unitarity / composition on random Hermitian generators
    for _ in range(max(1, draws // 10)):
        n = int(rng.integers(2, 10))
        h = HermitianMatrix(random_hermitian(rng, n, scale=3.0))
        psi = rng.normal(size=n) + 1j * rng.normal(size=n)
        psi0 = StateVector(psi / np.linalg.norm(psi), [(i, 0, "up") for i in range(n)])
        t1, t2 = rng.uniform(0, 10, size=2)
        once = evolve(h, psi0, t1)
        v["unitarity"] = max(v["unitarity"], abs(np.linalg.norm(once.amplitudes) - 1.0))
        twice = evolve(h, once, t2)
        direct = evolve(h, psi0, t1 + t2)
        v["composition"] = max(v["composition"], float(np.max(np.abs(twice.amplitudes - direct.amplitudes))))
        m = random_hermitian(rng, n)
        eigs = np.array(hermitian_eigenvalues(m))
        v["eig_sums"] = max(v["eig_sums"], abs(eigs.sum() - np.trace(m).real),
                            abs(np.sum(eigs ** 2) - np.sum(np.abs(m) ** 2)))

    for params, t in cases[: max(1, draws // 4)]:
        v["leakage"] = max(v["leakage"], subspace_leakage(params, t))

    tols = {"normalization": 1e-12, "initial": 1e-15, "oracle": 1e-8, "branch": 1e-10,
            "unitarity": 1e-12, "composition": 1e-10, "leakage": 1e-10, "hermiticity": 1e-12,
            "trace": 1e-12, "psd": 1e-10, "rank": 1e-10, "sparsity": 0.0,
            "eig_vs_closed": 1e-10, "bound": 1e-10, "period": 1e-12, "zeros": 1e-12,
            "symmetry": 1e-10, "eig_sums": 1e-10, "pt_involution": 0.0}
    return [Check(name, float(v[name]), tols[name]) for name in v]
