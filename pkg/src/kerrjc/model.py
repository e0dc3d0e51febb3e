"""Physical parameters and the closed-form four-amplitude evolution.

All quantities are in units of the common mode frequency: the coupling is
``eta = lambda / omega``, the Kerr coefficient ``zeta = chi / omega`` and
time is the scaled time ``T = omega * t``. Both modes share one frequency
and the atomic transition is resonant with their sum.

The dynamics split into two independent two-level branches:

* excited branch ``|n1, n2, up>  <-> |n1+1, n2+1, down>`` (amplitudes a, c)
* ground branch  ``|n1, n2, down> <-> |n1-1, n2-1, up>``  (amplitudes b, d)

Each branch is a 2x2 Hamiltonian ``gamma + delta*sz + g*sx`` whose
propagator is written out explicitly in :func:`amplitudes`.
"""
from __future__ import annotations

import cmath
import math
import numbers
from dataclasses import dataclass

from .errors import DegenerateBranchError, ParameterError

# below this |Omega*T| the ratio sin(Omega*T)/Omega uses its Taylor form
_SINC_SWITCH = 1e-8


def _check_count(name, value):
    if isinstance(value, bool):
        raise ParameterError(name, f"photon number must be an integer, got {value!r}")
    if not isinstance(value, numbers.Integral):
        if isinstance(value, numbers.Real) and float(value).is_integer():
            value = int(value)
        else:
            raise ParameterError(name, f"photon number must be an integer, got {value!r}")
    value = int(value)
    if value < 0:
        raise ParameterError(name, f"photon number must be >= 0, got {value}")
    return value


def _check_real(name, value):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ParameterError(name, f"must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ParameterError(name, f"must be finite, got {value}")
    return value


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless configuration of the atom + two-mode field system.

    Parameters
    ----------
    n1, n2 : int
        Initial Fock numbers of the two modes.
    theta : float
        Atomic superposition angle; the initial state is
        ``cos(theta)|n1,n2,up> + sin(theta)|n1,n2,down>``.
    eta : float
        Scaled atom-field coupling, must be >= 0.
    zeta : float
        Scaled Kerr coefficient (either sign).
    """

    n1: int
    n2: int
    theta: float
    eta: float
    zeta: float

    def __post_init__(self):
        object.__setattr__(self, "n1", _check_count("n1", self.n1))
        object.__setattr__(self, "n2", _check_count("n2", self.n2))
        object.__setattr__(self, "theta", _check_real("theta", self.theta))
        object.__setattr__(self, "eta", _check_real("eta", self.eta))
        object.__setattr__(self, "zeta", _check_real("zeta", self.zeta))
        if self.eta < 0:
            raise ParameterError("eta", f"coupling must be >= 0, got {self.eta}")

    def replace(self, **changes) -> "ModelParams":
        fields = {k: getattr(self, k) for k in ("n1", "n2", "theta", "eta", "zeta")}
        fields.update(changes)
        return ModelParams(**fields)


@dataclass(frozen=True)
class BranchParams:
    """Two-level Rabi data of one branch.

    ``gamma`` is the mean energy, ``delta`` half the energy difference of the
    two coupled states (first minus second), ``g`` the coupling and
    ``omega_r = sqrt(delta**2 + g**2)``.
    """

    gamma: float
    delta: float
    g: float
    omega_r: float

    @classmethod
    def from_parts(cls, gamma, delta, g):
        return cls(gamma, delta, g, math.hypot(delta, g))


@dataclass(frozen=True)
class AmplitudeSet:
    """State amplitudes on the invariant four-state subspace at time ``t_scaled``.

    a: ``|n1, n2, up>``, b: ``|n1, n2, down>``,
    c: ``|n1+1, n2+1, down>``, d: ``|n1-1, n2-1, up>``.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    t_scaled: float

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    def norm_sq(self) -> float:
        return sum(abs(z) ** 2 for z in self.as_tuple())


@dataclass(frozen=True)
class PrintedAmplitudes(AmplitudeSet):
    """Amplitudes from the as-printed formulas; not normalized in general."""

    norm_defect: float = 0.0


def branch_excited(params: ModelParams) -> BranchParams:
    n1, n2, eta, zeta = params.n1, params.n2, params.eta, params.zeta
    gamma = 1 + n1 + n2 + zeta * (n1 * n1 + n2 * n2)
    delta = -zeta * (n1 + n2)
    g = eta * math.sqrt((1 + n1) * (1 + n2))
    return BranchParams.from_parts(gamma, delta, g)


def branch_ground(params: ModelParams) -> BranchParams:
    n1, n2, eta, zeta = params.n1, params.n2, params.eta, params.zeta
    gamma = (-1 + 2 * zeta + (1 - 2 * zeta) * n1 + zeta * n1 * n1
             + n2 + zeta * (n2 - 2) * n2)
    delta = zeta * (n1 + n2 - 2)
    g = eta * math.sqrt(n1 * n2)
    return BranchParams.from_parts(gamma, delta, g)


def _sin_over(omega, t):
    """sin(omega*t)/omega, continuous through omega -> 0."""
    x = omega * t
    if abs(x) < _SINC_SWITCH:
        return t * (1.0 - x * x / 6.0)
    return math.sin(x) / omega


def _propagate(branch: BranchParams, t):
    """Return (stay, transfer) amplitudes of a branch started in its first state."""
    phase = cmath.exp(-1j * branch.gamma * t)
    if branch.omega_r == 0.0:
        # omega_r == 0 forces delta == g == 0
        return phase, 0j
    so = _sin_over(branch.omega_r, t)
    stay = phase * complex(math.cos(branch.omega_r * t), -branch.delta * so)
    transfer = phase * complex(0.0, -branch.g * so)
    return stay, transfer


def amplitudes(params: ModelParams, t_scaled: float) -> AmplitudeSet:
    """Exact amplitudes ``(a, b, c, d)`` at scaled time ``t_scaled``."""
    t = _check_real("T", t_scaled)
    ct, st = math.cos(params.theta), math.sin(params.theta)
    a, c = _propagate(branch_excited(params), t)
    b, d = _propagate(branch_ground(params), t)
    return AmplitudeSet(a * ct, b * st, c * ct, d * st, t)


def printed_amplitudes(params: ModelParams, t_scaled: float) -> PrintedAmplitudes:
    """Evaluate the closed form exactly as originally typeset.

    This keeps two known misprints: the ``n2**3`` Kerr term inside ``xi1``
    and the missing ``exp(2*T*xi1) - 1`` factor in ``c``. It exists for
    auditing only; use :func:`amplitudes` for physics.

    ``xi2 == 0`` is a removable singularity of the printed ``b`` and ``d``
    and is evaluated as the limit. ``xi1 == 0`` is not removable (the printed
    ``c`` is proportional to ``1/xi1``) and raises
    :class:`DegenerateBranchError`.
    """
    t = _check_real("T", t_scaled)
    n1, n2, eta, zeta = params.n1, params.n2, params.eta, params.zeta
    ct, st = math.cos(params.theta), math.sin(params.theta)
    g1 = 1 + n1 + n2 + zeta * (n1 ** 2 + n2 ** 2)
    g2 = -1 + 2 * zeta + (1 - 2 * zeta) * n1 + zeta * n1 ** 2 + n2 + zeta * (n2 - 2) * n2
    xi1 = cmath.sqrt(-eta ** 2 - zeta ** 2 * n1 ** 2 - n2 * (eta ** 2 + zeta ** 2 * n2 ** 2)
                     - n1 * (eta ** 2 * (1 + n2) + 2 * zeta ** 2 * n2))
    xi2 = cmath.sqrt(-zeta ** 2 * n1 ** 2 - zeta ** 2 * (n2 - 2) ** 2
                     + n1 * (4 * zeta ** 2 - n2 * eta ** 2 - 2 * zeta ** 2 * n2))
    if xi1 == 0:
        raise DegenerateBranchError("printed form is singular: xi1 = 0")

    e1 = cmath.exp(-t * (1j * g1 + xi1))
    a = e1 * ct * (1j * (cmath.exp(2 * t * xi1) - 1) * zeta * (n1 + n2)
                   + xi1 * (cmath.exp(2 * t * xi1) + 1)) / (2 * xi1)
    c = -(1j * e1 * eta * ct * math.sqrt((1 + n1) * (1 + n2))) / (2 * xi1)

    if xi2 == 0:
        e2 = cmath.exp(-1j * g2 * t)
        b = e2 * st * (1 - 1j * t * zeta * (n1 + n2 - 2))
        d = -1j * e2 * eta * st * t * math.sqrt(n1 * n2)
    else:
        e2 = cmath.exp(-t * (1j * g2 + xi2))
        b = e2 * st * (-1j * (cmath.exp(2 * t * xi2) - 1) * zeta * (n1 + n2 - 2)
                       + xi2 * (cmath.exp(2 * t * xi2) + 1)) / (2 * xi2)
        d = -(1j * e2 * eta * st * (cmath.exp(2 * t * xi2) - 1) * math.sqrt(n1 * n2)) / (2 * xi2)

    norm_sq = abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2 + abs(d) ** 2
    return PrintedAmplitudes(a, b, c, d, t, norm_defect=abs(norm_sq - 1.0))
