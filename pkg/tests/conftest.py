import math

import numpy as np
import pytest

from kerrjc import _kernels
from kerrjc.validate import random_draws

BACKENDS = ["python"] + (["cython"] if _kernels.BACKEND == "cython" else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def draws():
    """The seeded 100-point suite shared by the property tests."""
    return random_draws(42, 100)


def rk4_evolve(h, psi0, t, step=1e-4):
    """Fixed-step classical Runge-Kutta for i dpsi/dT = H psi."""
    h = np.asarray(h, dtype=complex)
    psi = np.asarray(psi0, dtype=complex).copy()
    n = max(1, int(round(t / step)))
    dt = t / n

    def f(y):
        return -1j * (h @ y)

    for _ in range(n):
        k1 = f(psi)
        k2 = f(psi + 0.5 * dt * k1)
        k3 = f(psi + 0.5 * dt * k2)
        k4 = f(psi + dt * k3)
        psi = psi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return psi


SQ2 = math.sqrt(2.0)


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one verdict line per criterion; the lines are echoed after the run."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(number, ok, detail):
        lines.append(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        print(lines[-1])
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
