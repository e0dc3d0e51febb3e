# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: cyclic Jacobi eigenvalues and the batched closed-form negativity.

Both follow the pure-Python reference (``_jacobi_py`` and the
model -> mode_density -> partial_transpose -> negativity pipeline) step
for step.
"""
import numpy as np

from libc.math cimport sqrt, hypot, fabs, sin, cos
from libc.stdlib cimport malloc, free

cdef double SINC_SWITCH = 1e-8


cdef int _jacobi(double complex* w, Py_ssize_t n, double tol, int max_sweeps) noexcept nogil:
    """Diagonalize the Hermitian n x n row-major ``w`` in place.

    Returns the number of sweeps used, or -1 at the sweep cap.
    """
    cdef Py_ssize_t i, j, k, p, q
    cdef int sweep
    cdef double complex z, apq, eph, akp, akq, nkp, nkq
    cdef double fro2 = 0.0, off2, thresh, r, app, aqq, tau, t, c, s

    for i in range(n * n):
        z = w[i]
        fro2 += z.real * z.real + z.imag * z.imag
    thresh = tol * sqrt(fro2)

    for sweep in range(max_sweeps + 1):
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                z = w[i * n + j]
                off2 += 2.0 * (z.real * z.real + z.imag * z.imag)
        if sqrt(off2) <= thresh:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p * n + q]
                r = hypot(apq.real, apq.imag)
                if r == 0.0:
                    continue
                eph = apq.conjugate() / r
                app = w[p * n + p].real
                aqq = w[q * n + q].real
                tau = (aqq - app) / (2.0 * r)
                t = 1.0 / (fabs(tau) + hypot(1.0, tau))
                if tau < 0.0:
                    t = -t
                c = 1.0 / hypot(1.0, t)
                s = t * c
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = w[k * n + p]
                    akq = eph * w[k * n + q]
                    nkp = c * akp - s * akq
                    nkq = s * akp + c * akq
                    w[k * n + p] = nkp
                    w[p * n + k] = nkp.conjugate()
                    w[k * n + q] = nkq
                    w[q * n + k] = nkq.conjugate()
                w[p * n + p] = app - t * r
                w[q * n + q] = aqq + t * r
                w[p * n + q] = 0.0
                w[q * n + p] = 0.0
    return -1


def jacobi_eigenvalues(a, double tol, int max_sweeps):
    cdef double complex[:, ::1] src = a
    cdef Py_ssize_t n = src.shape[0]
    cdef double complex[:, ::1] w = np.empty((n, n), dtype=complex)
    cdef Py_ssize_t i, j
    cdef double complex z
    cdef int sweeps

    for i in range(n):
        w[i, i] = src[i, i].real
        for j in range(i + 1, n):
            z = 0.5 * (src[i, j] + src[j, i].conjugate())
            w[i, j] = z
            w[j, i] = z.conjugate()
    if n == 0:
        return [], 0
    sweeps = _jacobi(&w[0, 0], n, tol, max_sweeps)
    if sweeps < 0:
        return None, max_sweeps
    return sorted([w[i, i].real for i in range(n)]), sweeps


cdef inline double _sin_over(double omega, double t) noexcept nogil:
    cdef double x = omega * t
    if fabs(x) < SINC_SWITCH:
        return t * (1.0 - x * x / 6.0)
    return sin(x) / omega


cdef inline void _propagate(double gamma, double delta, double g, double t,
                            double complex* stay, double complex* transfer) noexcept nogil:
    cdef double omega = hypot(delta, g)
    cdef double complex phase = cos(gamma * t) - 1j * sin(gamma * t)
    cdef double so
    if omega == 0.0:
        stay[0] = phase
        transfer[0] = 0.0
        return
    so = _sin_over(omega, t)
    stay[0] = phase * (cos(omega * t) - 1j * delta * so)
    transfer[0] = phase * (-1j * g * so)


def negativity_batch(n1_in, n2_in, theta_in, eta_in, zeta_in, t_in, double tol, int max_sweeps):
    """Closed-form negativity at many points.

    Returns ``(eigen_path, closed_form, failed_index)``; ``failed_index`` is
    -1 unless a Jacobi solve hit the sweep cap.
    """
    cdef long[::1] n1 = np.ascontiguousarray(n1_in, dtype=np.int_)
    cdef long[::1] n2 = np.ascontiguousarray(n2_in, dtype=np.int_)
    cdef double[::1] theta = np.ascontiguousarray(theta_in, dtype=float)
    cdef double[::1] eta = np.ascontiguousarray(eta_in, dtype=float)
    cdef double[::1] zeta = np.ascontiguousarray(zeta_in, dtype=float)
    cdef double[::1] tt = np.ascontiguousarray(t_in, dtype=float)
    cdef Py_ssize_t m = n1.shape[0], i, k
    out_eig_arr = np.empty(m)
    out_cf_arr = np.empty(m)
    cdef double[::1] out_eig = out_eig_arr
    cdef double[::1] out_cf = out_cf_arr
    cdef double complex rho[81]
    cdef double complex pt[81]
    cdef double complex a, b, c, d
    cdef double ct, st, x1, x2, z, gam, neg, lam
    cdef int alpha1, beta1, alpha2, beta2
    cdef long failed = -1

    with nogil:
        for i in range(m):
            x1 = <double> n1[i]
            x2 = <double> n2[i]
            z = zeta[i]
            ct = cos(theta[i])
            st = sin(theta[i])
            _propagate(1 + x1 + x2 + z * (x1 * x1 + x2 * x2), -z * (x1 + x2),
                       eta[i] * sqrt((1 + x1) * (1 + x2)), tt[i], &a, &c)
            gam = (-1 + 2 * z + (1 - 2 * z) * x1 + z * x1 * x1 + x2 + z * (x2 - 2) * x2)
            _propagate(gam, z * (x1 + x2 - 2), eta[i] * sqrt(x1 * x2), tt[i], &b, &d)
            a = a * ct
            c = c * ct
            b = b * st
            d = d * st

            for k in range(81):
                rho[k] = 0.0
            rho[0] = d * d.conjugate()
            rho[40] = a * a.conjugate() + b * b.conjugate()
            rho[80] = c * c.conjugate()
            rho[4] = d * a.conjugate()
            rho[36] = a * d.conjugate()
            rho[44] = b * c.conjugate()
            rho[76] = c * b.conjugate()
            # transpose mode 1: pt[3a2+b1, 3a1+b2] = rho[3a1+b1, 3a2+b2]
            for alpha1 in range(3):
                for beta1 in range(3):
                    for alpha2 in range(3):
                        for beta2 in range(3):
                            pt[(3 * alpha2 + beta1) * 9 + 3 * alpha1 + beta2] = \
                                rho[(3 * alpha1 + beta1) * 9 + 3 * alpha2 + beta2]
            if _jacobi(pt, 9, tol, max_sweeps) < 0:
                failed = i
                break
            neg = 0.0
            for k in range(9):
                lam = pt[k * 9 + k].real
                if lam < 0.0:
                    neg = neg - lam
            out_eig[i] = neg
            out_cf[i] = hypot(a.real, a.imag) * hypot(d.real, d.imag) + \
                hypot(b.real, b.imag) * hypot(c.real, c.imag)
    return out_eig_arr, out_cf_arr, failed
