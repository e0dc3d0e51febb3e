"""Pure-Python cyclic Jacobi eigenvalue kernel for complex Hermitian matrices.

Mirrors ``_jacobi_ext.pyx`` step for step; it is used when the compiled
extension is not available and as the reference in the benchmark.
"""
import math


def jacobi_eigenvalues(a, tol, max_sweeps):
    """Eigenvalues of the Hermitian matrix ``a`` (nested sequence or ndarray).

    Returns ``(eigenvalues, sweeps)`` with eigenvalues ascending, or
    ``(None, max_sweeps)`` when the off-diagonal norm did not fall below
    ``tol * ||a||_F`` within ``max_sweeps`` sweeps.
    """
    n = len(a)
    # private working copy, Hermitian part only
    w = [[0j] * n for _ in range(n)]
    for i in range(n):
        w[i][i] = complex(a[i][i].real, 0.0)
        for j in range(i + 1, n):
            z = 0.5 * (complex(a[i][j]) + complex(a[j][i]).conjugate())
            w[i][j] = z
            w[j][i] = z.conjugate()

    fro2 = 0.0
    for i in range(n):
        for j in range(n):
            z = w[i][j]
            fro2 += z.real * z.real + z.imag * z.imag
    thresh = tol * math.sqrt(fro2)

    for sweep in range(max_sweeps + 1):
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                z = w[i][j]
                off2 += 2.0 * (z.real * z.real + z.imag * z.imag)
        if math.sqrt(off2) <= thresh:
            return sorted(w[i][i].real for i in range(n)), sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p][q]
                r = abs(apq)
                if r == 0.0:
                    continue
                eph = apq.conjugate() / r  # exp(-i*phi)
                app = w[p][p].real
                aqq = w[q][q].real
                tau = (aqq - app) / (2.0 * r)
                t = 1.0 / (abs(tau) + math.hypot(1.0, tau))
                if tau < 0.0:
                    t = -t
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = w[k][p]
                    akq = eph * w[k][q]
                    nkp = c * akp - s * akq
                    nkq = s * akp + c * akq
                    w[k][p] = nkp
                    w[p][k] = nkp.conjugate()
                    w[k][q] = nkq
                    w[q][k] = nkq.conjugate()
                w[p][p] = complex(app - t * r, 0.0)
                w[q][q] = complex(aqq + t * r, 0.0)
                w[p][q] = 0j
                w[q][p] = 0j
    return None, max_sweeps
