# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled see-saw kernel.

Alternating smallest-eigenvector minimization of <psi x phi|W|psi x phi>
over unit product vectors.  The inner d x d Hermitian eigenproblems are
solved with a cyclic complex Jacobi sweep; matrices here never exceed a
few tens of rows, so Jacobi is both simple and fast.

Same contract as _seesaw_py.seesaw_batch.
"""

import numpy as np

from libc.math cimport fabs, sqrt

BACKEND_NAME = "cython-jacobi"

cdef int MAX_SWEEPS = 60
cdef double OFF_TOL = 1e-30  # squared off-diagonal norm threshold (relative)


cdef void _jacobi_min_eigvec(double complex[:, ::1] A, double complex[:, ::1] V,
                             int d, double* out_val, double complex[::1] out_vec) noexcept nogil:
    """Smallest eigenpair of the Hermitian d x d matrix A (destroyed)."""
    cdef int p, q, k, sweep, best
    cdef double app, aqq, g, tau, t, c, s, off, scale, w, best_w
    cdef double complex apq, u, akp, akq, tmp

    for p in range(d):
        for q in range(d):
            V[p, q] = 1.0 if p == q else 0.0

    scale = 0.0
    for p in range(d):
        for q in range(d):
            scale += A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag
    if scale == 0.0:
        out_val[0] = 0.0
        for k in range(d):
            out_vec[k] = V[k, 0]
        return

    for sweep in range(MAX_SWEEPS):
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                off += A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag
        if off <= OFF_TOL * scale:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[p, q]
                g = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if g * g <= OFF_TOL * scale / (d * d):
                    continue
                u = apq / g  # phase of the off-diagonal element
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * g)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # A' = R^H A R with R = [[c, s*u], [-s*conj(u), c]] on (p, q)
                for k in range(d):
                    if k == p or k == q:
                        continue
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = c * akp - s * u.conjugate() * akq
                    A[k, q] = s * u * akp + c * akq
                    A[p, k] = A[k, p].conjugate()
                    A[q, k] = A[k, q].conjugate()
                A[p, p] = app * c * c - 2.0 * g * s * c + aqq * s * s
                A[q, q] = app * s * s + 2.0 * g * s * c + aqq * c * c
                A[p, q] = 0.0
                A[q, p] = 0.0
                for k in range(d):
                    akp = V[k, p]
                    akq = V[k, q]
                    V[k, p] = c * akp - s * u.conjugate() * akq
                    V[k, q] = s * u * akp + c * akq

    best = 0
    best_w = A[0, 0].real
    for k in range(1, d):
        w = A[k, k].real
        if w < best_w:
            best_w = w
            best = k
    out_val[0] = best_w
    for k in range(d):
        out_vec[k] = V[k, best]


def seesaw_batch(W, int d, starts_psi, starts_phi, int max_iters, double conv_tol):
    """Returns (best value, best restart index, psi, phi)."""
    cdef double complex[:, ::1] Wv = np.ascontiguousarray(W, dtype=np.complex128)
    cdef double complex[:, ::1] sp = np.ascontiguousarray(starts_psi, dtype=np.complex128)
    cdef double complex[:, ::1] sf = np.ascontiguousarray(starts_phi, dtype=np.complex128)
    cdef int n_restarts = sp.shape[0]

    psi_buf = np.empty(d, dtype=np.complex128)
    phi_buf = np.empty(d, dtype=np.complex128)
    M_buf = np.empty((d, d), dtype=np.complex128)
    V_buf = np.empty((d, d), dtype=np.complex128)
    vec_buf = np.empty(d, dtype=np.complex128)
    best_psi = np.empty(d, dtype=np.complex128)
    best_phi = np.empty(d, dtype=np.complex128)

    cdef double complex[::1] psi = psi_buf
    cdef double complex[::1] phi = phi_buf
    cdef double complex[:, ::1] M = M_buf
    cdef double complex[:, ::1] V = V_buf
    cdef double complex[::1] vec = vec_buf
    cdef double complex[::1] bpsi = best_psi
    cdef double complex[::1] bphi = best_phi

    cdef double best_val = np.inf
    cdef int best_idx = -1
    cdef int r, it, i, j, k, l
    cdef double val, new_val
    cdef double complex acc, z

    with nogil:
        for r in range(n_restarts):
            for k in range(d):
                psi[k] = sp[r, k]
                phi[k] = sf[r, k]
            # initial value <psi x phi|W|psi x phi>
            acc = 0.0
            for i in range(d):
                for k in range(d):
                    for j in range(d):
                        for l in range(d):
                            acc = acc + psi[i].conjugate() * phi[k].conjugate() \
                                * Wv[i * d + k, j * d + l] * psi[j] * phi[l]
            val = acc.real
            for it in range(max_iters):
                # M(psi)_{kl} = <psi x e_k|W|psi x e_l>; optimal phi
                for k in range(d):
                    for l in range(d):
                        z = 0.0
                        for i in range(d):
                            for j in range(d):
                                z = z + psi[i].conjugate() * Wv[i * d + k, j * d + l] * psi[j]
                        M[k, l] = z
                for k in range(d):
                    for l in range(k + 1, d):
                        z = 0.5 * (M[k, l] + M[l, k].conjugate())
                        M[k, l] = z
                        M[l, k] = z.conjugate()
                for k in range(d):
                    M[k, k] = M[k, k].real
                _jacobi_min_eigvec(M, V, d, &new_val, vec)
                for k in range(d):
                    phi[k] = vec[k]
                # N(phi)_{ij} = <e_i x phi|W|e_j x phi>; optimal psi
                for i in range(d):
                    for j in range(d):
                        z = 0.0
                        for k in range(d):
                            for l in range(d):
                                z = z + phi[k].conjugate() * Wv[i * d + k, j * d + l] * phi[l]
                        M[i, j] = z
                for i in range(d):
                    for j in range(i + 1, d):
                        z = 0.5 * (M[i, j] + M[j, i].conjugate())
                        M[i, j] = z
                        M[j, i] = z.conjugate()
                for i in range(d):
                    M[i, i] = M[i, i].real
                _jacobi_min_eigvec(M, V, d, &new_val, vec)
                for k in range(d):
                    psi[k] = vec[k]
                if val - new_val < conv_tol:
                    if new_val < val:
                        val = new_val
                    break
                val = new_val
            if val < best_val:
                best_val = val
                best_idx = r
                for k in range(d):
                    bpsi[k] = psi[k]
                    bphi[k] = phi[k]

    if best_idx < 0:
        return float(best_val), -1, None, None
    return float(best_val), int(best_idx), best_psi, best_phi
