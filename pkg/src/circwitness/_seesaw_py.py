"""Pure-numpy see-saw kernel (fallback backend).

Same contract as the compiled kernel in _seesaw_cy: alternating
smallest-eigenvector minimization of <psi x phi| W |psi x phi> over unit
vectors, one run per precomputed random start, best restart wins with
ties broken by lowest restart index.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"


def seesaw_batch(W, d, starts_psi, starts_phi, max_iters, conv_tol):
    """Returns (best value, best restart index, psi, phi)."""
    Wr = np.ascontiguousarray(W).reshape(d, d, d, d)
    n_restarts = starts_psi.shape[0]
    best_val = np.inf
    best_idx = -1
    best_psi = None
    best_phi = None
    for r in range(n_restarts):
        psi = starts_psi[r].copy()
        phi = starts_phi[r].copy()
        val = float(
            np.einsum("i,k,ikjl,j,l->", psi.conj(), phi.conj(), Wr, psi, phi).real
        )
        for _ in range(max_iters):
            # optimal phi given psi
            M = np.einsum("i,ikjl,j->kl", psi.conj(), Wr, psi)
            M = (M + M.conj().T) / 2
            w, V = np.linalg.eigh(M)
            phi = np.ascontiguousarray(V[:, 0])
            # optimal psi given phi
            N = np.einsum("k,ikjl,l->ij", phi.conj(), Wr, phi)
            N = (N + N.conj().T) / 2
            w, V = np.linalg.eigh(N)
            psi = np.ascontiguousarray(V[:, 0])
            new_val = float(w[0])
            if val - new_val < conv_tol:
                val = min(val, new_val)
                break
            val = new_val
        if val < best_val:
            best_val = val
            best_idx = r
            best_psi = psi
            best_phi = phi
    return best_val, best_idx, best_psi, best_phi
