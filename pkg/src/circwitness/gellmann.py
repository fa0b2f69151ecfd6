"""Generalized Gell-Mann operator basis and local decomposition of
bipartite operators.

Basis ordering is fixed (identity; symmetric pairs lexicographic;
antisymmetric pairs lexicographic; diagonal by l) so coefficient tables
are deterministic across runs.  Every element has Tr(L L) = 2, so a
tensor-product element has squared norm 4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_EQ_TOL, require_hermitian


def _sym(d, k, l):
    M = np.zeros((d, d), dtype=np.complex128)
    M[k, l] = 1.0
    M[l, k] = 1.0
    return M


def _asym(d, k, l):
    M = np.zeros((d, d), dtype=np.complex128)
    M[k, l] = -1.0j
    M[l, k] = 1.0j
    return M


def _diag(d, l):
    # standard traceless form sqrt(2/(l(l+1))) (sum_{j<l} |j><j| - l|l><l|)
    v = np.zeros(d)
    v[:l] = 1.0
    v[l] = -l
    return np.sqrt(2.0 / (l * (l + 1))) * np.diag(v).astype(np.complex128)


def basis_labels(d: int) -> list[str]:
    labels = ["id"]
    labels += [f"sym({k},{l})" for k in range(d) for l in range(k + 1, d)]
    labels += [f"asym({k},{l})" for k in range(d) for l in range(k + 1, d)]
    labels += [f"diag({l})" for l in range(1, d)]
    return labels


def gellmann_basis(d: int) -> list[np.ndarray]:
    """d^2 Hermitian elements: sqrt(2/d) I, then the traceless symmetric,
    antisymmetric and diagonal families."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    elems = [np.sqrt(2.0 / d) * np.eye(d, dtype=np.complex128)]
    elems += [_sym(d, k, l) for k in range(d) for l in range(k + 1, d)]
    elems += [_asym(d, k, l) for k in range(d) for l in range(k + 1, d)]
    elems += [_diag(d, l) for l in range(1, d)]
    return elems


@dataclass(frozen=True)
class LocalDecomposition:
    """Real coefficient table c[mu, nu] with
    W = sum c[mu, nu] L_mu (x) L_nu."""

    d: int
    coeffs: np.ndarray
    labels: tuple

    def to_json(self) -> dict:
        return {"d": self.d, "labels": list(self.labels), "coeffs": self.coeffs.tolist()}


def expand_local(W, d: int, eq_tol: float = DEFAULT_EQ_TOL) -> LocalDecomposition:
    """c[mu, nu] = Tr((L_mu (x) L_nu) W) / 4."""
    W = require_hermitian(W, eq_tol)
    if W.shape != (d * d, d * d):
        raise ValueError(f"expected shape {(d*d, d*d)}, got {W.shape}")
    K = np.stack(gellmann_basis(d))
    # Tr((L_mu x L_nu) W) = sum_{ikjl} (L_mu)_{ij} (L_nu)_{kl} W[(j,l),(i,k)]
    Wr = W.reshape(d, d, d, d)
    c = np.einsum("mij,nkl,jlik->mn", K, K, Wr, optimize=True) / 4.0
    if np.max(np.abs(c.imag)) > eq_tol:
        raise ValueError("coefficients are not real; source operator not Hermitian")
    return LocalDecomposition(d, np.ascontiguousarray(c.real), tuple(basis_labels(d)))


def reconstruct(dec: LocalDecomposition) -> np.ndarray:
    d = dec.d
    K = np.stack(gellmann_basis(d))
    out = np.einsum("mn,mij,nkl->ikjl", dec.coeffs.astype(np.complex128), K, K, optimize=True)
    return out.reshape(d * d, d * d)


def measurement_settings_report(dec: LocalDecomposition, threshold: float = 1e-12):
    """Nonzero (mu, nu) entries as (mu_label, nu_label, coefficient),
    sorted by |coefficient| descending then label."""
    entries = []
    for mu in range(dec.coeffs.shape[0]):
        for nu in range(dec.coeffs.shape[1]):
            c = float(dec.coeffs[mu, nu])
            if abs(c) > threshold:
                entries.append((dec.labels[mu], dec.labels[nu], c))
    entries.sort(key=lambda e: (-abs(e[2]), e[0], e[1]))
    return entries
