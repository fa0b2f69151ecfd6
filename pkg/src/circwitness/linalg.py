"""Dense complex linear algebra for operators on C^d and C^d (x) C^d.

All operators are plain complex128 numpy arrays.  The global index
convention is row-major: the product basis ket |i> (x) |k> maps to row
i*d + k.  Every module in the package inherits this convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_EIG_TOL = 1e-9
DEFAULT_EQ_TOL = 1e-10


@dataclass(frozen=True)
class Tolerance:
    """Numerical slacks: eig_tol for eigenvalue nonnegativity, eq_tol for
    entrywise equality."""

    eig_tol: float = DEFAULT_EIG_TOL
    eq_tol: float = DEFAULT_EQ_TOL

    def __post_init__(self):
        for name in ("eig_tol", "eq_tol"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {v}")


DEFAULT_TOL = Tolerance()


def as_operator(A) -> np.ndarray:
    """Coerce to a 2-d complex128 array."""
    M = np.asarray(A, dtype=np.complex128)
    if M.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={M.ndim}")
    return M


def _require_square(A: np.ndarray) -> int:
    n, m = A.shape
    if n != m:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    return n


def is_hermitian(A, eq_tol: float = DEFAULT_EQ_TOL) -> bool:
    A = as_operator(A)
    if A.shape[0] != A.shape[1]:
        return False
    return bool(np.max(np.abs(A - A.conj().T)) <= eq_tol)


def require_hermitian(A, eq_tol: float = DEFAULT_EQ_TOL) -> np.ndarray:
    A = as_operator(A)
    _require_square(A)
    dev = float(np.max(np.abs(A - A.conj().T))) if A.size else 0.0
    if dev > eq_tol:
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return A


def tensor(A, B) -> np.ndarray:
    """Kronecker product with |i>(x)|k> -> row i*n + k."""
    A = as_operator(A)
    B = as_operator(B)
    _require_square(A)
    _require_square(B)
    return np.kron(A, B)


def partial_transpose(A, d: int) -> np.ndarray:
    """Transpose on the second tensor factor of a d^2 x d^2 operator."""
    A = as_operator(A)
    if A.shape != (d * d, d * d):
        raise ValueError(f"expected shape {(d*d, d*d)}, got {A.shape}")
    # result[(i,k),(j,l)] = A[(i,l),(j,k)]
    return A.reshape(d, d, d, d).transpose(0, 3, 2, 1).reshape(d * d, d * d)


def hermitian_eigenvalues(A, eq_tol: float = DEFAULT_EQ_TOL) -> np.ndarray:
    """All real eigenvalues of a Hermitian matrix, nondecreasing."""
    A = require_hermitian(A, eq_tol)
    return np.linalg.eigvalsh(A)


def hadamard(a, b) -> np.ndarray:
    """Entrywise (Hadamard) product."""
    a = as_operator(a)
    b = as_operator(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return a * b


def is_positive_semidefinite(A, tol: Tolerance = DEFAULT_TOL):
    """(verdict, min eigenvalue) for a Hermitian matrix."""
    w = hermitian_eigenvalues(A, tol.eq_tol)
    min_eig = float(w[0])
    return min_eig >= -tol.eig_tol, min_eig


def trace_product(A, B) -> complex:
    """Tr(AB) without forming AB."""
    A = as_operator(A)
    B = as_operator(B)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    return complex(np.sum(A * B.T))


def trace_product_real(A, B, eq_tol: float = DEFAULT_EQ_TOL) -> float:
    """Real part of Tr(AB); rejects a non-negligible imaginary part."""
    t = trace_product(A, B)
    if abs(t.imag) > eq_tol:
        raise ValueError(f"trace product has imaginary part {t.imag:.3e}")
    return t.real


# --- JSON matrix exchange format ------------------------------------------
# {"rows": n, "cols": n, "re": [[...]], "im": [[...]]}, row-major doubles.


def matrix_to_json(A) -> dict:
    A = as_operator(A)
    return {
        "rows": int(A.shape[0]),
        "cols": int(A.shape[1]),
        "re": A.real.tolist(),
        "im": A.imag.tolist(),
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    M = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    if M.shape != (rows, cols):
        raise ValueError(f"matrix payload shape {M.shape} != ({rows}, {cols})")
    return M.astype(np.complex128)
