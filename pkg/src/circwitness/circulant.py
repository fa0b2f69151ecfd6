"""Circulant operators on C^d (x) C^d.

A circulant operator is determined by d Hermitian d x d generator
matrices a^(0), ..., a^(d-1); generator n is supported on the subspace
Sigma_n spanned by |i, i+n mod d>.  The partial transpose of a circulant
operator is again block-supported, on the subspaces Sigma~_n spanned by
|i, pi(i)+n mod d> with pi(k) = (d - k) mod d, and its generators follow
a closed form built from Hadamard products with shifted permutation
masks.  Specs carry an explicit `tilde` tag so Sigma- and
Sigma~-supported generator lists cannot be mixed up silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    DEFAULT_EQ_TOL,
    Tolerance,
    as_operator,
    hadamard,
    is_hermitian,
    matrix_from_json,
    matrix_to_json,
)


def pi_perm(d: int, k: int) -> int:
    """The involution pi(k) = (d - k) mod d."""
    return (d - k) % d


def pi_matrix(d: int) -> np.ndarray:
    """Permutation matrix Pi with Pi[k, l] = delta(k, pi(l))."""
    P = np.zeros((d, d), dtype=np.complex128)
    for l in range(d):
        P[pi_perm(d, l), l] = 1.0
    return P


def shift_matrix(d: int, n: int = 1) -> np.ndarray:
    """Permutation matrix of S^n where S|k> = |k+1 mod d>."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    S = np.zeros((d, d), dtype=np.complex128)
    for k in range(d):
        S[(k + n) % d, k] = 1.0
    return S


@dataclass(frozen=True)
class CirculantSpec:
    """d Hermitian generators; tilde=True marks Sigma~-supported ones."""

    d: int
    generators: tuple = field(repr=False)
    tilde: bool = False

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        gens = tuple(as_operator(g) for g in self.generators)
        if len(gens) != self.d:
            raise ValueError(f"expected {self.d} generators, got {len(gens)}")
        for n, g in enumerate(gens):
            if g.shape != (self.d, self.d):
                raise ValueError(f"generator {n} has shape {g.shape}")
            if not is_hermitian(g):
                raise ValueError(f"generator {n} is not Hermitian")
        object.__setattr__(self, "generators", gens)

    def is_state_form(self, tol: Tolerance = Tolerance()) -> bool:
        """All generators PSD and traces summing to 1 (circulant state)."""
        total = 0.0
        for g in self.generators:
            w = np.linalg.eigvalsh(g)
            if w[0] < -tol.eig_tol:
                return False
            total += float(np.trace(g).real)
        return abs(total - 1.0) <= tol.eq_tol

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "tilde": self.tilde,
            "generators": [matrix_to_json(g) for g in self.generators],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CirculantSpec":
        return cls(
            d=int(obj["d"]),
            generators=tuple(matrix_from_json(m) for m in obj["generators"]),
            tilde=bool(obj.get("tilde", False)),
        )


def assemble(spec: CirculantSpec) -> np.ndarray:
    """A = sum_n A_n with a^(n)_{ij} at (i*d + (i+n), j*d + (j+n)) mod d."""
    if spec.tilde:
        raise ValueError("assemble expects a Sigma-supported spec; use assemble_tilde")
    d = spec.d
    A = np.zeros((d * d, d * d), dtype=np.complex128)
    for n, g in enumerate(spec.generators):
        for i in range(d):
            for j in range(d):
                A[i * d + (i + n) % d, j * d + (j + n) % d] += g[i, j]
    return A


def assemble_tilde(spec: CirculantSpec) -> np.ndarray:
    """A~ with a~^(n)_{ij} at (i*d + (pi(i)+n), j*d + (pi(j)+n)) mod d."""
    if not spec.tilde:
        raise ValueError("assemble_tilde expects a Sigma~-supported spec")
    d = spec.d
    A = np.zeros((d * d, d * d), dtype=np.complex128)
    for n, g in enumerate(spec.generators):
        for i in range(d):
            for j in range(d):
                r = i * d + (pi_perm(d, i) + n) % d
                c = j * d + (pi_perm(d, j) + n) % d
                A[r, c] += g[i, j]
    return A


def disassemble(A, d: int, eq_tol: float = DEFAULT_EQ_TOL):
    """Extract circulant generators from a d^2 x d^2 operator.

    Returns (spec, is_circulant); non-circulant inputs are flagged, not
    rejected, so arbitrary operators can be probed.
    """
    A = as_operator(A)
    if A.shape != (d * d, d * d):
        raise ValueError(f"expected shape {(d*d, d*d)}, got {A.shape}")
    gens = []
    for n in range(d):
        g = np.zeros((d, d), dtype=np.complex128)
        for i in range(d):
            for j in range(d):
                g[i, j] = A[i * d + (i + n) % d, j * d + (j + n) % d]
        gens.append(g)
    circulant = all(is_hermitian(g, eq_tol) for g in gens)
    if circulant:
        spec = CirculantSpec(d, tuple(gens))
        circulant = bool(np.max(np.abs(assemble(spec) - A)) <= eq_tol)
    else:
        # Hermitize so the spec is still constructible for inspection.
        spec = CirculantSpec(d, tuple((g + g.conj().T) / 2 for g in gens))
    return spec, circulant


def circulant_partial_transpose(spec: CirculantSpec) -> CirculantSpec:
    """Closed-form partial transpose at the generator level.

    On a Sigma-supported spec returns the Sigma~-supported generators
    a~^(n) = sum_m a^((n+m) mod d) o (Pi S^m); on a Sigma~-supported
    spec applies the inverse map, so the operation is an involution.
    """
    d = spec.d
    # (Pi S^m)_{kl} = delta(k, pi((l+m) mod d)); real 0/1 masks.
    masks = [pi_matrix(d) @ shift_matrix(d, m) for m in range(d)]
    out = []
    for n in range(d):
        g = np.zeros((d, d), dtype=np.complex128)
        for m in range(d):
            src = (n - m) % d if spec.tilde else (n + m) % d
            g += hadamard(spec.generators[src], masks[m])
        out.append(g)
    return CirculantSpec(d, tuple(out), tilde=not spec.tilde)
