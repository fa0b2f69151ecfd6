"""The circulant state family rho = sum_i lambda_i O_i + lambda_d P+_d
and its beta-parametrized (Horodecki-type) instance.

Lambdas are kept as exact rationals until a dense matrix is
materialized, so boundary cases (beta = 1, beta = (d-1)^2, ...)
classify exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .linalg import DEFAULT_TOL, Tolerance, as_operator, partial_transpose
from .witness import _exact, max_entangled_projector, projector_O

# classify_beta labels
NPT = "NPT"
PPT_ENTANGLED = "PPT-ENTANGLED"
SEPARABLE = "SEPARABLE"            # d=3 only; reference label, not computed
PPT_UNRESOLVED = "PPT-UNRESOLVED"


def family_length(d: int) -> int:
    """The normalization l = (d-1)(2d-3) + 1 of the beta family."""
    return (d - 1) * (2 * d - 3) + 1


@dataclass(frozen=True)
class StateLambdas:
    """(lambda_1, ..., lambda_{d-1}, lambda_d); lambda_d weights P+_d.

    beta is set when the lambdas come from the beta family; the PPT
    closed form is only valid in that case.
    """

    d: int
    lam: tuple
    beta: Fraction | None = None

    def __post_init__(self):
        if self.d < 3:
            raise ValueError(f"d must be >= 3, got {self.d}")
        lam = tuple(_exact(x) for x in self.lam)
        if len(lam) != self.d:
            raise ValueError(f"expected {self.d} lambdas, got {len(lam)}")
        if any(x < 0 for x in lam):
            raise ValueError("all lambdas must be >= 0")
        total = sum(lam)
        if abs(total - 1) > Fraction(1, 10**10):
            raise ValueError(f"lambdas must sum to 1, got {float(total)}")
        object.__setattr__(self, "lam", lam)

    @property
    def is_beta_family(self) -> bool:
        return self.beta is not None

    def to_json(self) -> dict:
        obj = {"d": self.d, "lambdas": [str(x) for x in self.lam]}
        if self.beta is not None:
            obj["beta"] = str(self.beta)
        return obj


def beta_range(d: int) -> tuple[Fraction, Fraction]:
    """Closed parameter interval [0, (d-1)^2 + 1]."""
    return Fraction(0), Fraction((d - 1) ** 2 + 1)


def beta_lambdas(d: int, beta) -> StateLambdas:
    """lambda_1 = beta/l, lambda_{d-1} = ((d-1)^2 + 1 - beta)/l,
    lambda_2 = ... = lambda_{d-2} = lambda_d = (d-1)/l."""
    if d < 3:
        raise ValueError(f"d must be >= 3, got {d}")
    b = _exact(beta)
    lo, hi = beta_range(d)
    if not lo <= b <= hi:
        raise ValueError(f"beta must lie in [{lo}, {hi}], got {b}")
    l = family_length(d)
    lam = [Fraction(d - 1, l)] * d
    lam[0] = b / l
    lam[d - 2] = ((d - 1) ** 2 + 1 - b) / l
    return StateLambdas(d, tuple(lam), beta=b)


def state_from_lambdas(s: StateLambdas) -> np.ndarray:
    """rho = sum_{i=1}^{d-1} lambda_i O_i + lambda_d P+_d."""
    d = s.d
    rho = float(s.lam[d - 1]) * max_entangled_projector(d)
    for i in range(1, d):
        rho += float(s.lam[i - 1]) * projector_O(d, i)
    return rho


def _require_density(rho: np.ndarray, tol: Tolerance):
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    if np.max(np.abs(rho - rho.conj().T)) > tol.eq_tol:
        raise ValueError("state is not Hermitian")
    if w[0] < -tol.eig_tol:
        raise ValueError(f"state is not PSD (min eigenvalue {w[0]:.3e})")
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > max(tol.eq_tol, 1e-9):
        raise ValueError(f"state trace is {tr}, expected 1")


def is_ppt(rho, d: int, tol: Tolerance = DEFAULT_TOL):
    """(verdict, min eigenvalue of rho^Gamma) for a density matrix."""
    rho = as_operator(rho)
    _require_density(rho, tol)
    w = np.linalg.eigvalsh(partial_transpose(rho, d))
    min_eig = float(w[0])
    return min_eig >= -tol.eig_tol, min_eig


def ppt_closed_form(s: StateLambdas) -> bool:
    """lambda_1 * lambda_{d-1} >= lambda_d^2, exact; valid only for the
    beta family (equivalent to beta in [1, (d-1)^2])."""
    if not s.is_beta_family:
        raise ValueError("PPT closed form applies only to beta-family states")
    return s.lam[0] * s.lam[s.d - 2] >= s.lam[s.d - 1] ** 2


def classify_beta(d: int, beta) -> str:
    """Classification of the beta-family state.

    NPT outside [1, (d-1)^2]; PPT-ENTANGLED on
    [1, d-1) u ((d-1)(d-2)+1, (d-1)^2]; SEPARABLE on [2, 3] for d=3 (a
    reference label quoted from the literature, not computed here);
    PPT-UNRESOLVED elsewhere.
    """
    if d < 3:
        raise ValueError(f"d must be >= 3, got {d}")
    b = _exact(beta)
    lo, hi = beta_range(d)
    if not lo <= b <= hi:
        raise ValueError(f"beta must lie in [{lo}, {hi}], got {b}")
    if not 1 <= b <= (d - 1) ** 2:
        return NPT
    if 1 <= b < d - 1 or (d - 1) * (d - 2) + 1 < b <= (d - 1) ** 2:
        return PPT_ENTANGLED
    if d == 3 and 2 <= b <= 3:
        return SEPARABLE
    return PPT_UNRESOLVED


def state_from_json(obj: dict) -> StateLambdas:
    """Accept {"d", "lambdas"} or {"d", "beta"} (the latter tags the
    result as beta-family)."""
    d = int(obj["d"])
    if "beta" in obj:
        return beta_lambdas(d, _exact(obj["beta"]))
    return StateLambdas(d, tuple(_exact(x) for x in obj["lambdas"]))
