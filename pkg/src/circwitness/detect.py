"""Witness expectation values, numerical certification of the witness
property via see-saw product-state minimization, and non-decomposability
certificates (a detected PPT state).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._backend import SEESAW_BACKEND, seesaw_batch
from .linalg import (
    DEFAULT_EQ_TOL,
    DEFAULT_TOL,
    Tolerance,
    as_operator,
    require_hermitian,
    trace_product,
)
from .states import StateLambdas, beta_lambdas, state_from_lambdas, is_ppt
from .witness import AlphaWitnessParams, witness_W_alpha

RNG_NAME = "PCG64"  # numpy default_rng bit generator, recorded for replay


@dataclass(frozen=True)
class SeeSawConfig:
    restarts: int = 64
    max_iters: int = 500
    conv_tol: float = 1e-12
    seed: int = 0

    def __post_init__(self):
        if self.restarts <= 0 or self.max_iters <= 0 or self.conv_tol <= 0:
            raise ValueError("restarts, max_iters and conv_tol must be positive")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


@dataclass(frozen=True)
class ProductMinResult:
    value: float
    psi: np.ndarray
    phi: np.ndarray
    restart_index: int
    backend: str
    rng: str
    seed: int
    restarts: int


@dataclass(frozen=True)
class DetectionReport:
    expectation: float
    detected: bool
    closed_form: float | None = None
    product_min: ProductMinResult | None = None


def expectation(W, rho, eq_tol: float = DEFAULT_EQ_TOL) -> float:
    """Re Tr(W rho) for Hermitian W, rho of matching shape."""
    W = require_hermitian(W, eq_tol)
    rho = require_hermitian(rho, eq_tol)
    if W.shape != rho.shape:
        raise ValueError(f"shape mismatch {W.shape} vs {rho.shape}")
    t = trace_product(W, rho)
    # Hermitian pair: imaginary part is numerical noise only.
    if abs(t.imag) > max(eq_tol, 1e-12 * abs(t.real)):
        raise ValueError(f"expectation has imaginary part {t.imag:.3e}")
    return t.real


def closed_form_expectation(params: AlphaWitnessParams, s: StateLambdas) -> float:
    """Tr(W_alpha rho) = (lambda_1 - lambda_d)(1 - 1/(d alpha)); the
    primed variant uses lambda_{d-1}."""
    if params.d != s.d:
        raise ValueError(f"dimension mismatch {params.d} vs {s.d}")
    d = params.d
    lam = s.lam[d - 2] if params.primed else s.lam[0]
    return float((lam - s.lam[d - 1]) * (1 - Fraction(1) / (d * params.alpha)))


def random_product_starts(d: int, restarts: int, seed: int):
    """Unit starting vectors from normalized standard complex Gaussians,
    deterministic in (d, restarts, seed)."""
    rng = np.random.default_rng(seed)
    def draw():
        v = rng.standard_normal((restarts, d)) + 1j * rng.standard_normal((restarts, d))
        return v / np.linalg.norm(v, axis=1, keepdims=True)
    return draw(), draw()


def product_min(W, d: int, cfg: SeeSawConfig = SeeSawConfig(), backend: str | None = None) -> ProductMinResult:
    """Approximate min over unit psi, phi of <psi x phi|W|psi x phi>.

    Alternating smallest-eigenvector minimization from cfg.restarts
    seeded random starts; the returned value is an upper bound on the
    true minimum.  Ties between restarts break toward the lowest index.
    """
    W = require_hermitian(W)
    if W.shape != (d * d, d * d):
        raise ValueError(f"expected shape {(d*d, d*d)}, got {W.shape}")
    starts_psi, starts_phi = random_product_starts(d, cfg.restarts, cfg.seed)
    val, idx, psi, phi = seesaw_batch(
        W, d, starts_psi, starts_phi, cfg.max_iters, cfg.conv_tol, backend=backend
    )
    return ProductMinResult(
        value=float(val),
        psi=np.asarray(psi),
        phi=np.asarray(phi),
        restart_index=int(idx),
        backend=backend or SEESAW_BACKEND,
        rng=RNG_NAME,
        seed=cfg.seed,
        restarts=cfg.restarts,
    )


def detect_state(W, rho, cfg: SeeSawConfig | None = None,
                 witness_params: AlphaWitnessParams | None = None,
                 state_lambdas: StateLambdas | None = None,
                 tol: Tolerance = DEFAULT_TOL) -> DetectionReport:
    """Evaluate Tr(W rho) and the detection verdict.

    When witness/state provenance is supplied, the matching closed-form
    expectation is attached and cross-checked; when cfg is supplied,
    see-saw product-minimization evidence is attached.
    """
    W = as_operator(W)
    rho = as_operator(rho)
    exp = expectation(W, rho, tol.eq_tol)
    closed = None
    if witness_params is not None and state_lambdas is not None:
        closed = closed_form_expectation(witness_params, state_lambdas)
        if abs(exp - closed) > max(tol.eq_tol, 1e-12):
            raise AssertionError(
                f"closed-form expectation {closed} deviates from dense value {exp}"
            )
    pm = None
    if cfg is not None:
        d = int(round(np.sqrt(W.shape[0])))
        pm = product_min(W, d, cfg)
    return DetectionReport(
        expectation=exp,
        detected=exp < -tol.eig_tol,
        closed_form=closed,
        product_min=pm,
    )


@dataclass(frozen=True)
class NdCertificate:
    """A PPT state detected by the witness: numerical evidence that the
    witness is a non-decomposable EW."""

    params: AlphaWitnessParams
    beta: Fraction
    expectation: float
    ppt_min_eig: float
    product_min: ProductMinResult

    def to_json(self) -> dict:
        return {
            "witness": self.params.to_json(),
            "beta": str(self.beta),
            "expectation": self.expectation,
            "ppt_min_eig": self.ppt_min_eig,
            "product_min": self.product_min.value,
            "seed": self.product_min.seed,
            "restarts": self.product_min.restarts,
            "backend": self.product_min.backend,
            "rng": self.product_min.rng,
            "certificate": "numerical",
        }


def nd_beta_grid(params: AlphaWitnessParams, points: int = 10) -> list[Fraction]:
    """Beta grid over the window where the (primed) witness detects PPT
    states: [1, d-1) for W_alpha, ((d-1)(d-2)+1, (d-1)^2] for W'_alpha."""
    d = params.d
    width = Fraction(d - 2)
    if params.primed:
        left = Fraction((d - 1) * (d - 2) + 1)
        return [left + width * Fraction(k, points) for k in range(1, points + 1)]
    return [Fraction(1) + width * Fraction(k, points) for k in range(points)]


def certify_nd(params: AlphaWitnessParams, cfg: SeeSawConfig = SeeSawConfig(),
               tol: Tolerance = DEFAULT_TOL, points: int = 10) -> NdCertificate:
    """Scan the detection window for a PPT state with negative
    expectation; the first hit plus see-saw EW evidence is the
    certificate."""
    from .witness import alpha_admissible_range

    if not alpha_admissible_range(params.d).contains(params.alpha):
        raise ValueError(
            f"alpha={params.alpha} is outside the certified interval for d={params.d}; "
            "a certificate is not guaranteed there"
        )
    W = witness_W_alpha(params)
    pm = product_min(W, params.d, cfg)
    for beta in nd_beta_grid(params, points):
        s = beta_lambdas(params.d, beta)
        rho = state_from_lambdas(s)
        ppt, min_eig = is_ppt(rho, params.d, tol)
        if not ppt:
            continue
        exp = expectation(W, rho, tol.eq_tol)
        if exp < -tol.eig_tol:
            return NdCertificate(params, beta, exp, min_eig, pm)
    raise RuntimeError(
        f"no PPT state with negative expectation found for {params} "
        f"(this would contradict the certified non-decomposability claim)"
    )
