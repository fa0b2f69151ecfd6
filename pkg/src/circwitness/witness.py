"""Witness families W_alpha, W'_alpha and W[a_0, ..., a_{d-1}].

Builders return dense operators; the algebraic conditions (necessary
conditions for the witness property, the complete d=3 characterization,
the certified alpha interval) are evaluated in exact rational arithmetic
wherever the inputs are rational, so interval boundaries classify
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


def _exact(x) -> Fraction:
    """Exact value of a parameter: ints, 'p/q' strings, Fractions and
    floats (by their exact binary value) all convert losslessly."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def projector_O(d: int, n: int) -> np.ndarray:
    """O_n = (1/d) sum_i |i, i+n><i, i+n|, the normalized projector onto
    Sigma_n."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if not 0 <= n <= d - 1:
        raise ValueError(f"n must be in [0, {d-1}], got {n}")
    O = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        k = i * d + (i + n) % d
        O[k, k] = 1.0 / d
    return O


def max_entangled_projector(d: int) -> np.ndarray:
    """P+_d = (1/d) sum_{ij} |ii><jj|."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    P = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            P[i * d + i, j * d + j] = 1.0 / d
    return P


def flip_operator(d: int) -> np.ndarray:
    """Swap operator |ij> -> |ji>."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    F = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            F[i * d + j, j * d + i] = 1.0
    return F


@dataclass(frozen=True)
class WitnessCoefficients:
    """Parameters of W[a_0, ..., a_{d-1}] with an overall scale mu."""

    d: int
    a: tuple
    mu: Fraction = Fraction(1)

    def __post_init__(self):
        if self.d < 3:
            raise ValueError(f"d must be >= 3 for witnesses, got {self.d}")
        a = tuple(_exact(x) for x in self.a)
        if len(a) != self.d:
            raise ValueError(f"expected {self.d} coefficients, got {len(a)}")
        if any(x < 0 for x in a):
            raise ValueError("all a_i must be >= 0")
        mu = _exact(self.mu)
        if mu <= 0:
            raise ValueError(f"mu must be positive, got {mu}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "mu", mu)

    def to_json(self) -> dict:
        return {"d": self.d, "a": [str(x) for x in self.a], "mu": str(self.mu)}


@dataclass(frozen=True)
class AlphaWitnessParams:
    """Parameters of W_alpha (primed selects W'_alpha)."""

    d: int
    alpha: Fraction
    primed: bool = False

    def __post_init__(self):
        if self.d < 3:
            raise ValueError(f"d must be >= 3 for witnesses, got {self.d}")
        alpha = _exact(self.alpha)
        if alpha <= Fraction(1, 2 * self.d):
            raise ValueError(
                f"alpha must exceed 1/(2d) = 1/{2*self.d} so the scale "
                f"mu = 2 - 1/(d*alpha) is positive; got {alpha}"
            )
        object.__setattr__(self, "alpha", alpha)

    @property
    def mu(self) -> Fraction:
        return 2 - Fraction(1) / (self.d * self.alpha)

    def coefficients(self) -> WitnessCoefficients:
        """Coefficients of W[a] with W_alpha = mu * W[a]."""
        d, mu = self.d, self.mu
        a = [Fraction(0)] * d
        a[0] = d / mu - 1
        a1 = d / mu - 1 / (self.alpha * mu)
        a[d - 1 if self.primed else 1] = a1
        return WitnessCoefficients(d, tuple(a), mu)

    def to_json(self) -> dict:
        return {"d": self.d, "alpha": str(self.alpha), "primed": self.primed}


def witness_family(coeffs: WitnessCoefficients) -> np.ndarray:
    """mu * [ (a_0 + 1) O_0 + sum_{n>=1} a_n O_n - P+_d ]."""
    d = coeffs.d
    W = (float(coeffs.a[0]) + 1.0) * projector_O(d, 0)
    for n in range(1, d):
        if coeffs.a[n]:
            W += float(coeffs.a[n]) * projector_O(d, n)
    W -= max_entangled_projector(d)
    return float(coeffs.mu) * W


def witness_W_alpha(params: AlphaWitnessParams) -> np.ndarray:
    """W_alpha = I - (1/alpha) O_1 - d (O_2 + ... + O_{d-1}) - mu P+_d,
    with O_1 <-> O_{d-1} for the primed variant."""
    d = params.d
    alpha = float(params.alpha)
    special = d - 1 if params.primed else 1
    W = np.eye(d * d, dtype=np.complex128)
    for n in range(1, d):
        coef = 1.0 / alpha if n == special else float(d)
        W -= coef * projector_O(d, n)
    W -= float(params.mu) * max_entangled_projector(d)
    return W


def witness_spectrum_closed_form(coeffs: WitnessCoefficients) -> np.ndarray:
    """Eigenvalues of W[a] (times mu) from the Sigma-block structure:
    {(a0+1-d)/d} u {(a0+1)/d x (d-1)} u {a_n/d x d, n>=1}."""
    d = coeffs.d
    mu = float(coeffs.mu)
    vals = [mu * float(coeffs.a[0] + 1 - d) / d]
    vals += [mu * float(coeffs.a[0] + 1) / d] * (d - 1)
    for n in range(1, d):
        vals += [mu * float(coeffs.a[n]) / d] * d
    return np.sort(np.asarray(vals))


@dataclass(frozen=True)
class NecessaryConditionsReport:
    sum_condition: bool          # sum a_n >= d-1
    nonpositive_condition: bool  # a_0 < d-1, needed for non-positivity
    product_vector_value: float  # <psi x psi| W |psi x psi>, psi = sum_i |i>
    product_vector_matches: bool


def check_necessary_conditions(coeffs: WitnessCoefficients) -> NecessaryConditionsReport:
    """The two algebraic necessary conditions for W[a] to be a witness,
    plus a numeric reproduction of the first via the product vector
    psi = sum_i |i>."""
    d = coeffs.d
    total = sum(coeffs.a)
    sum_ok = total >= d - 1
    nonpos_ok = coeffs.a[0] < d - 1

    W = witness_family(coeffs)
    psi = np.ones(d, dtype=np.complex128)
    v = np.kron(psi, psi)
    value = float((v.conj() @ W @ v).real)
    closed = float(coeffs.mu * (total - (d - 1)))
    matches = abs(value - closed) <= 1e-10 * max(1.0, abs(closed))
    return NecessaryConditionsReport(sum_ok, nonpos_ok, value, matches)


@dataclass(frozen=True)
class D3Report:
    is_ew: bool
    is_nd: bool


def check_d3_conditions(coeffs: WitnessCoefficients) -> D3Report:
    """Complete d=3 characterization: the necessary conditions plus
    a1*a2 >= (1-a0)^2 when a0 <= 1; non-decomposable iff additionally
    a1*a2 < (2-a0)^2 / 4.  Exact rational evaluation."""
    if coeffs.d != 3:
        raise ValueError(f"d=3 characterization only, got d={coeffs.d}")
    a0, a1, a2 = coeffs.a
    nec = check_necessary_conditions(coeffs)
    is_ew = nec.sum_condition and nec.nonpositive_condition
    if is_ew and a0 <= 1:
        is_ew = a1 * a2 >= (1 - a0) ** 2
    is_nd = is_ew and a1 * a2 < (2 - a0) ** 2 / 4
    return D3Report(is_ew, is_nd)


@dataclass(frozen=True)
class AlphaInterval:
    """Half-open interval (lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def contains(self, alpha) -> bool:
        a = _exact(alpha)
        return self.lo < a <= self.hi

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "lo_open": True, "hi_open": False}


def alpha_admissible_range(d: int) -> AlphaInterval:
    """Certified witness interval (1/d, (d-1)/(d(d-2))]."""
    if d < 3:
        raise ValueError(f"d must be >= 3 (interval undefined at d=2), got {d}")
    return AlphaInterval(Fraction(1, d), Fraction(d - 1, d * (d - 2)))


@dataclass(frozen=True)
class AlphaRangeReport:
    interval: AlphaInterval
    in_certified_range: bool
    mu: Fraction
    a0: Fraction
    a1: Fraction
    a1_in_unit: bool  # a1 in (0, 1], the convex-combination certificate
    # alpha <= 1/d: the formal a0 reaches d-1, so the necessary witness
    # condition a0 < d-1 fails; the operator cannot be an EW there (for
    # alpha < 1/d it is not PSD either, since the formal a1 is negative
    # and the O_1 block picks up the eigenvalue 1 - 1/(d alpha) < 0).
    nonwitness_region: bool


def alpha_range_report(params: AlphaWitnessParams) -> AlphaRangeReport:
    """Re-derives the convex-combination certificate behind the certified
    interval: W_alpha / mu = W[(d-1) - a1, a1, 0, ..., 0] is an EW for
    a1 in (0, 1]."""
    interval = alpha_admissible_range(params.d)
    d, mu = params.d, params.mu
    # Computed directly: for alpha <= 1/d the formal a1 is negative and
    # WitnessCoefficients (which requires a_i >= 0) would reject it.
    a0 = d / mu - 1
    a1 = d / mu - 1 / (params.alpha * mu)
    in_range = interval.contains(params.alpha)
    a1_ok = 0 < a1 <= 1
    nonwitness = params.alpha <= Fraction(1, d)
    return AlphaRangeReport(interval, in_range, mu, a0, a1, a1_ok, nonwitness)


def witness_from_json(obj: dict):
    """Accept either {"d", "alpha", "primed"} or {"d", "a", "mu"}; returns
    (params-or-coeffs, dense matrix)."""
    if "alpha" in obj:
        params = AlphaWitnessParams(
            d=int(obj["d"]), alpha=_exact(obj["alpha"]), primed=bool(obj.get("primed", False))
        )
        return params, witness_W_alpha(params)
    coeffs = WitnessCoefficients(
        d=int(obj["d"]), a=tuple(_exact(x) for x in obj["a"]), mu=_exact(obj.get("mu", 1))
    )
    return coeffs, witness_family(coeffs)
