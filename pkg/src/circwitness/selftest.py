"""Closed-form oracle suite, runnable from the CLI (`selftest`).

Quick consistency checks of the package against the independent closed
forms: circulant partial-transpose theorem versus the dense oracle, the
two witness forms, the trace formulas, the PPT window and the Gell-Mann
round trip.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .circulant import CirculantSpec, assemble, assemble_tilde, circulant_partial_transpose
from .detect import closed_form_expectation
from .gellmann import expand_local, reconstruct
from .linalg import partial_transpose, trace_product_real
from .states import beta_lambdas, is_ppt, ppt_closed_form, state_from_lambdas
from .witness import (
    AlphaWitnessParams,
    alpha_admissible_range,
    max_entangled_projector,
    projector_O,
    witness_W_alpha,
)


def _random_spec(rng, d):
    gens = []
    for _ in range(d):
        z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        gens.append((z + z.conj().T) / 2)
    return CirculantSpec(d, tuple(gens))


def run_selftest(seed: int = 0, emit=print) -> bool:
    rng = np.random.default_rng(seed)
    ok = True

    def check(name, passed, detail=""):
        nonlocal ok
        ok = ok and passed
        emit(f"{'PASS' if passed else 'FAIL'}  {name}{('  ' + detail) if detail else ''}")

    # circulant PT closed form vs dense partial transpose
    dev = 0.0
    for d in (3, 4, 5, 6):
        for _ in range(10):
            spec = _random_spec(rng, d)
            lhs = assemble_tilde(circulant_partial_transpose(spec))
            rhs = partial_transpose(assemble(spec), d)
            dev = max(dev, float(np.max(np.abs(lhs - rhs))))
    check("circulant partial-transpose theorem", dev <= 1e-12, f"max dev {dev:.2e}")

    # two-form equality of W_alpha
    dev = 0.0
    for d in (3, 4, 5, 6):
        for alpha in (Fraction(1, d) + Fraction(1, 10), Fraction(1, 2), Fraction(1)):
            W = witness_W_alpha(AlphaWitnessParams(d, alpha))
            mu = 2 - Fraction(1, d) / alpha
            Ws = (d * projector_O(d, 0)
                  + float(d - 1 / alpha) * projector_O(d, 1)
                  - float(mu) * max_entangled_projector(d))
            dev = max(dev, float(np.max(np.abs(W - Ws))))
    check("simplified witness form", dev <= 1e-12, f"max dev {dev:.2e}")

    # trace formulas against closed forms
    dev = 0.0
    for d in (3, 4, 5):
        for _ in range(10):
            lam = rng.dirichlet(np.ones(d))
            from .states import StateLambdas
            lam_frac = [Fraction(x) for x in lam]
            lam_frac[-1] += 1 - sum(lam_frac)
            s = StateLambdas(d, tuple(lam_frac))
            alpha = Fraction(int(rng.integers(1, 20)) + d, 2 * d)
            params = AlphaWitnessParams(d, alpha)
            exp = trace_product_real(witness_W_alpha(params), state_from_lambdas(s), 1e-9)
            dev = max(dev, abs(exp - closed_form_expectation(params, s)))
    check("witness-state trace formula", dev <= 1e-10, f"max dev {dev:.2e}")

    # PPT window of the beta family
    agree = True
    for d in (3, 4, 5):
        hi = (d - 1) ** 2
        for k in range(0, 4 * (hi + 1) + 1, 2):
            b = Fraction(k, 4)
            s = beta_lambdas(d, b)
            ppt_eig, _ = is_ppt(state_from_lambdas(s), d)
            agree = agree and (ppt_eig == ppt_closed_form(s))
    check("beta-family PPT window", agree)

    # certified interval endpoints
    iv3 = alpha_admissible_range(3)
    iv4 = alpha_admissible_range(4)
    check("certified alpha intervals",
          (iv3.lo, iv3.hi) == (Fraction(1, 3), Fraction(2, 3))
          and (iv4.lo, iv4.hi) == (Fraction(1, 4), Fraction(3, 8)))

    # Gell-Mann round trip on W_alpha
    dev = 0.0
    for d in (3, 4):
        W = witness_W_alpha(AlphaWitnessParams(d, Fraction(1, 2)))
        dev = max(dev, float(np.max(np.abs(reconstruct(expand_local(W, d)) - W))))
    check("Gell-Mann round trip", dev <= 1e-12, f"max dev {dev:.2e}")

    return ok
