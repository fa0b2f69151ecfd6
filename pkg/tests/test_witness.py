from fractions import Fraction

import numpy as np
import pytest

from circwitness.linalg import is_positive_semidefinite, trace_product
from circwitness.witness import (
    AlphaWitnessParams,
    WitnessCoefficients,
    alpha_admissible_range,
    alpha_range_report,
    check_d3_conditions,
    check_necessary_conditions,
    flip_operator,
    max_entangled_projector,
    projector_O,
    witness_family,
    witness_from_json,
    witness_spectrum_closed_form,
    witness_W_alpha,
)


@pytest.mark.parametrize("d", list(range(3, 9)))
def test_projector_O_properties(d):
    Os = [projector_O(d, n) for n in range(d)]
    P = max_entangled_projector(d)
    for m in range(d):
        assert abs(np.trace(Os[m]).real - 1.0) < 1e-12
        for n in range(d):
            assert np.allclose(Os[m] @ Os[n], (Os[m] if m == n else 0) / d)
        if m >= 1:
            assert np.max(np.abs(Os[m] @ P)) <= 1e-12
    assert np.allclose(sum(Os), np.eye(d * d) / d)


def test_projector_O_d3_explicit():
    O0 = projector_O(3, 0)
    expected = np.zeros((9, 9))
    for i in range(3):
        expected[i * 3 + i, i * 3 + i] = 1 / 3
    assert np.allclose(O0, expected)


def test_projector_O_range_errors():
    with pytest.raises(ValueError):
        projector_O(3, 3)
    with pytest.raises(ValueError):
        projector_O(3, -1)


def test_max_entangled_projector():
    for d in (2, 3, 4):
        P = max_entangled_projector(d)
        assert np.allclose(P @ P, P)
        assert abs(np.trace(P).real - 1.0) < 1e-12
        assert np.allclose(projector_O(d, 0) @ P, P / d)


@pytest.mark.parametrize("d", list(range(3, 9)))
def test_flip_relations(d):
    F = flip_operator(d)
    assert np.allclose(F @ F, np.eye(d * d))
    assert np.allclose(F, F.T)
    P = max_entangled_projector(d)
    assert np.allclose(F @ P @ F, P)
    for k in range(d):
        assert np.allclose(F @ projector_O(d, k) @ F, projector_O(d, (d - k) % d))


@pytest.mark.parametrize("d", list(range(3, 9)))
def test_two_form_equality(d):
    # long form vs simplified d O_0 + (d - 1/alpha) O_1 - mu P+
    lo = Fraction(1, 2 * d)
    for k in range(1, 21):
        alpha = lo + (Fraction(1) - lo) * Fraction(k, 20)
        W = witness_W_alpha(AlphaWitnessParams(d, alpha))
        mu = 2 - Fraction(1, d) / alpha
        Ws = (d * projector_O(d, 0)
              + float(d - 1 / alpha) * projector_O(d, 1)
              - float(mu) * max_entangled_projector(d))
        assert np.max(np.abs(W - Ws)) <= 1e-10


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_primed_is_flip_conjugate(d):
    rng = np.random.default_rng(d)
    F = flip_operator(d)
    for _ in range(5):
        alpha = Fraction(int(rng.integers(1, 30)) + 1, 2 * d)
        W = witness_W_alpha(AlphaWitnessParams(d, alpha))
        Wp = witness_W_alpha(AlphaWitnessParams(d, alpha, primed=True))
        assert np.max(np.abs(F @ W @ F - Wp)) <= 1e-12


def test_witness_W_alpha_min_eig_d3():
    W = witness_W_alpha(AlphaWitnessParams(3, Fraction(1, 2)))
    assert abs(np.linalg.eigvalsh(W)[0] + 1 / 3) < 1e-12


@pytest.mark.parametrize("d", [3, 4, 5])
def test_alpha_one_over_d_is_psd_boundary(d):
    W = witness_W_alpha(AlphaWitnessParams(d, Fraction(1, d)))
    ok, min_eig = is_positive_semidefinite(W)
    assert ok and abs(min_eig) < 1e-12


def test_witness_family_boundary_and_nd_instance():
    for d in (3, 4, 5):
        Wpos = witness_family(WitnessCoefficients(d, (d - 1,) + (0,) * (d - 1)))
        ok, min_eig = is_positive_semidefinite(Wpos)
        assert ok and abs(min_eig) < 1e-12

        a = [0] * d
        a[0] = d - 2
        a[1] = 1
        Wnd = witness_family(WitnessCoefficients(d, tuple(a)))
        assert abs(np.linalg.eigvalsh(Wnd)[0] + 1 / d) < 1e-12


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_spectrum_closed_form(d):
    rng = np.random.default_rng(d + 100)
    for _ in range(10):
        a = tuple(Fraction(int(x), 8) for x in rng.integers(0, 40, size=d))
        mu = Fraction(int(rng.integers(1, 9)), 4)
        coeffs = WitnessCoefficients(d, a, mu)
        W = witness_family(coeffs)
        assert np.max(np.abs(np.linalg.eigvalsh(W) - witness_spectrum_closed_form(coeffs))) <= 1e-10


@pytest.mark.parametrize("d", [3, 4, 5])
def test_positivity_boundary_scan(d):
    rng = np.random.default_rng(d + 7)
    rest = tuple(Fraction(int(x), 4) for x in rng.integers(0, 12, size=d - 1))
    for num in range(4 * (d - 2), 4 * d + 1):
        a0 = Fraction(num, 4)
        W = witness_family(WitnessCoefficients(d, (a0,) + rest))
        ok, _ = is_positive_semidefinite(W)
        assert ok == (a0 >= d - 1)


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_rescaling_consistency(d):
    iv = alpha_admissible_range(d)
    for k in range(1, 11):
        alpha = iv.lo + (iv.hi - iv.lo) * Fraction(k, 10)
        params = AlphaWitnessParams(d, alpha)
        assert np.max(np.abs(witness_W_alpha(params) - witness_family(params.coefficients()))) <= 1e-10
        primed = AlphaWitnessParams(d, alpha, primed=True)
        assert np.max(np.abs(witness_W_alpha(primed) - witness_family(primed.coefficients()))) <= 1e-10


def test_necessary_conditions():
    d = 4
    nd = check_necessary_conditions(WitnessCoefficients(d, (d - 2, 1, 0, 0)))
    assert nd.sum_condition and nd.nonpositive_condition and nd.product_vector_matches

    pos = check_necessary_conditions(WitnessCoefficients(d, (d - 1, 0, 0, 0)))
    assert pos.sum_condition and not pos.nonpositive_condition

    zero = check_necessary_conditions(WitnessCoefficients(d, (0, 0, 0, 0)))
    assert not zero.sum_condition


def test_d3_conditions():
    r = check_d3_conditions(WitnessCoefficients(3, (1, 1, 0)))
    assert r.is_ew and r.is_nd
    r = check_d3_conditions(WitnessCoefficients(3, (0, 2, 2)))
    assert r.is_ew and not r.is_nd
    r = check_d3_conditions(WitnessCoefficients(3, (2, 0, 0)))
    assert not r.is_ew and not r.is_nd
    with pytest.raises(ValueError):
        check_d3_conditions(WitnessCoefficients(4, (1, 1, 0, 0)))


def test_alpha_admissible_range():
    iv = alpha_admissible_range(3)
    assert iv.lo == Fraction(1, 3) and iv.hi == Fraction(2, 3)
    iv = alpha_admissible_range(4)
    assert iv.lo == Fraction(1, 4) and iv.hi == Fraction(3, 8)
    iv = alpha_admissible_range(5)
    assert iv.lo == Fraction(1, 5) and iv.hi == Fraction(4, 15)
    assert iv.contains(Fraction(4, 15)) and not iv.contains(Fraction(1, 5))
    with pytest.raises(ValueError):
        alpha_admissible_range(2)


def test_alpha_range_report():
    r = alpha_range_report(AlphaWitnessParams(3, Fraction(1, 2)))
    assert r.in_certified_range and r.a1_in_unit and not r.nonwitness_region
    assert r.mu == Fraction(4, 3)
    # endpoint alpha = 2/3: a1 = 1 exactly
    r = alpha_range_report(AlphaWitnessParams(3, Fraction(2, 3)))
    assert r.in_certified_range and r.a1 == 1
    # below 1/d the necessary condition a0 < d-1 fails
    r = alpha_range_report(AlphaWitnessParams(3, Fraction(3, 10)))
    assert not r.in_certified_range and r.nonwitness_region and r.a1 <= 0


def test_param_validation():
    with pytest.raises(ValueError):
        AlphaWitnessParams(2, Fraction(1, 2))
    with pytest.raises(ValueError):
        AlphaWitnessParams(3, Fraction(1, 6))  # alpha <= 1/(2d)
    with pytest.raises(ValueError):
        WitnessCoefficients(3, (1, -1, 0))
    with pytest.raises(ValueError):
        WitnessCoefficients(3, (1, 1, 0), mu=0)


def test_witness_from_json():
    desc, W = witness_from_json({"d": 3, "alpha": "1/2", "primed": False})
    assert isinstance(desc, AlphaWitnessParams)
    assert np.allclose(W, witness_W_alpha(desc))
    desc2, W2 = witness_from_json({"d": 3, "a": ["1", "1", "0"], "mu": "2"})
    assert isinstance(desc2, WitnessCoefficients)
    assert np.allclose(W2, witness_family(desc2))


def test_trace_product_reference_value():
    # Tr(W_alpha rho) closed form at d=3, alpha=1/2, beta=1 is -1/21
    from circwitness.states import beta_lambdas, state_from_lambdas

    W = witness_W_alpha(AlphaWitnessParams(3, Fraction(1, 2)))
    rho = state_from_lambdas(beta_lambdas(3, 1))
    assert abs(trace_product(W, rho).real + 1 / 21) < 1e-12
