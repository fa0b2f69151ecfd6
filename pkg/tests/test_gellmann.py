import json
import pathlib
from fractions import Fraction

import numpy as np
import pytest

from circwitness.gellmann import (
    LocalDecomposition,
    basis_labels,
    expand_local,
    gellmann_basis,
    measurement_settings_report,
    reconstruct,
)
from circwitness.witness import AlphaWitnessParams, max_entangled_projector, witness_W_alpha

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def test_d2_is_pauli():
    I, X, Y, Z = gellmann_basis(2)
    assert np.allclose(I, np.eye(2))
    assert np.allclose(X, PAULI_X)
    assert np.allclose(Y, PAULI_Y)
    assert np.allclose(Z, PAULI_Z)


def test_d3_is_standard_gellmann():
    elems = dict(zip(basis_labels(3), gellmann_basis(3)))
    lam = {
        1: [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
        2: [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]],
        3: [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
        4: [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
        5: [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]],
        6: [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
        7: [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]],
        8: np.diag([1, 1, -2]) / np.sqrt(3),
    }
    assert np.allclose(elems["sym(0,1)"], lam[1])
    assert np.allclose(elems["asym(0,1)"], lam[2])
    assert np.allclose(elems["diag(1)"], lam[3])
    assert np.allclose(elems["sym(0,2)"], lam[4])
    assert np.allclose(elems["asym(0,2)"], lam[5])
    assert np.allclose(elems["sym(1,2)"], lam[6])
    assert np.allclose(elems["asym(1,2)"], lam[7])
    assert np.allclose(elems["diag(2)"], lam[8])
    assert np.allclose(elems["id"], np.sqrt(2 / 3) * np.eye(3))


@pytest.mark.parametrize("d", list(range(2, 9)))
def test_orthogonality_and_tracelessness(d):
    elems = gellmann_basis(d)
    assert len(elems) == d * d
    for a, A in enumerate(elems):
        assert np.max(np.abs(A - A.conj().T)) <= 1e-14
        if a > 0:
            assert abs(np.trace(A)) <= 1e-14
        for b, B in enumerate(elems):
            t = np.trace(A @ B)
            assert abs(t - (2.0 if a == b else 0.0)) <= 1e-13


@pytest.mark.parametrize("d", list(range(2, 9)))
def test_local_basis_completeness(d):
    rng = np.random.default_rng(d)
    elems = gellmann_basis(d)
    for _ in range(15):
        z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        H = (z + z.conj().T) / 2
        coeffs = [np.trace(E @ H).real / 2 for E in elems]
        back = sum(c * E for c, E in zip(coeffs, elems))
        assert np.max(np.abs(back - H)) <= 1e-12


def test_expand_identity():
    d = 3
    dec = expand_local(np.eye(d * d, dtype=complex), d)
    nz = np.argwhere(np.abs(dec.coeffs) > 1e-12)
    assert nz.tolist() == [[0, 0]]
    assert abs(dec.coeffs[0, 0] - d / 2) < 1e-12


def test_expand_single_product_element():
    d = 3
    elems = gellmann_basis(d)
    labels = basis_labels(d)
    mu = labels.index("sym(0,1)")
    W = np.kron(elems[mu], elems[mu])
    dec = expand_local(W, d)
    expected = np.zeros((d * d, d * d))
    expected[mu, mu] = 1.0
    assert np.max(np.abs(dec.coeffs - expected)) <= 1e-12


@pytest.mark.parametrize("d", [3, 4, 5])
@pytest.mark.parametrize("primed", [False, True])
def test_roundtrip_witness(d, primed):
    from circwitness.witness import alpha_admissible_range

    iv = alpha_admissible_range(d)
    for k in (1, 5, 10):
        alpha = iv.lo + (iv.hi - iv.lo) * Fraction(k, 10)
        W = witness_W_alpha(AlphaWitnessParams(d, alpha, primed=primed))
        dec = expand_local(W, d)
        assert np.max(np.abs(dec.coeffs.imag if np.iscomplexobj(dec.coeffs) else 0)) == 0
        assert np.max(np.abs(reconstruct(dec) - W)) <= 1e-12


def test_expand_rejects_non_hermitian():
    M = np.zeros((9, 9), dtype=complex)
    M[0, 1] = 1.0
    with pytest.raises(ValueError):
        expand_local(M, 3)


def test_settings_report_identity():
    dec = expand_local(np.eye(4, dtype=complex), 2)
    assert len(measurement_settings_report(dec)) == 1


def test_settings_report_bell_projector():
    # P+_2 = (II + XX - YY + ZZ)/4: four settings
    dec = expand_local(max_entangled_projector(2), 2)
    settings = measurement_settings_report(dec)
    assert len(settings) == 4
    table = {(m, n): c for m, n, c in settings}
    assert abs(table[("sym(0,1)", "sym(0,1)")] - 0.25) < 1e-12
    assert abs(table[("asym(0,1)", "asym(0,1)")] + 0.25) < 1e-12
    assert abs(table[("diag(1)", "diag(1)")] - 0.25) < 1e-12
    assert abs(table[("id", "id")] - 0.25) < 1e-12


def test_frozen_fixture_d3_alpha_half():
    # regression fixture: coefficient table computed by expand_local and
    # verified by exact operator round trip, then frozen
    with open(FIXTURES / "walpha_d3_alpha_1_2_gellmann.json") as fh:
        ref = json.load(fh)
    W = witness_W_alpha(AlphaWitnessParams(3, Fraction(1, 2)))
    dec = expand_local(W, 3)
    assert list(dec.labels) == ref["labels"]
    assert np.max(np.abs(dec.coeffs - np.asarray(ref["coeffs"]))) <= 1e-14
    assert len(measurement_settings_report(dec)) == 11


def test_decomposition_json():
    dec = expand_local(np.eye(4, dtype=complex), 2)
    obj = dec.to_json()
    back = LocalDecomposition(obj["d"], np.asarray(obj["coeffs"]), tuple(obj["labels"]))
    assert np.allclose(reconstruct(back), np.eye(4))
