import itertools

import numpy as np
import pytest

from punif.galois import PhaseExp, SympVector, phase_modulus
from punif.matcore import frob_norm, hs_inner, identity
from punif.pauligroup import (
    PauliElement,
    commutator_phase,
    omega,
    product_phase,
    product_phase_dense,
    tau,
    tau_exponent,
    weil_rep,
    weyl_family,
    weyl_matrix,
)

from oracles import all_weyl_direct, weyl_dense_direct


def _random_element(rng, n, d):
    D = phase_modulus(d)
    return PauliElement(
        PhaseExp(int(rng.integers(0, D)), D), SympVector.random(rng, n, d)
    )


def test_tau_branch():
    for d in (2, 3, 5):
        t = tau(d)
        D = phase_modulus(d)
        assert abs(t**2 - omega(d)) < 1e-14
        assert abs(t**D - 1) < 1e-13
        for j in range(1, D):
            assert abs(t**j - 1) > 0.5
    assert tau(2) == 1j


def test_weyl_zero_is_identity():
    for n, d in [(1, 2), (1, 3), (2, 2)]:
        w = weyl_matrix(SympVector.zero(n, d))
        assert np.allclose(w.mat, np.eye(d**n))


def test_weyl_shift_matrix():
    x = weyl_matrix(SympVector((0,), (1,), 2))
    assert np.allclose(x.mat, [[0, 1], [1, 0]])
    x3 = weyl_matrix(SympVector((0,), (1,), 3))
    shifted = np.zeros((3, 3))
    for j in range(3):
        shifted[(j + 1) % 3, j] = 1
    assert np.allclose(x3.mat, shifted)


def test_weyl_matches_defining_formula_everywhere():
    # direct evaluation of tau^{-sum|u_i v_i|} Z^u X^v, independent construction
    for n, d in [(1, 2), (1, 3), (2, 2), (2, 3)]:
        fam = weyl_family(n, d)
        direct = all_weyl_direct(n, d)
        for idx in range(fam.size):
            assert np.allclose(fam.dense(idx), direct[idx], atol=1e-13), (n, d, idx)


def test_weyl_qubit_y_normalization():
    y = weyl_matrix(SympVector((1,), (1,), 2))
    z = np.diag([1, -1])
    x = np.array([[0, 1], [1, 0]])
    assert np.allclose(y.mat, tau(2) ** -1 * z @ x)
    assert np.allclose(y.mat, [[0, -1j], [1j, 0]])


def test_weyl_tensor_structure():
    for d in (2, 3):
        rng = np.random.default_rng(d)
        for _ in range(10):
            a = SympVector.random(rng, 2, d)
            left = weyl_matrix(SympVector((a.u[0],), (a.v[0],), d))
            right = weyl_matrix(SympVector((a.u[1],), (a.v[1],), d))
            assert np.allclose(weyl_matrix(a).mat, np.kron(left.mat, right.mat))


def test_weyl_unitary_and_trace_character():
    for n, d in [(1, 2), (1, 3), (2, 2)]:
        for a in SympVector.all_vectors(n, d):
            w = weyl_matrix(a)
            assert w.unitarity_defect < 1e-12
            want = d**n if a.is_zero else 0.0
            assert abs(w.trace() - want) < 1e-12


def test_weyl_orthonormal():
    for n, d in [(1, 2), (1, 3), (2, 2)]:
        labels = list(SympVector.all_vectors(n, d))
        for a in labels:
            for b in labels:
                ip = hs_inner(weyl_matrix(a), weyl_matrix(b))
                assert abs(ip - (1.0 if a == b else 0.0)) < 1e-12


def test_product_phase_zero_label():
    for d in (2, 3):
        for b in SympVector.all_vectors(1, d):
            assert product_phase(SympVector.zero(1, d), b).lift() == 0
            assert product_phase(b, SympVector.zero(1, d)).lift() == 0


def test_product_phase_matches_dense_oracle_exhaustively():
    # the matrix-extraction oracle is ground truth for the closed form
    for d in (2, 3):
        for a in SympVector.all_vectors(1, d):
            for b in SympVector.all_vectors(1, d):
                assert product_phase(a, b) == product_phase_dense(a, b), (d, a, b)
    rng = np.random.default_rng(2)
    for _ in range(300):
        d = int(rng.choice([2, 3]))
        a, b = SympVector.random(rng, 2, d), SympVector.random(rng, 2, d)
        assert product_phase(a, b) == product_phase_dense(a, b)


def test_product_law_as_matrices():
    for n, d in [(1, 2), (1, 3), (2, 2)]:
        t = tau(d)
        for a in SympVector.all_vectors(n, d):
            for b in SympVector.all_vectors(n, d):
                lhs = weyl_matrix(a) @ weyl_matrix(b)
                rhs = t ** product_phase(a, b).lift() * weyl_matrix(a + b)
                assert frob_norm(lhs - rhs) < 1e-12


def test_commutation_law_as_matrices():
    rng = np.random.default_rng(8)
    for _ in range(100):
        d = int(rng.choice([2, 3]))
        n = int(rng.choice([1, 2]))
        a, b = SympVector.random(rng, n, d), SympVector.random(rng, n, d)
        lhs = weyl_matrix(a) @ weyl_matrix(b)
        rhs = omega(d) ** commutator_phase(a, b).lift() * (weyl_matrix(b) @ weyl_matrix(a))
        assert frob_norm(lhs - rhs) < 1e-12
    assert commutator_phase(SympVector((1,), (0,), 2), SympVector((0,), (1,), 2)).lift() == 1
    a = SympVector((1, 0), (1, 2), 3)
    assert commutator_phase(a, a).lift() == 0


def test_cocycle_condition_exhaustive_n1():
    for d in (2, 3):
        labels = list(SympVector.all_vectors(1, d))
        for a, b, c in itertools.product(labels, repeat=3):
            lhs = product_phase(a, b + c) + product_phase(b, c)
            rhs = product_phase(a, b) + product_phase(a + b, c)
            assert lhs == rhs


def test_cocycle_condition_random_n2():
    rng = np.random.default_rng(13)
    for _ in range(2000):
        d = int(rng.choice([2, 3]))
        a = SympVector.random(rng, 2, d)
        b = SympVector.random(rng, 2, d)
        c = SympVector.random(rng, 2, d)
        assert product_phase(a, b + c) + product_phase(b, c) == product_phase(
            a, b
        ) + product_phase(a + b, c)


def test_antisymmetry_defect():
    # beta(a,b) - beta(b,a) = 2[a,b], read as 2|[a,b]| mod 4 when d = 2
    rng = np.random.default_rng(14)
    for _ in range(500):
        d = int(rng.choice([2, 3]))
        n = int(rng.choice([1, 2]))
        a, b = SympVector.random(rng, n, d), SympVector.random(rng, n, d)
        defect = product_phase(a, b) - product_phase(b, a)
        expected = (2 * commutator_phase(a, b).lift()) % phase_modulus(d)
        assert defect.lift() == expected


def test_pauli_group_law():
    rng = np.random.default_rng(15)
    for _ in range(500):
        d = int(rng.choice([2, 3]))
        n = int(rng.choice([1, 2]))
        g, h = _random_element(rng, n, d), _random_element(rng, n, d)
        assert np.allclose(
            weil_rep(g * h).mat, weil_rep(g).mat @ weil_rep(h).mat, atol=1e-12
        )
    # associativity
    for _ in range(200):
        d = 3
        g, h, f = (_random_element(rng, 2, d) for _ in range(3))
        assert (g * h) * f == g * (h * f)


def test_pauli_identity_and_inverse():
    e = PauliElement.identity(1, 2)
    assert e.is_identity
    assert e.inverse() == e
    z = PauliElement(PhaseExp(0, 4), SympVector((1,), (0,), 2))
    assert (z * z.inverse()).is_identity
    assert (z * z).is_identity  # Z squares to the identity with no phase
    rng = np.random.default_rng(16)
    for _ in range(200):
        d = int(rng.choice([2, 3]))
        g = _random_element(rng, 2, d)
        assert (g * g.inverse()).is_identity
        assert (g.inverse() * g).is_identity


def test_weil_rep_basics_and_injectivity():
    assert np.allclose(weil_rep(PauliElement.identity(1, 2)).mat, np.eye(2))
    t_elem = PauliElement(PhaseExp(1, 4), SympVector.zero(1, 2))
    assert np.allclose(weil_rep(t_elem).mat, 1j * np.eye(2))
    for n, d in [(1, 2), (1, 3), (2, 2)]:
        D = phase_modulus(d)
        seen = set()
        for t in range(D):
            for a in SympVector.all_vectors(n, d):
                g = PauliElement(PhaseExp(t, D), a)
                seen.add(np.round(weil_rep(g).mat, 9).tobytes())
        assert len(seen) == D * d ** (2 * n)


def test_tau_exponent_snap():
    assert tau_exponent(1j, 2).lift() == 1
    assert tau_exponent(-1 + 1e-10, 2).lift() == 2
    with pytest.raises(ValueError):
        tau_exponent(np.exp(1j * 0.3), 2)


def test_weyl_conjugation_helper_matches_dense():
    rng = np.random.default_rng(17)
    for n, d in [(1, 2), (2, 2), (1, 3)]:
        fam = weyl_family(n, d)
        mat = rng.standard_normal((d**n, d**n)) + 1j * rng.standard_normal((d**n, d**n))
        for idx in range(fam.size):
            w = fam.dense(idx)
            assert np.allclose(fam.conjugate(mat, idx), w @ mat @ w.conj().T, atol=1e-12)
            traces = fam.derivative_traces(mat)
            assert np.allclose(
                traces[idx], np.trace(w @ mat @ w.conj().T @ mat.conj().T), atol=1e-10
            )
