import numpy as np
import pytest

from punif.galois import SympVector
from punif.gates import hadamard, t_gate
from punif.hierarchy import battery, in_level
from punif.matcore import Operator, Unitary, frob_norm, haar_random_unitary, identity
from punif.pauligroup import omega, weyl_matrix
from punif.uniformity import (
    BudgetExceededError,
    fourier_coeffs,
    p2_via_fourier,
    pauli_derivative,
    pnorm_exact,
    pnorm_sampled,
)

from oracles import naive_pnorm_raw

T_LADDER = {2: 0.75, 3: 0.75, 4: 1.0}  # frozen from the brute-force oracle below


def test_derivative_zero_direction_is_identity():
    u = haar_random_unitary(2, 2, seed=0)
    d0 = pauli_derivative(u, SympVector.zero(2, 2))
    assert np.allclose(d0.mat, np.eye(4), atol=1e-13)


def test_derivative_of_weyl_is_commutator_phase():
    rng = np.random.default_rng(1)
    for _ in range(50):
        d = int(rng.choice([2, 3]))
        n = int(rng.choice([1, 2]))
        a = SympVector.random(rng, n, d)
        h = SympVector.random(rng, n, d)
        derived = pauli_derivative(weyl_matrix(a), h)
        phase = omega(d) ** h.sform(a).lift()
        assert np.allclose(derived.mat, phase * np.eye(d**n), atol=1e-12)


def test_derivative_of_t_gate_in_shift_direction():
    # direct 2x2 evaluation: X T X T^dag = e^{i pi/4} diag(1, e^{-i pi/2})
    derived = pauli_derivative(t_gate(), SympVector((0,), (1,), 2))
    expected = np.exp(1j * np.pi / 4) * np.diag([1.0, np.exp(-1j * np.pi / 2)])
    assert np.allclose(derived.mat, expected, atol=1e-14)


def test_derivative_matches_plain_formula():
    rng = np.random.default_rng(2)
    for _ in range(30):
        d = int(rng.choice([2, 3]))
        u = haar_random_unitary(1, d, seed=rng)
        h = SympVector.random(rng, 1, d)
        w = weyl_matrix(h).mat
        plain = w @ u.mat @ w.conj().T @ u.mat.conj().T
        assert np.allclose(pauli_derivative(u, h).mat, plain, atol=1e-13)
        assert pauli_derivative(u, h).unitarity_defect < 1e-12


def test_identity_norm_is_one_every_order():
    eye = identity(1, 2)
    for k in range(1, 6):
        report = pnorm_exact(eye, k)
        assert report.value == pytest.approx(1.0, abs=1e-12)
        assert report.raw == pytest.approx(1.0, abs=1e-12)


def test_t_gate_ladder_frozen_values():
    t = t_gate()
    for k, raw in T_LADDER.items():
        report = pnorm_exact(t, k)
        assert report.raw == pytest.approx(raw, abs=1e-12), k
        assert report.value == pytest.approx(raw ** (2.0**-k), abs=1e-12)
    assert pnorm_exact(t, 1).raw == pytest.approx((2 + np.sqrt(2)) / 4, abs=1e-12)


def test_t_gate_ladder_against_brute_force():
    t = t_gate()
    for k in (1, 2, 3):
        brute = naive_pnorm_raw(t.mat, 1, 2, k)
        assert brute == pytest.approx(T_LADDER.get(k, pnorm_exact(t, k).raw), abs=1e-10)
        assert pnorm_exact(t, k).raw == pytest.approx(brute, abs=1e-10)


def test_exact_matches_brute_force_on_random_unitaries():
    rng = np.random.default_rng(3)
    cases = [(1, 2, 3), (1, 2, 2), (1, 3, 2), (1, 3, 3), (2, 2, 2)]
    for n, d, k in cases:
        u = haar_random_unitary(n, d, seed=rng)
        brute = naive_pnorm_raw(u.mat, n, d, k)
        assert pnorm_exact(u, k).raw == pytest.approx(brute, abs=1e-10), (n, d, k)


def test_nesting_identity():
    rng = np.random.default_rng(4)
    for n, d in [(1, 2), (1, 3)]:
        u = haar_random_unitary(n, d, seed=rng)
        for k in (2, 3, 4):
            children = [
                pnorm_exact(pauli_derivative(u, h), k - 1).raw
                for h in SympVector.all_vectors(n, d)
            ]
            assert pnorm_exact(u, k).raw == pytest.approx(np.mean(children), abs=1e-9)


def test_norm_bounded_by_one_for_unitaries():
    rng = np.random.default_rng(5)
    gates = [u for _, u in battery()] + [haar_random_unitary(1, 2, seed=rng) for _ in range(5)]
    for u in gates:
        for k in (1, 2, 3):
            assert pnorm_exact(u, k).value <= 1 + 1e-9


def test_extremal_characterization_on_battery():
    # norm 1 at order k exactly characterizes membership at level k-1
    for name, gate in battery():
        for k in (1, 2, 3, 4):
            is_extremal = abs(pnorm_exact(gate, k).value - 1.0) <= 1e-9
            member = in_level(gate, k - 1).accepted
            assert is_extremal == member, (name, k)


def test_p1_closed_form():
    rng = np.random.default_rng(6)
    for _ in range(10):
        n, d = (1, 2) if rng.random() < 0.5 else (2, 2)
        u = haar_random_unitary(n, d, seed=rng)
        want = abs(np.trace(u.mat)) ** 2 / d ** (4 * n) * d ** (2 * n)
        assert pnorm_exact(u, 1).raw == pytest.approx(want, abs=1e-12)


def test_norm_invariances():
    rng = np.random.default_rng(7)
    for _ in range(5):
        d = int(rng.choice([2, 3]))
        u = haar_random_unitary(1, d, seed=rng)
        a = SympVector.random(rng, 1, d)
        b = SympVector.random(rng, 1, d)
        sandwich = (weyl_matrix(a) @ u @ weyl_matrix(b)).as_unitary()
        for k in (2, 3):
            base = pnorm_exact(u, k).value
            assert pnorm_exact(sandwich, k).value == pytest.approx(base, abs=1e-9)
            assert pnorm_exact(u.adjoint().as_unitary(), k).value == pytest.approx(
                base, abs=1e-9
            )


def test_fourier_single_weyl():
    rng = np.random.default_rng(8)
    for _ in range(10):
        d = int(rng.choice([2, 3]))
        n = int(rng.choice([1, 2]))
        b = SympVector.random(rng, n, d)
        table = fourier_coeffs(weyl_matrix(b))
        assert table[b] == pytest.approx(1.0, abs=1e-12)
        assert table.l2_mass() == pytest.approx(1.0, abs=1e-12)
        assert table.argmax_label() == b


def test_fourier_of_t_gate():
    table = fourier_coeffs(t_gate())
    assert table[SympVector.zero(1, 2)] == pytest.approx((1 + np.exp(1j * np.pi / 4)) / 2)
    assert table[SympVector((1,), (0,), 2)] == pytest.approx((1 - np.exp(1j * np.pi / 4)) / 2)
    assert abs(table[SympVector((0,), (1,), 2)]) < 1e-14
    assert abs(table[SympVector((1,), (1,), 2)]) < 1e-14


def test_fourier_reconstruction_and_parseval():
    rng = np.random.default_rng(9)
    for n, d in [(1, 2), (2, 2), (1, 3)]:
        u = haar_random_unitary(n, d, seed=rng)
        table = fourier_coeffs(u)
        assert frob_norm(table.reconstruct() - u) < 1e-10
        assert table.l2_mass() == pytest.approx(1.0, abs=1e-10)


def test_p2_via_fourier_examples():
    assert p2_via_fourier(weyl_matrix(SympVector((1,), (1,), 2))) == pytest.approx(1.0)
    assert p2_via_fourier(t_gate()) == pytest.approx(0.75, abs=1e-12)
    assert p2_via_fourier(hadamard()) == pytest.approx(0.5, abs=1e-12)


def test_p2_fourier_matches_derivative_route():
    rng = np.random.default_rng(10)
    for _ in range(20):
        n = int(rng.choice([1, 2]))
        d = int(rng.choice([2, 3]))
        u = haar_random_unitary(n, d, seed=rng)
        assert abs(p2_via_fourier(u) - pnorm_exact(u, 2).raw) < 1e-9


def test_budget_exceeded_guides_to_sampling():
    u = haar_random_unitary(2, 2, seed=0)
    with pytest.raises(BudgetExceededError, match="pnorm_sampled"):
        pnorm_exact(u, 5, budget=100)


def test_report_fields():
    t = t_gate()
    report = pnorm_exact(t, 3)
    assert report.mode == "exact"
    assert report.term_count == 4**3
    assert report.raw == pytest.approx(report.value ** (2**3), abs=1e-12)
    obj = report.to_json_dict()
    assert set(obj) == {"order", "value", "raw", "mode", "term_count", "runtime_ms"}
    sampled = pnorm_sampled(t, 3, 50, seed=0)
    obj = sampled.to_json_dict()
    assert set(obj) == {"order", "value", "raw", "mode", "samples", "stderr", "runtime_ms"}


def test_sampled_identity_has_zero_spread():
    report = pnorm_sampled(identity(1, 2), 4, 200, seed=1)
    assert report.raw == pytest.approx(1.0)
    assert report.stderr == 0.0
    assert report.samples == 200


def test_sampled_t_gate_order4():
    # every double derivative of T is Clifford, so each draw is exactly 1
    report = pnorm_sampled(t_gate(), 4, 1000, seed=2)
    assert report.raw == pytest.approx(1.0, abs=1e-12)
    assert abs(report.raw - 1.0) <= 3 * max(report.stderr, 1e-12)


def test_sampled_tracks_exact_on_haar():
    u = haar_random_unitary(2, 2, seed=11)
    exact = pnorm_exact(u, 4).raw
    report = pnorm_sampled(u, 4, 10_000, seed=3)
    assert abs(report.raw - exact) <= 3 * report.stderr
    again = pnorm_sampled(u, 4, 10_000, seed=3)
    assert again.raw == report.raw  # deterministic under seed


def test_sampled_validates_arguments():
    with pytest.raises(ValueError):
        pnorm_sampled(t_gate(), 1, 10)
    with pytest.raises(ValueError):
        pnorm_sampled(t_gate(), 3, 0)


def test_general_operators_skip_the_clamp():
    two_eye = Operator(2 * np.eye(2), 1, 2)
    assert pnorm_exact(two_eye, 1).value == pytest.approx(2.0)
    assert pnorm_exact(two_eye, 2).value == pytest.approx(2.0)


def test_norm_axioms_spot_checks():
    # homogeneity and triangle inequality on generic operators, orders 2 and 3
    rng = np.random.default_rng(12)
    for _ in range(10):
        d = int(rng.choice([2, 3]))
        a = Operator(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)), 1, d)
        b = Operator(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)), 1, d)
        for k in (2, 3):
            na = pnorm_exact(a, k).value
            nb = pnorm_exact(b, k).value
            nsum = pnorm_exact(a + b, k).value
            assert nsum <= na + nb + 1e-9
            assert pnorm_exact(1.5j * a, k).value == pytest.approx(1.5 * na, rel=1e-9)
