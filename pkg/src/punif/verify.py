"""Re-runnable property suites behind the `verify` subcommand.

Each suite re-checks a bundle of identities at desk scale and reports one
line per property. The pytest suite is the exhaustive version; these runs
are sized to finish in seconds so they can serve as a smoke check on any
installation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .galois import SympVector, phase_modulus
from .gates import parse_gate, t_gate
from .hierarchy import (
    battery,
    enumerate_level,
    fidelity,
    in_level,
    is_pauli,
    near_extremal_epsilon,
    separation_check,
    verify_inverse_bounds,
)
from .matcore import frob_norm, haar_random_unitary, hs_inner, identity
from .pauligroup import (
    commutator_phase,
    omega,
    product_phase,
    product_phase_dense,
    tau,
    weyl_matrix,
)
from .testersim import TesterConfig, c3_tester, oracle_pair, pnorm_bias
from .uniformity import fourier_coeffs, p2_via_fourier, pauli_derivative, pnorm_exact

__all__ = ["CheckResult", "SUITE_NAMES", "run_suites"]


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
        }


def _check(results, suite, name, passed, detail=""):
    results.append(CheckResult(suite, name, bool(passed), detail))


def _suite_weyl(seed: int) -> list:
    results = []
    rng = np.random.default_rng(seed)
    worst_prod = worst_comm = 0.0
    cocycle_ok = antisym_ok = True
    for d in (2, 3):
        D = phase_modulus(d)
        labels = list(SympVector.all_vectors(1, d))
        mats = {a: weyl_matrix(a).mat for a in labels}
        for a in labels:
            for b in labels:
                beta = product_phase(a, b)
                if beta != product_phase_dense(a, b):
                    cocycle_ok = False
                lhs = mats[a] @ mats[b]
                worst_prod = max(
                    worst_prod,
                    float(np.linalg.norm(lhs - tau(d) ** beta.lift() * mats[a + b]) / np.sqrt(d)),
                )
                worst_comm = max(
                    worst_comm,
                    float(
                        np.linalg.norm(
                            lhs - omega(d) ** commutator_phase(a, b).lift() * mats[b] @ mats[a]
                        )
                        / np.sqrt(d)
                    ),
                )
        for a in labels:
            for b in labels:
                for c in labels:
                    if product_phase(a, b + c) + product_phase(b, c) != product_phase(
                        a, b
                    ) + product_phase(a + b, c):
                        cocycle_ok = False
        for _ in range(500):
            a, b = SympVector.random(rng, 2, d), SympVector.random(rng, 2, d)
            defect = product_phase(a, b) - product_phase(b, a)
            expected = (2 * commutator_phase(a, b).lift()) % D
            if defect.lift() != expected:
                antisym_ok = False
    _check(results, "weyl", "product law matches the phase cocycle", worst_prod < 1e-12,
           f"worst residual {worst_prod:.2e}")
    _check(results, "weyl", "commutation phase is the symplectic form", worst_comm < 1e-12,
           f"worst residual {worst_comm:.2e}")
    _check(results, "weyl", "cocycle identity holds exactly", cocycle_ok)
    _check(results, "weyl", "antisymmetry defect is twice the form", antisym_ok)

    char_ok = True
    for d in (2, 3):
        for a in SympVector.all_vectors(1, d):
            tr = weyl_matrix(a).trace()
            want = d if a.is_zero else 0.0
            if abs(tr - want) > 1e-12:
                char_ok = False
    _check(results, "weyl", "trace is d^n at zero and 0 elsewhere", char_ok)

    ortho_ok = True
    for d in (2, 3):
        labels = list(SympVector.all_vectors(1, d))
        for a in labels:
            for b in labels:
                ip = hs_inner(weyl_matrix(a), weyl_matrix(b))
                if abs(ip - (1.0 if a == b else 0.0)) > 1e-12:
                    ortho_ok = False
    _check(results, "weyl", "operators are orthonormal", ortho_ok)
    return results


def _suite_uniformity(seed: int) -> list:
    results = []
    rng = np.random.default_rng(seed)
    T = t_gate()
    ladder = {2: 0.75, 3: 0.75, 4: 1.0}
    ladder_ok = all(abs(pnorm_exact(T, k).raw - v) < 1e-9 for k, v in ladder.items())
    _check(results, "uniformity", "T-gate norm ladder (0.75, 0.75, 1)", ladder_ok)

    worst = 0.0
    for _ in range(10):
        n, d = (1, 2) if rng.random() < 0.5 else (1, 3)
        u = haar_random_unitary(n, d, seed=rng)
        worst = max(worst, abs(p2_via_fourier(u) - pnorm_exact(u, 2).raw))
    _check(results, "uniformity", "Fourier route agrees with derivative route",
           worst < 1e-9, f"worst gap {worst:.2e}")

    u = haar_random_unitary(1, 2, seed=rng)
    fam_mean = np.mean(
        [pnorm_exact(pauli_derivative(u, h), 2).raw for h in SympVector.all_vectors(1, 2)]
    )
    nest_gap = abs(pnorm_exact(u, 3).raw - fam_mean)
    _check(results, "uniformity", "nesting identity at order 3", nest_gap < 1e-9,
           f"gap {nest_gap:.2e}")

    p1_ok = True
    for _ in range(5):
        u = haar_random_unitary(1, 3, seed=rng)
        want = abs(np.trace(u.mat)) ** 2 / 9.0
        if abs(pnorm_exact(u, 1).raw - want) > 1e-12:
            p1_ok = False
    _check(results, "uniformity", "order-1 closed form |tr U|^2 / d^2n", p1_ok)

    recon_ok = True
    for _ in range(3):
        u = haar_random_unitary(2, 2, seed=rng)
        resid = frob_norm(fourier_coeffs(u).reconstruct() - u)
        if resid > 1e-10:
            recon_ok = False
    _check(results, "uniformity", "Fourier resynthesis residual <= 1e-10", recon_ok)
    return results


def _suite_hierarchy(seed: int) -> list:
    results = []
    rng = np.random.default_rng(seed)
    counts_ok = (
        len(enumerate_level(1, 2, 1)) == 4
        and len(enumerate_level(1, 2, 2)) == 24
        and len(enumerate_level(1, 3, 2)) == 216
    )
    _check(results, "hierarchy", "level listings have the known sizes (4, 24, 216)", counts_ok)

    T = t_gate()
    ht = parse_gate("H*T")
    ht2 = parse_gate("(H*T)*(H*T)")
    member_ok = (
        in_level(T, 3).accepted
        and not in_level(T, 2).accepted
        and in_level(ht, 3).accepted
        and not any(in_level(ht2, k).accepted for k in range(1, 6))
    )
    _check(results, "hierarchy", "T and HT sit at level 3; (HT)^2 in no level <= 5", member_ok)

    pauli_ok = is_pauli(weyl_matrix(SympVector((1,), (1,), 2))).accepted and not is_pauli(T).accepted
    _check(results, "hierarchy", "Fourier route recognizes Weyl operators", pauli_ok)

    sep_ok = all(
        separation_check(enumerate_level(1, 2, k)).ok for k in (1, 2)
    )
    _check(results, "hierarchy", "level sets respect the separation bound", sep_ok)

    fid = fidelity(T, enumerate_level(1, 2, 1))
    fid_ok = abs(fid.value - (2 + np.sqrt(2)) / 4) < 1e-12
    fid3_ok = abs(fidelity(T, enumerate_level(1, 2, 3)).value - 1.0) < 1e-12
    _check(results, "hierarchy", "T fidelities at levels 1 and 3", fid_ok and fid3_ok)

    bounds_ok = True
    for _ in range(10):
        u = haar_random_unitary(1, 2, seed=rng)
        for k in (2, 3):
            if not verify_inverse_bounds(u, k, enumerate_level(1, 2, k - 1)).ok:
                bounds_ok = False
    _check(results, "hierarchy", "direct and inverse inequalities on Haar draws", bounds_ok)
    return results


def _suite_tester(seed: int) -> list:
    results = []
    T = t_gate()
    count_ok = True
    rng = np.random.default_rng(seed)
    for k in range(1, 5):
        o_u, o_uadj = oracle_pair(T)
        pnorm_bias(1, 2, k, o_u, o_uadj, rng)
        if o_u.queries.total != 2 ** (k - 1):
            count_ok = False
    _check(results, "tester", "one order-k run consumes 2^(k-1) queries", count_ok)

    n_runs = 20_000
    o_u, o_uadj = oracle_pair(T)
    rng = np.random.default_rng(seed)
    ones = sum(pnorm_bias(1, 2, 3, o_u, o_uadj, rng) for _ in range(n_runs))
    p_hat = ones / n_runs
    sigma = float(np.sqrt(0.875 * 0.125 / n_runs))
    _check(results, "tester", "order-3 acceptance rate on T is (1 + 3/4)/2",
           abs(p_hat - 0.875) <= 5 * sigma, f"p_hat={p_hat:.4f}, 5 sigma={5 * sigma:.4f}")

    o_u, o_uadj = oracle_pair(T)
    accept = c3_tester(1, 2, o_u, o_uadj, 0.02, TesterConfig(epsilon=0.02, seed=seed))
    u = haar_random_unitary(2, 2, seed=seed)
    raw = pnorm_exact(u, 4).raw
    o_u, o_uadj = oracle_pair(u)
    reject = c3_tester(2, 2, o_u, o_uadj, 0.02, TesterConfig(epsilon=0.02, seed=seed))
    _check(results, "tester", "accepts T and rejects a certified-far Haar draw",
           accept.decision == 1 and reject.decision == 0 and raw <= 1 - 18 * 0.02,
           f"E_T={accept.estimate:.3f}, E_haar={reject.estimate:.3f}")

    o1, _ = oracle_pair(T)
    r1 = c3_tester(1, 2, o1, o1.conjugate_handle(), 0.04, TesterConfig(epsilon=0.04, seed=seed))
    o2, _ = oracle_pair(T)
    r2 = c3_tester(1, 2, o2, o2.conjugate_handle(), 0.04, TesterConfig(epsilon=0.04, seed=seed))
    _check(results, "tester", "fixed seed reproduces the tester verbatim",
           r1.estimate == r2.estimate and r1.decision == r2.decision)
    return results


def _suite_extremal(seed: int) -> list:
    results = []
    off = []
    for name, gate in battery():
        if gate.n > 1:
            continue
        value = pnorm_exact(gate, 4).value
        if abs(value - 1.0) > 1e-9:
            off.append(name)
    _check(results, "extremal", "single-qubit battery members are order-4 extremizers",
           not off, f"violators: {off}" if off else "")

    eps4 = near_extremal_epsilon(4)
    _check(results, "extremal", "near-extremal window at order 4 is 24^-4",
           abs(eps4 - 1 / 331776) < 1e-18)
    return results


SUITES = {
    "weyl": _suite_weyl,
    "uniformity": _suite_uniformity,
    "hierarchy": _suite_hierarchy,
    "tester": _suite_tester,
    "extremal": _suite_extremal,
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suites(name: str, seed: int = 0) -> list:
    """Run one named suite (or "all") and return its check results."""
    if name == "all":
        out = []
        for fn in SUITES.values():
            out.extend(fn(seed))
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    return SUITES[name](seed)
