"""Pauli derivatives, the uniformity-norm ladder, and Weyl-basis Fourier
analysis.

The k-th uniformity norm of U is the 2^k-th root of the averaged trace of all
k-fold iterated derivatives d_h U = W_h U W_h^dag U^dag:

    ||U||_k^{2^k} = E_{h_1..h_k} tr(d_{h_k} ... d_{h_1} U) / d^n.

Exact evaluation recurses the nesting identity

    ||U||_k^{2^k} = E_h ||d_h U||_{k-1}^{2^{k-1}}

down to the explicit order-2 base case ||V||_2^4 = E_h |tr d_h V|^2 / d^{2n},
so the cost is d^{2n(k-2)} base evaluations instead of d^{2nk} naive terms.
Every unitary has norm at most 1, with equality exactly on the Clifford
hierarchy: ||U||_k = 1 iff U sits in level k-1.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .galois import SympVector
from .matcore import Operator, Unitary, frob_norm
from .pauligroup import WeylFamily, weyl_family

__all__ = [
    "BudgetExceededError",
    "pauli_derivative",
    "FourierTable",
    "fourier_coeffs",
    "p2_via_fourier",
    "NormReport",
    "pnorm_exact",
    "pnorm_sampled",
    "DEFAULT_EXACT_BUDGET",
]

DEFAULT_EXACT_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """Exact-mode evaluation would exceed its base-case budget."""

    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"exact mode needs {needed} base-case evaluations (budget {budget}); "
            "use pnorm_sampled for a Monte Carlo estimate"
        )


def pauli_derivative(u: Unitary, h: SympVector) -> Unitary:
    """The multiplicative derivative of U in direction h: W_h U W_h^dag U^dag.

    Sends level-k hierarchy elements to level k-1; on a Weyl operator W_a it
    collapses to the scalar omega^{[h,a]} times the identity.
    """
    if (h.n, h.d) != (u.n, u.d):
        raise ValueError(f"direction (n={h.n}, d={h.d}) does not match operator (n={u.n}, d={u.d})")
    fam = weyl_family(u.n, u.d)
    return Unitary(fam.derivative(u.mat, h.index), u.n, u.d)


class FourierTable:
    """Weyl-basis expansion of an operator: coeff(a) = <W_a, U>.

    Satisfies sum_a |coeff(a)|^2 = <U, U> (Parseval), which is 1 for unitary U.
    """

    def __init__(self, coeffs: np.ndarray, n: int, d: int):
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        coeffs.setflags(write=False)
        self.coeffs = coeffs
        self.n = n
        self.d = d

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, a: SympVector) -> complex:
        return complex(self.coeffs[a.index])

    def items(self):
        for index, c in enumerate(self.coeffs):
            yield SympVector.from_index(index, self.n, self.d), complex(c)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.abs(self.coeffs)

    def l2_mass(self) -> float:
        return float(np.sum(self.amplitudes**2))

    def l4_mass(self) -> float:
        return float(np.sum(self.amplitudes**4))

    def argmax_label(self) -> SympVector:
        return SympVector.from_index(int(np.argmax(self.amplitudes)), self.n, self.d)

    def reconstruct(self) -> Operator:
        """Resynthesize sum_a coeff(a) W_a."""
        fam = weyl_family(self.n, self.d)
        return Operator(np.tensordot(self.coeffs, fam.dense_stack, axes=1), self.n, self.d)


def fourier_coeffs(u: Operator) -> FourierTable:
    fam = weyl_family(u.n, u.d)
    return FourierTable(fam.fourier(u.mat), u.n, u.d)


def p2_via_fourier(u: Unitary) -> float:
    """Fourth power of the order-2 norm as the L^4 mass of the Fourier table.

    Independent route to the same quantity as pnorm_exact(u, 2).raw: the
    derivative-trace average collapses to sum_a |coeff(a)|^4.
    """
    if not isinstance(u, Unitary):
        raise TypeError("p2_via_fourier expects a certified Unitary")
    return fourier_coeffs(u).l4_mass()


@dataclass
class NormReport:
    """Result of a uniformity-norm evaluation.

    raw is the 2^k-th power (the quantity the estimators see); value is its
    2^k-th root, clamped to [0, 1] for unitary input. pre_clamp keeps the
    unclamped expectation for diagnostics and is not serialized.
    """

    order: int
    value: float
    raw: float
    mode: str
    term_count: int | None = None
    samples: int | None = None
    stderr: float | None = None
    runtime_ms: float = 0.0
    pre_clamp: float = 0.0

    def to_json_dict(self) -> dict:
        out = {
            "order": self.order,
            "value": self.value,
            "raw": self.raw,
            "mode": self.mode,
        }
        if self.mode == "exact":
            out["term_count"] = self.term_count
        else:
            out["samples"] = self.samples
            out["stderr"] = self.stderr
        out["runtime_ms"] = self.runtime_ms
        return out


def _p1_raw(mat: np.ndarray, dim: int) -> float:
    return float(abs(np.trace(mat)) ** 2 / dim**2)


def _p2_raw(mat: np.ndarray, fam: WeylFamily) -> float:
    traces = fam.derivative_traces(mat)
    return float(np.mean(np.abs(traces) ** 2) / fam.dim**2)


def _raw_recursive(mat: np.ndarray, fam: WeylFamily, k: int) -> float:
    # DFS over direction prefixes in lexicographic order; each prefix
    # derivative is materialized once and shared by its subtree.
    if k == 2:
        return _p2_raw(mat, fam)
    total = 0.0
    for index in range(fam.size):
        total += _raw_recursive(fam.derivative(mat, index), fam, k - 1)
    return total / fam.size


def _finalize(u, order, raw, mode, started, **extra) -> NormReport:
    clamped = raw
    if isinstance(u, Unitary):
        clamped = min(max(raw, 0.0), 1.0)
    value = clamped ** (2.0**-order)
    return NormReport(
        order=order,
        value=value,
        raw=clamped,
        mode=mode,
        runtime_ms=(time.perf_counter() - started) * 1e3,
        pre_clamp=raw,
        **extra,
    )


def pnorm_exact(u: Operator, k: int, budget: int = DEFAULT_EXACT_BUDGET) -> NormReport:
    """Exact uniformity norm of order k.

    Refuses (BudgetExceededError) when the recursion would need more than
    `budget` order-2 base evaluations, i.e. when d^{2n(k-2)} is too large.
    General operators are accepted; the [0, 1] clamp applies only to
    certified unitaries, where it is a theorem.
    """
    if k < 1:
        raise ValueError(f"order must be >= 1, got {k}")
    started = time.perf_counter()
    fam = weyl_family(u.n, u.d)
    if k >= 3:
        needed = fam.size ** (k - 2)
        if needed > budget:
            raise BudgetExceededError(needed, budget)
    if k == 1:
        raw = _p1_raw(u.mat, fam.dim)
    else:
        raw = _raw_recursive(u.mat, fam, k)
    return _finalize(u, k, raw, "exact", started, term_count=fam.size**k)


def pnorm_sampled(u: Operator, k: int, num_samples: int, seed=None) -> NormReport:
    """Monte Carlo estimate of the order-k norm (k >= 2).

    Samples the outer k-2 directions uniformly and evaluates the order-2 base
    case exactly on the iterated derivative, which is unbiased for raw and has
    lower variance than sampling all k directions. Deterministic under seed.
    """
    if k < 2:
        raise ValueError(f"sampled mode needs order >= 2, got {k}")
    if num_samples < 1:
        raise ValueError(f"need at least one sample, got {num_samples}")
    started = time.perf_counter()
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    fam = weyl_family(u.n, u.d)
    draws = np.empty(num_samples)
    for j in range(num_samples):
        mat = u.mat
        for _ in range(k - 2):
            mat = fam.derivative(mat, int(rng.integers(fam.size)))
        draws[j] = _p2_raw(mat, fam)
    estimate = float(draws.mean())
    stderr = float(draws.std(ddof=1) / math.sqrt(num_samples)) if num_samples > 1 else 0.0
    return _finalize(u, k, estimate, "sampled", started, samples=num_samples, stderr=stderr)
