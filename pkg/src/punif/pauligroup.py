"""Qudit Weyl operators, their product-phase cocycle, and the abstract
Heisenberg group they represent.

For a prime d let omega = e^{2 pi i / d} and let tau be the square root of
omega of order D (D = 2d for qubits, d otherwise). A label a = (u, v) in
F_d^{2n} names the Weyl operator

    W_a = tau^{-(|u_1 v_1| + ... + |u_n v_n|)} Z^u X^v,

where X^v|j> = |j+v> and Z^u|j> = omega^{u.j}|j>. Products obey

    W_a W_b = tau^{beta(a,b)} W_{a+b}      (product phase cocycle)
    W_a W_b = omega^{[a,b]} W_b W_a        (commutation)

with [a,b] the symplectic form. The cocycle has a closed form derived from
the X/Z commutation rule; the package also ships a dense-matrix extraction
oracle for it, which the test suite treats as ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from .galois import Fp, PhaseExp, SympVector, check_prime, phase_modulus
from .matcore import Unitary

__all__ = [
    "omega",
    "tau",
    "tau_exponent",
    "WeylFamily",
    "weyl_family",
    "weyl_matrix",
    "product_phase",
    "product_phase_dense",
    "commutator_phase",
    "PauliElement",
    "weil_rep",
]

PHASE_SNAP_TOL = 1e-9


@lru_cache(maxsize=None)
def omega(d: int) -> complex:
    """Primitive d-th root of unity e^{2 pi i / d}."""
    check_prime(d)
    return complex(np.exp(2j * np.pi / d))


@lru_cache(maxsize=None)
def tau(d: int) -> complex:
    """The phase generator: tau = i for d = 2, -e^{i pi / d} for odd d.

    The branch is pinned by two requirements checked here rather than
    trusted: tau^2 = omega and tau has multiplicative order exactly D.
    """
    check_prime(d)
    t = 1j if d == 2 else complex(-np.exp(1j * np.pi / d))
    D = phase_modulus(d)
    assert abs(t**2 - omega(d)) < 1e-12, "tau^2 must equal omega"
    assert abs(t**D - 1.0) < 1e-12, "tau^D must equal 1"
    assert all(abs(t**j - 1.0) > 1e-6 for j in range(1, D)), "tau must have order D"
    return t


def tau_exponent(z: complex, d: int, tol: float = PHASE_SNAP_TOL) -> PhaseExp:
    """Snap a complex number to the nearest power of tau.

    Raises ValueError when z is farther than tol from every tau^p; that means
    the caller's matrices do not actually differ by a tau power.
    """
    D = phase_modulus(d)
    t = tau(d)
    for p in range(D):
        if abs(z - t**p) <= tol:
            return PhaseExp(p, D)
    raise ValueError(f"{z!r} is not a power of tau(d={d}) within {tol:.1e}")


class WeylFamily:
    """All d^{2n} Weyl matrices for fixed (n, d), in generalized-permutation form.

    Row i of W_a has its single nonzero entry at column perm[a, i] with value
    phase[a, i]. This representation makes conjugation by W_a, Weyl-basis
    Fourier coefficients, and derivative traces cheap and vectorizable.
    Instances are built once per (n, d), cached, and shared read-only.
    """

    def __init__(self, n: int, d: int):
        check_prime(d)
        self.n = n
        self.d = d
        self.dim = d**n
        self.size = d ** (2 * n)
        self.D = phase_modulus(d)

        # digits[i] = base-d digits of basis index i, big-endian
        powers = d ** np.arange(n - 1, -1, -1, dtype=np.int64)
        digits = (np.arange(self.dim)[:, None] // powers[None, :]) % d

        labels = np.array(
            [a.u + a.v for a in SympVector.all_vectors(n, d)], dtype=np.int64
        )
        u_half, v_half = labels[:, :n], labels[:, n:]

        # W_a row i: nonzero at column (i - v), value tau^{-sum |u_k v_k|} omega^{u.i}
        col_digits = (digits[None, :, :] - v_half[:, None, :]) % d
        self.perm = (col_digits @ powers).astype(np.int64)
        norm_exp = (-np.sum((u_half * v_half) % d, axis=1)) % self.D
        u_dot = (digits @ u_half.T).T % d
        self.phase = tau(d) ** norm_exp[:, None] * omega(d) ** u_dot
        self.perm.setflags(write=False)
        self.phase.setflags(write=False)
        self._dense_stack = None

    def dense(self, index: int) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        out[np.arange(self.dim), self.perm[index]] = self.phase[index]
        return out

    @property
    def dense_stack(self) -> np.ndarray:
        """(size, dim, dim) array of all Weyl matrices, built lazily."""
        if self._dense_stack is None:
            stack = np.zeros((self.size, self.dim, self.dim), dtype=np.complex128)
            rows = np.arange(self.dim)
            stack[np.arange(self.size)[:, None], rows[None, :], self.perm] = self.phase
            stack.setflags(write=False)
            self._dense_stack = stack
        return self._dense_stack

    def label(self, index: int) -> SympVector:
        return SympVector.from_index(index, self.n, self.d)

    def conjugate(self, mat: np.ndarray, index: int) -> np.ndarray:
        """W_a M W_a^dag via the permutation representation."""
        p = self.perm[index]
        c = self.phase[index]
        return (c[:, None] * c.conj()[None, :]) * mat[np.ix_(p, p)]

    def derivative(self, mat: np.ndarray, index: int) -> np.ndarray:
        """The multiplicative derivative W_a M W_a^dag M^dag."""
        return self.conjugate(mat, index) @ mat.conj().T

    def derivative_traces(self, mat: np.ndarray) -> np.ndarray:
        """tr(W_a M W_a^dag M^dag) for every label a at once."""
        gathered = mat[self.perm[:, :, None], self.perm[:, None, :]]
        return np.einsum(
            "ai,aj,aij,ij->a", self.phase, self.phase.conj(), gathered, mat.conj()
        )

    def fourier(self, mat: np.ndarray) -> np.ndarray:
        """Weyl-basis coefficients <W_a, M> for every label a."""
        gathered = mat[np.arange(self.dim)[None, :], self.perm]
        return (self.phase.conj() * gathered).sum(axis=1) / self.dim


@lru_cache(maxsize=None)
def weyl_family(n: int, d: int) -> WeylFamily:
    return WeylFamily(n, d)


def weyl_matrix(a: SympVector) -> Unitary:
    """Dense Weyl operator for the label a (tensor product over qudits)."""
    fam = weyl_family(a.n, a.d)
    return Unitary(fam.dense(a.index), a.n, a.d)


def product_phase(a: SympVector, b: SympVector) -> PhaseExp:
    """The exponent beta(a, b) in W_a W_b = tau^{beta(a,b)} W_{a+b}.

    Closed form per coordinate, using canonical lifts: moving Z^{u'} past X^v
    costs omega^{-u'.v} = tau^{-2 u'.v}, and the tau normalizations of the
    three Weyl operators contribute the remaining terms. All representatives
    of the lift products agree mod D.
    """
    a._check(b)
    d = a.d
    D = phase_modulus(d)
    total = 0
    for ua, va, ub, vb in zip(a.u, a.v, b.u, b.v):
        total += ((ua + ub) % d) * ((va + vb) % d)
        total -= ua * va + ub * vb + 2 * ub * va
    return PhaseExp(total, D)


def product_phase_dense(a: SympVector, b: SympVector) -> PhaseExp:
    """Extract beta(a, b) from the dense matrices themselves.

    Divides W_a W_b entrywise by W_{a+b} at the first nonzero position and
    snaps the ratio to a tau power. Slower than the closed form but assumes
    nothing beyond the defining identity; the tests use it as ground truth.
    """
    a._check(b)
    fam = weyl_family(a.n, a.d)
    prod = fam.dense(a.index) @ fam.dense(b.index)
    target = fam.dense((a + b).index)
    i = 0
    j = fam.perm[(a + b).index][0]
    return tau_exponent(prod[i, j] / target[i, j], a.d)


def commutator_phase(a: SympVector, b: SympVector) -> Fp:
    """The omega exponent in W_a W_b = omega^{[a,b]} W_b W_a (= the symplectic form)."""
    return a.sform(b)


@dataclass(frozen=True)
class PauliElement:
    """Heisenberg-group element (t, a), realized on matrices as tau^t W_a.

    The group law is (t, a) . (t', a') = (t + t' + beta(a, a'), a + a'), so the
    realization is a faithful unitary representation (weil_rep).
    """

    t: PhaseExp
    a: SympVector

    def __post_init__(self):
        if self.t.modulus != phase_modulus(self.a.d):
            raise ValueError(
                f"phase modulus {self.t.modulus} does not match d={self.a.d}"
            )

    @classmethod
    def identity(cls, n: int, d: int) -> "PauliElement":
        return cls(PhaseExp(0, phase_modulus(d)), SympVector.zero(n, d))

    @property
    def is_identity(self) -> bool:
        return not self.t and self.a.is_zero

    def __mul__(self, other: "PauliElement") -> "PauliElement":
        return PauliElement(
            self.t + other.t + product_phase(self.a, other.a), self.a + other.a
        )

    def inverse(self) -> "PauliElement":
        return PauliElement(-self.t - product_phase(self.a, -self.a), -self.a)


def weil_rep(g: PauliElement) -> Unitary:
    """The matrix tau^t W_a carried by the Heisenberg element (t, a)."""
    w = weyl_matrix(g.a)
    return Unitary(tau(g.a.d) ** g.t.lift() * w.mat, g.a.n, g.a.d)
