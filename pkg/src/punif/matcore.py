"""Dense complex operators on (C^d)^{tensor n} and the normalized
Hilbert-Schmidt geometry.

Conventions: <U, V> = tr(U^dag V) / d^n (conjugate-linear in the first slot),
||U||_2 = sqrt(<U, U>), so every unitary has norm exactly 1. Dimensions stay
<= 32 in practice; plain numpy kernels are all the performance this needs.

Operators are immutable after construction (read-only backing arrays), so
instances can be shared freely across threads.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .galois import check_prime

__all__ = [
    "DEFAULT_UNITARY_TOL",
    "NonUnitaryError",
    "Operator",
    "Unitary",
    "identity",
    "hs_inner",
    "frob_norm",
    "phase_min_distance",
    "haar_random_unitary",
    "matrix_to_json",
    "matrix_from_json",
    "load_matrix",
    "save_matrix",
]

DEFAULT_UNITARY_TOL = 1e-10


class NonUnitaryError(ValueError):
    """Raised when a matrix fails its unitarity check."""


class Operator:
    """An immutable d^n x d^n complex matrix tagged with (n, d)."""

    __slots__ = ("mat", "n", "d")

    def __init__(self, mat, n: int, d: int):
        check_prime(d)
        arr = np.array(mat, dtype=np.complex128)
        dim = d**n
        if arr.shape != (dim, dim):
            raise ValueError(f"expected shape ({dim}, {dim}) for n={n}, d={d}, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix has non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "mat", arr)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def _check(self, other: "Operator"):
        if not isinstance(other, Operator):
            raise TypeError(f"expected Operator, got {type(other).__name__}")
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError(
                f"operator mismatch: (n={self.n}, d={self.d}) vs (n={other.n}, d={other.d})"
            )

    def __matmul__(self, other: "Operator") -> "Operator":
        self._check(other)
        return Operator(self.mat @ other.mat, self.n, self.d)

    def __add__(self, other: "Operator") -> "Operator":
        self._check(other)
        return Operator(self.mat + other.mat, self.n, self.d)

    def __sub__(self, other: "Operator") -> "Operator":
        self._check(other)
        return Operator(self.mat - other.mat, self.n, self.d)

    def __mul__(self, scalar) -> "Operator":
        return Operator(self.mat * complex(scalar), self.n, self.d)

    __rmul__ = __mul__

    def __neg__(self) -> "Operator":
        return self * (-1)

    def adjoint(self) -> "Operator":
        return Operator(self.mat.conj().T, self.n, self.d)

    def tensor(self, other: "Operator") -> "Operator":
        if self.d != other.d:
            raise ValueError(f"tensor factors need equal d, got {self.d} and {other.d}")
        return Operator(np.kron(self.mat, other.mat), self.n + other.n, self.d)

    def trace(self) -> complex:
        return complex(np.trace(self.mat))

    def as_unitary(self, tol: float = DEFAULT_UNITARY_TOL) -> "Unitary":
        return Unitary(self.mat, self.n, self.d, tol=tol)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, d={self.d}, dim={self.dim})"


class Unitary(Operator):
    """An Operator certified unitary at construction.

    unitarity_defect is ||U^dag U - I||_2 in the normalized norm; construction
    fails with NonUnitaryError when it exceeds the tolerance.
    """

    __slots__ = ("unitarity_defect",)

    def __init__(self, mat, n: int, d: int, tol: float = DEFAULT_UNITARY_TOL):
        super().__init__(mat, n, d)
        gram = self.mat.conj().T @ self.mat
        defect = float(np.linalg.norm(gram - np.eye(self.dim)) / np.sqrt(self.dim))
        if defect > tol:
            raise NonUnitaryError(f"unitarity defect {defect:.3e} exceeds tolerance {tol:.1e}")
        object.__setattr__(self, "unitarity_defect", defect)


def identity(n: int, d: int) -> Unitary:
    return Unitary(np.eye(d**n), n, d)


def hs_inner(u: Operator, v: Operator) -> complex:
    """Normalized Hilbert-Schmidt inner product tr(U^dag V) / d^n."""
    u._check(v)
    return complex(np.vdot(u.mat, v.mat) / u.dim)


def frob_norm(a: Operator) -> float:
    """Normalized Frobenius norm sqrt(<A, A>); equals 1 on unitaries."""
    return float(np.linalg.norm(a.mat) / np.sqrt(a.dim))


def phase_min_distance(u: Unitary, v: Unitary) -> tuple:
    """Squared distance from U to the phase orbit of V, with the optimal phase.

    Returns (dist_sq, theta) where dist_sq = min_theta ||U - e^{i theta} V||_2^2
    = 2 - 2|<U, V>| and theta attains the minimum (e^{i theta} <U,V> = |<U,V>|).
    """
    for w in (u, v):
        if not isinstance(w, Unitary):
            raise NonUnitaryError("phase_min_distance requires certified unitaries")
    ip = hs_inner(u, v)
    dist_sq = max(2.0 - 2.0 * abs(ip), 0.0)
    theta = 0.0 if abs(ip) == 0.0 else float(-np.angle(ip))
    return dist_sq, theta


def haar_random_unitary(n: int, d: int, seed=None) -> Unitary:
    """Haar-distributed unitary on d^n dimensions, deterministic under seed.

    Standard construction: QR-factor a complex Gaussian matrix and fix the
    phases of R's diagonal so the distribution is exactly Haar.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    dim = check_prime(d) ** n
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z / np.sqrt(2.0))
    diag = np.diagonal(r)
    q = q * (diag / np.abs(diag))[None, :]
    return Unitary(q, n, d)


def matrix_to_json(op: Operator) -> dict:
    """Serialize to the interchange schema {"n", "d", "re", "im"}."""
    return {
        "n": op.n,
        "d": op.d,
        "re": op.mat.real.tolist(),
        "im": op.mat.imag.tolist(),
    }


def matrix_from_json(obj: dict, tol: float = DEFAULT_UNITARY_TOL) -> Unitary:
    """Parse the {"n", "d", "re", "im"} schema, validating unitarity."""
    try:
        n, d = int(obj["n"]), int(obj["d"])
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad matrix JSON: {exc}") from exc
    if re.shape != im.shape:
        raise ValueError(f"re/im shape mismatch: {re.shape} vs {im.shape}")
    return Unitary(re + 1j * im, n, d, tol=tol)


def load_matrix(path, tol: float = DEFAULT_UNITARY_TOL) -> Unitary:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_json(json.load(fh), tol=tol)


def save_matrix(path, op: Operator):
    Path(path).write_text(json.dumps(matrix_to_json(op), indent=2) + "\n", encoding="utf-8")
