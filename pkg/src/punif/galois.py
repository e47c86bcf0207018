"""Exact modular arithmetic: the prime field F_d, the phase ring Z_D, and
symplectic vectors in F_d^{2n}.

Residues are plain machine integers with checked moduli (d and n stay tiny
throughout the package, so correctness beats generality). Everything here is
immutable and hashable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "check_prime",
    "phase_modulus",
    "Fp",
    "PhaseExp",
    "SympVector",
    "symplectic_form",
]


@lru_cache(maxsize=None)
def check_prime(d: int) -> int:
    """Validate that d is a prime >= 2 (trial division) and return it."""
    if not isinstance(d, int) or isinstance(d, bool):
        raise TypeError(f"modulus must be an int, got {d!r}")
    if d < 2:
        raise ValueError(f"modulus must be >= 2, got {d}")
    if any(d % p == 0 for p in range(2, int(d**0.5) + 1)):
        raise ValueError(f"modulus must be prime, got {d}")
    return d


def phase_modulus(d: int) -> int:
    """Order D of the phase generator: 2d for d = 2, d for odd primes."""
    check_prime(d)
    return 2 * d if d == 2 else d


@dataclass(frozen=True, slots=True)
class Fp:
    """A residue mod a prime d."""

    value: int
    d: int

    def __post_init__(self):
        check_prime(self.d)
        object.__setattr__(self, "value", int(self.value) % self.d)

    def _check(self, other: "Fp"):
        if not isinstance(other, Fp):
            raise TypeError(f"expected Fp, got {type(other).__name__}")
        if self.d != other.d:
            raise ValueError(f"modulus mismatch: {self.d} vs {other.d}")

    def __add__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp(self.value + other.value, self.d)

    def __sub__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp(self.value - other.value, self.d)

    def __mul__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp(self.value * other.value, self.d)

    def __neg__(self) -> "Fp":
        return Fp(-self.value, self.d)

    def lift(self) -> int:
        """Canonical representative in {0, ..., d-1}."""
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0


@dataclass(frozen=True, slots=True)
class PhaseExp:
    """A residue mod D, the exponent ring of the tau phase."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"phase modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _check(self, other: "PhaseExp"):
        if not isinstance(other, PhaseExp):
            raise TypeError(f"expected PhaseExp, got {type(other).__name__}")
        if self.modulus != other.modulus:
            raise ValueError(f"phase modulus mismatch: {self.modulus} vs {other.modulus}")

    def __add__(self, other: "PhaseExp") -> "PhaseExp":
        self._check(other)
        return PhaseExp(self.value + other.value, self.modulus)

    def __sub__(self, other: "PhaseExp") -> "PhaseExp":
        self._check(other)
        return PhaseExp(self.value - other.value, self.modulus)

    def __neg__(self) -> "PhaseExp":
        return PhaseExp(-self.value, self.modulus)

    def lift(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0


@dataclass(frozen=True, slots=True)
class SympVector:
    """A point a = (u, v) of F_d^{2n}.

    u is the phase-type (Z) half and v the shift-type (X) half; keeping the
    halves separate matches how the Weyl normalization term sum_i |u_i v_i|
    is computed. Components are stored reduced mod d.
    """

    u: tuple
    v: tuple
    d: int

    def __post_init__(self):
        check_prime(self.d)
        u = tuple(int(x) % self.d for x in self.u)
        v = tuple(int(x) % self.d for x in self.v)
        if len(u) != len(v):
            raise ValueError(f"u and v must have equal length, got {len(u)} and {len(v)}")
        if not u:
            raise ValueError("need at least one qudit")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def is_zero(self) -> bool:
        return not any(self.u) and not any(self.v)

    @classmethod
    def zero(cls, n: int, d: int) -> "SympVector":
        return cls((0,) * n, (0,) * n, d)

    @property
    def index(self) -> int:
        """Position in the lexicographic enumeration of F_d^{2n}.

        The digits (u_1..u_n, v_1..v_n) are read big-endian in base d.
        """
        idx = 0
        for digit in self.u + self.v:
            idx = idx * self.d + digit
        return idx

    @classmethod
    def from_index(cls, index: int, n: int, d: int) -> "SympVector":
        if not 0 <= index < d ** (2 * n):
            raise ValueError(f"index {index} out of range for F_{d}^{2 * n}")
        digits = []
        for _ in range(2 * n):
            digits.append(index % d)
            index //= d
        digits.reverse()
        return cls(tuple(digits[:n]), tuple(digits[n:]), d)

    @staticmethod
    def all_vectors(n: int, d: int):
        """Iterate F_d^{2n} in lexicographic (index) order."""
        for digits in itertools.product(range(d), repeat=2 * n):
            yield SympVector(digits[:n], digits[n:], d)

    @staticmethod
    def random(rng, n: int, d: int) -> "SympVector":
        digits = rng.integers(0, d, size=2 * n)
        return SympVector(tuple(digits[:n]), tuple(digits[n:]), d)

    def _check(self, other: "SympVector"):
        if not isinstance(other, SympVector):
            raise TypeError(f"expected SympVector, got {type(other).__name__}")
        if self.d != other.d or self.n != other.n:
            raise ValueError(
                f"parameter mismatch: (n={self.n}, d={self.d}) vs (n={other.n}, d={other.d})"
            )

    def __add__(self, other: "SympVector") -> "SympVector":
        self._check(other)
        return SympVector(
            tuple(a + b for a, b in zip(self.u, other.u)),
            tuple(a + b for a, b in zip(self.v, other.v)),
            self.d,
        )

    def __sub__(self, other: "SympVector") -> "SympVector":
        return self + (-other)

    def __neg__(self) -> "SympVector":
        return SympVector(tuple(-x for x in self.u), tuple(-x for x in self.v), self.d)

    def sform(self, other: "SympVector") -> Fp:
        """Standard symplectic inner product [(u,v),(u',v')] = u.v' - u'.v."""
        self._check(other)
        total = sum(a * b for a, b in zip(self.u, other.v))
        total -= sum(a * b for a, b in zip(other.u, self.v))
        return Fp(total, self.d)

    def __str__(self):
        return f"({','.join(map(str, self.u))};{','.join(map(str, self.v))})"


def symplectic_form(a: SympVector, b: SympVector) -> Fp:
    """Module-level alias for SympVector.sform."""
    return a.sform(b)
