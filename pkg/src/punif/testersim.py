"""Measurement-level simulation of the norm-bias sampler and the level-3
hierarchy tester, with symbolic oracle query accounting.

The bias sampler returns 1 with probability (1 + ||U||_k^{2^k}) / 2: at order
1 it swap-tests the maximally entangled state against (U x I) applied to it
(the overlap is tr(U)/d^n), and at higher orders it recurses on a uniformly
sampled derivative. The level-3 tester repeats the order-4 sampler enough
times to pin the norm to within epsilon and thresholds the estimate at
1 - 17 epsilon.

Bernoulli outcomes are drawn from exactly computed amplitudes; an optional
circuit mode builds the full ancilla + two-register swap-test state for
cross-validation. Query counts are tracked symbolically per oracle
application (matrix caching never changes the count).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .galois import SympVector
from .matcore import Unitary
from .pauligroup import weyl_family

__all__ = [
    "EntangledState",
    "prepare_max_entangled",
    "swap_test",
    "swap_test_probability",
    "QueryCounter",
    "OracleHandle",
    "oracle_pair",
    "derivative_oracle",
    "pnorm_bias",
    "TesterConfig",
    "TesterReport",
    "c3_tester",
]

MAX_TESTER_EPSILON = 0.04


class EntangledState:
    """A unit vector on two n-qudit registers (dimension d^{2n}).

    Basis index j * d^n + i means |j> on the left register and |i> on the
    right one.
    """

    def __init__(self, amps, n: int, d: int):
        amps = np.array(amps, dtype=np.complex128).ravel()
        dim = d ** (2 * n)
        if amps.shape != (dim,):
            raise ValueError(f"expected {dim} amplitudes for n={n}, d={d}, got {amps.shape}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"state norm {norm} is not 1")
        amps.setflags(write=False)
        self.amps = amps
        self.n = n
        self.d = d

    @property
    def register_dim(self) -> int:
        return self.d**self.n

    def overlap(self, other: "EntangledState") -> complex:
        if (self.n, self.d) != (other.n, other.d):
            raise ValueError("state shape mismatch")
        return complex(np.vdot(self.amps, other.amps))


def prepare_max_entangled(n: int, d: int) -> EntangledState:
    """|Phi> = d^{-n/2} sum_i |i, i>; its reduced state on either register is
    maximally mixed, and <Phi|(U x I)|Phi> = tr(U)/d^n."""
    dim = d**n
    amps = np.eye(dim, dtype=np.complex128).ravel() / math.sqrt(dim)
    return EntangledState(amps, n, d)


def _apply_left(mat: np.ndarray, state: EntangledState) -> EntangledState:
    dim = state.register_dim
    out = mat @ state.amps.reshape(dim, dim)
    return EntangledState(out.ravel(), state.n, state.d)


def swap_test_probability(psi: EntangledState, phi: EntangledState) -> float:
    """Probability that a swap test on |psi>, |phi> reports them equal."""
    return 0.5 * (1.0 + abs(psi.overlap(phi)) ** 2)


def _swap_test_circuit_probability(psi: EntangledState, phi: EntangledState) -> float:
    """The same probability via the explicit ancilla + controlled-swap
    statevector (dimension 2 * d^{4n}); used to cross-validate the exact mode."""
    joint = np.kron(psi.amps, phi.amps)
    m = joint.size
    state = np.zeros((2, m), dtype=np.complex128)
    state[0] = joint / math.sqrt(2.0)
    state[1] = joint / math.sqrt(2.0)  # ancilla Hadamard
    side = psi.amps.size
    state[1] = state[1].reshape(side, side).T.ravel()  # controlled swap on |1>
    plus = (state[0] + state[1]) / math.sqrt(2.0)  # second Hadamard, ancilla |0> part
    return float(np.vdot(plus, plus).real)


def swap_test(psi: EntangledState, phi: EntangledState, rng, method: str = "exact") -> int:
    """Sample one swap-test outcome: 1 with probability (1 + |<psi|phi>|^2)/2.

    method="circuit" computes the probability from the explicit swap-test
    statevector instead of the overlap formula (identical statistics).
    """
    if method == "exact":
        p = swap_test_probability(psi, phi)
    elif method == "circuit":
        p = _swap_test_circuit_probability(psi, phi)
    else:
        raise ValueError(f"unknown method {method!r}")
    return int(rng.random() < p)


@dataclass
class QueryCounter:
    """Running tally of base-oracle applications (U and U^dag separately)."""

    u: int = 0
    u_adjoint: int = 0

    @property
    def total(self) -> int:
        return self.u + self.u_adjoint


class _OracleRoot:
    """Shared state for a family of handles over one base unitary: the query
    counter and the cache of materialized derivative matrices."""

    def __init__(self, base: Unitary):
        self.base = base
        self.family = weyl_family(base.n, base.d)
        self.counter = QueryCounter()
        self._cache: dict = {(): base.mat}

    def materialize(self, stack: tuple) -> np.ndarray:
        if stack not in self._cache:
            parent = self.materialize(stack[:-1])
            self._cache[stack] = self.family.derivative(parent, stack[-1].index)
        return self._cache[stack]


class OracleHandle:
    """Query-counted access to U, U^dag, or any nested derivative thereof.

    The handle materializes its matrix lazily (cached on the shared root);
    query accounting is symbolic: applying a depth-m derivative costs 2^m
    base queries split evenly between U and U^dag (one query to U alone at
    depth 0), because each derivative level uses its parent once plain and
    once adjoint.
    """

    def __init__(self, root: _OracleRoot, stack: tuple = (), adjoint: bool = False):
        self._root = root
        self.stack = stack
        self.adjoint = adjoint

    @property
    def n(self) -> int:
        return self._root.base.n

    @property
    def d(self) -> int:
        return self._root.base.d

    @property
    def depth(self) -> int:
        return len(self.stack)

    @property
    def queries(self) -> QueryCounter:
        return self._root.counter

    def matrix(self) -> np.ndarray:
        """Materialized matrix (diagnostic peek; does not count queries)."""
        mat = self._root.materialize(self.stack)
        return mat.conj().T if self.adjoint else mat

    def derivative(self, h: SympVector) -> "OracleHandle":
        if self.adjoint:
            raise ValueError("derive the plain handle, then take .conjugate_handle()")
        if (h.n, h.d) != (self.n, self.d):
            raise ValueError("direction does not match the oracle's (n, d)")
        return OracleHandle(self._root, self.stack + (h,), False)

    def conjugate_handle(self) -> "OracleHandle":
        return OracleHandle(self._root, self.stack, not self.adjoint)

    def _count_application(self):
        counter = self._root.counter
        if self.depth == 0:
            if self.adjoint:
                counter.u_adjoint += 1
            else:
                counter.u += 1
        else:
            each = 2 ** (self.depth - 1)
            counter.u += each
            counter.u_adjoint += each

    def apply_to(self, state: EntangledState) -> EntangledState:
        """Apply (O x I) to a two-register state, consuming queries."""
        self._count_application()
        return _apply_left(self.matrix(), state)


def oracle_pair(base: Unitary) -> tuple:
    """Handles for U and U^dag sharing one query counter and cache."""
    root = _OracleRoot(base)
    return OracleHandle(root), OracleHandle(root, adjoint=True)


def derivative_oracle(oracle: OracleHandle, h: SympVector) -> OracleHandle:
    """Oracle for the derivative in direction h of whatever `oracle` computes."""
    return oracle.derivative(h)


def pnorm_bias(
    n: int,
    d: int,
    k: int,
    o_u: OracleHandle,
    o_uadj: OracleHandle,
    rng,
    swap_method: str = "exact",
) -> int:
    """One run of the order-k norm-bias sampler; returns a single bit.

    Over the joint randomness (direction sampling plus the swap-test
    Bernoulli draw) the bit is 1 with probability (1 + ||U||_k^{2^k}) / 2.
    """
    if k < 1:
        raise ValueError(f"order must be >= 1, got {k}")
    if (o_u.n, o_u.d) != (n, d):
        raise ValueError("oracle does not match (n, d)")
    if k == 1:
        phi0 = prepare_max_entangled(n, d)
        shifted = o_u.apply_to(phi0)
        return swap_test(phi0, shifted, rng, method=swap_method)
    h = SympVector.random(rng, n, d)
    derived = o_u.derivative(h)
    return pnorm_bias(n, d, k - 1, derived, derived.conjugate_handle(), rng, swap_method)


@dataclass
class TesterConfig:
    """Knobs for the repeated-sampling tester.

    repetitions defaults to ceil(ln(2 / (1 - confidence)) / (2 epsilon^2)),
    the Hoeffding count for estimating the acceptance rate to within epsilon
    on each side.
    """

    __test__ = False  # not a pytest class, despite the name

    epsilon: float
    repetitions: int | None = None
    confidence: float = 0.9
    seed: int | None = None

    def __post_init__(self):
        if not 0.0 < self.epsilon <= MAX_TESTER_EPSILON:
            raise ValueError(
                f"epsilon must be in (0, {MAX_TESTER_EPSILON}], got {self.epsilon}"
            )
        if not 0.5 < self.confidence < 1.0:
            raise ValueError(f"confidence must be in (0.5, 1), got {self.confidence}")
        if self.repetitions is None:
            c = math.log(2.0 / (1.0 - self.confidence)) / 2.0
            self.repetitions = math.ceil(c / self.epsilon**2)


@dataclass
class TesterReport:
    """Outcome of one tester invocation, JSON-ready."""

    __test__ = False

    n: int
    d: int
    k: int
    epsilon: float
    repetitions: int
    estimate: float
    decision: int
    queries_u: int
    queries_uadj: int
    seed: int | None
    runtime_ms: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "epsilon": self.epsilon,
            "repetitions": self.repetitions,
            "E": self.estimate,
            "decision": self.decision,
            "queries_U": self.queries_u,
            "queries_Uadj": self.queries_uadj,
            "seed": self.seed,
            "runtime_ms": self.runtime_ms,
        }


def c3_tester(
    n: int,
    d: int,
    o_u: OracleHandle,
    o_uadj: OracleHandle,
    epsilon: float,
    config: TesterConfig | None = None,
    rng=None,
) -> TesterReport:
    """Decide proximity to hierarchy level 3.

    Runs the order-4 bias sampler repeatedly, forms the unbiased estimate
    E = 2 * (fraction of ones) - 1 of ||U||_4^{16}, and outputs 0 when
    E <= 1 - 17 epsilon, 1 otherwise. Fixed seeds reproduce the outcome
    sequence bit for bit.
    """
    started = time.perf_counter()
    if config is None:
        config = TesterConfig(epsilon=epsilon)
    elif abs(config.epsilon - epsilon) > 0:
        raise ValueError("epsilon argument disagrees with config.epsilon")
    if rng is None:
        rng = np.random.default_rng(config.seed)
    before_u, before_uadj = o_u.queries.u, o_u.queries.u_adjoint
    ones = sum(
        pnorm_bias(n, d, 4, o_u, o_uadj, rng) for _ in range(config.repetitions)
    )
    estimate = 2.0 * ones / config.repetitions - 1.0
    decision = 0 if estimate <= 1.0 - 17.0 * epsilon else 1
    return TesterReport(
        n=n,
        d=d,
        k=4,
        epsilon=epsilon,
        repetitions=config.repetitions,
        estimate=estimate,
        decision=decision,
        queries_u=o_u.queries.u - before_u,
        queries_uadj=o_u.queries.u_adjoint - before_uadj,
        seed=config.seed,
        runtime_ms=(time.perf_counter() - started) * 1e3,
    )
