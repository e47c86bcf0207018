"""Clifford-hierarchy membership, desk-scale level enumeration, Clifford
fidelity, and checks for the separation / direct / inverse inequalities.

Levels are characterized by derivatives: level 0 is the phase circle times
the identity, and U sits in level k iff every derivative W_h U W_h^dag U^dag
sits in level k-1. Membership therefore recurses over ALL d^{2n} directions
per level (generator sufficiency is an open conjecture, so it is not
assumed). Level sets carry a completeness flag because level 3 is only
enumerated as a candidate family; fidelity over such a set is a lower bound.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .galois import SympVector
from .gates import cnot_gate, cz_gate, fourier_gate, phase_gate, t_gate
from .matcore import Unitary, frob_norm, hs_inner, identity
from .pauligroup import weyl_family, weyl_matrix
from .uniformity import fourier_coeffs, pnorm_exact

__all__ = [
    "DEFAULT_MEMBERSHIP_TOL",
    "DEFAULT_MEMBERSHIP_BUDGET",
    "OutOfScopeError",
    "Verdict",
    "is_phase_identity",
    "is_pauli",
    "in_level",
    "LevelSet",
    "enumerate_level",
    "FidelityResult",
    "fidelity",
    "SeparationReport",
    "separation_check",
    "InverseBoundsReport",
    "verify_inverse_bounds",
    "near_extremal_epsilon",
    "inverse_constant",
    "battery",
]

DEFAULT_MEMBERSHIP_TOL = 1e-8
DEFAULT_MEMBERSHIP_BUDGET = 2_000_000
_PHASE_DEDUP_TOL = 1e-8  # squared phase-min distance identifying two representatives

CACHE_FORMAT = 1


class OutOfScopeError(ValueError):
    """Requested parameters are outside the supported desk-scale ranges."""


def near_extremal_epsilon(k: int) -> float:
    """Largest norm deficit 1 - ||U||^{2^k} the order-k inverse bound covers."""
    return 24.0**-k


def inverse_constant(k: int) -> float:
    """Constant C_k in the near-extremal bound F >= 1 - C_k * eps."""
    return 24.0 ** (k - 1)


@dataclass
class Verdict:
    """Outcome of a membership decision.

    defect is the worst residual encountered, rescaled to top-level units, so
    accepted implies defect <= tolerance exactly. undecided verdicts mean the
    recursion budget was exhausted; they are not rejections.
    """

    accepted: bool
    level: int
    tolerance: float
    defect: float
    witness: object = None
    undecided: bool = False

    def to_json_dict(self) -> dict:
        witness = self.witness
        if isinstance(witness, SympVector):
            witness = {"label": str(witness)}
        elif isinstance(witness, float):
            witness = {"theta": witness}
        return {
            "accepted": self.accepted,
            "undecided": self.undecided,
            "level": self.level,
            "tolerance": self.tolerance,
            "defect": self.defect if math.isfinite(self.defect) else None,
            "witness": witness,
        }


def _phase_identity_defect(mat: np.ndarray, dim: int) -> tuple:
    """Distance min_theta ||M - e^{i theta} I||_2 and the minimizing theta.

    Evaluated as the norm of the difference at the optimal phase rather than
    via sqrt(2 - 2|tr M|/dim), which loses half the significand to
    cancellation when M is within ~1e-8 of a phase identity.
    """
    tr = np.trace(mat)
    if abs(tr) == 0.0:
        return math.sqrt(2.0), 0.0
    phase = tr / abs(tr)
    defect = float(np.linalg.norm(mat - phase * np.eye(dim)) / math.sqrt(dim))
    return defect, float(np.angle(phase))


def is_phase_identity(u: Unitary, tol: float = DEFAULT_MEMBERSHIP_TOL) -> Verdict:
    """Level-0 check: is U a global phase times the identity?

    The witness is the phase theta minimizing ||U - e^{i theta} I||_2.
    """
    defect, theta = _phase_identity_defect(u.mat, u.dim)
    return Verdict(
        accepted=defect <= tol, level=0, tolerance=tol, defect=defect, witness=theta
    )


def is_pauli(u: Unitary, tol: float = DEFAULT_MEMBERSHIP_TOL) -> Verdict:
    """Fourier route to level 1: U is a phase times a Weyl operator iff its
    Weyl expansion has a single coefficient of modulus 1.
    """
    amps = fourier_coeffs(u).amplitudes
    best = int(np.argmax(amps))
    defect = float(1.0 - amps[best])
    # Parseval rules out a second near-unit coefficient for tol < 1 - 1/sqrt(2)
    accepted = defect <= tol and int(np.sum(amps >= 1.0 - tol)) == 1
    witness = SympVector.from_index(best, u.n, u.d) if accepted else None
    return Verdict(accepted=accepted, level=1, tolerance=tol, defect=defect, witness=witness)


def _membership_defect(mat: np.ndarray, fam, k: int, tol: float) -> float:
    if k == 0:
        return _phase_identity_defect(mat, fam.dim)[0]
    worst = 0.0
    for index in range(fam.size):
        child_defect = _membership_defect(fam.derivative(mat, index), fam, k - 1, 2.0 * tol)
        worst = max(worst, child_defect / 2.0)
        if worst > tol:  # early reject; defect is the worst residual encountered
            break
    return worst


def in_level(
    u: Unitary,
    k: int,
    tol: float = DEFAULT_MEMBERSHIP_TOL,
    budget: int = DEFAULT_MEMBERSHIP_BUDGET,
) -> Verdict:
    """Decide membership of U in hierarchy level k by definitional recursion.

    Each recursion level doubles the acceptance tolerance (the triangle
    inequality doubles residuals per derivative), and child defects are
    halved on the way back up so the reported defect stays in top-level
    units. Exceeds-budget calls return an undecided verdict distinct from a
    rejection.
    """
    if k < 0:
        raise ValueError(f"level must be >= 0, got {k}")
    if k == 0:
        return is_phase_identity(u, tol)
    fam = weyl_family(u.n, u.d)
    needed = sum(fam.size**j for j in range(1, k + 1))
    if needed > budget:
        return Verdict(
            accepted=False, level=k, tolerance=tol, defect=math.inf, undecided=True
        )
    defect = _membership_defect(u.mat, fam, k, tol)
    return Verdict(accepted=defect <= tol, level=k, tolerance=tol, defect=defect)


# ---------------------------------------------------------------------------
# Level enumeration


def _phase_canonical(mat: np.ndarray) -> np.ndarray:
    """Divide out the global phase, normalizing the first near-maximal entry
    to be real positive. Stable under 1e-9-scale numerical noise."""
    flat = mat.ravel()
    mags = np.abs(flat)
    pivot = flat[int(np.argmax(mags >= mags.max() - 1e-6))]
    return mat * (abs(pivot) / pivot)


def _canonical_key(mat: np.ndarray, decimals: int = 6) -> bytes:
    canon = _phase_canonical(mat)
    # +0.0 collapses IEEE -0.0 so both zero signs hash identically
    re = np.round(canon.real, decimals) + 0.0
    im = np.round(canon.imag, decimals) + 0.0
    return re.tobytes() + im.tobytes()


def _closure_mod_phase(generators: list, dim: int, max_size: int) -> list:
    """Breadth-first closure of <generators> up to global phase."""
    start = np.eye(dim, dtype=np.complex128)
    reps = {_canonical_key(start): start}
    frontier = [start]
    while frontier:
        new = []
        for mat in frontier:
            for gen in generators:
                cand = _phase_canonical(gen @ mat)
                key = _canonical_key(cand)
                if key not in reps:
                    reps[key] = cand
                    new.append(cand)
        frontier = new
        if len(reps) > max_size:
            raise RuntimeError(f"closure exceeded {max_size} elements; generators wrong?")
    return list(reps.values())


class LevelSet:
    """Representatives of a hierarchy level, each stored up to global phase.

    completeness is "exact" when the listing is provably the whole level and
    "candidate-family" when it is only a verified subset (level 3); every
    downstream quantity inherits the flag.
    """

    def __init__(self, level, n, d, completeness, representatives, construction):
        self.level = level
        self.n = n
        self.d = d
        self.completeness = completeness
        self.representatives = list(representatives)
        self.construction = construction
        self._flat = None

    def __len__(self):
        return len(self.representatives)

    @property
    def is_complete(self) -> bool:
        return self.completeness == "exact"

    @property
    def rep_flat(self) -> np.ndarray:
        """(count, dim^2) stack of flattened representatives."""
        if self._flat is None:
            self._flat = np.stack([r.mat.ravel() for r in self.representatives])
            self._flat.setflags(write=False)
        return self._flat

    def to_json_dict(self) -> dict:
        return {
            "format": CACHE_FORMAT,
            "level": self.level,
            "n": self.n,
            "d": self.d,
            "completeness": self.completeness,
            "construction": self.construction,
            "count": len(self),
            "reps": [
                {"re": r.mat.real.tolist(), "im": r.mat.imag.tolist()}
                for r in self.representatives
            ],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "LevelSet":
        if obj.get("format") != CACHE_FORMAT:
            raise ValueError(f"unsupported cache format {obj.get('format')}")
        n, d = obj["n"], obj["d"]
        reps = [
            Unitary(np.array(r["re"]) + 1j * np.array(r["im"]), n, d)
            for r in obj["reps"]
        ]
        if len(reps) != obj["count"]:
            raise ValueError("cache count mismatch")
        return cls(obj["level"], n, d, obj["completeness"], reps, obj["construction"])


def _clifford_count_mod_phase(n: int, d: int) -> int:
    # |Sp(2n, d)| * d^{2n}; only needed for n = 1: d^3 (d^2 - 1)
    assert n == 1
    return d**3 * (d**2 - 1)


def _build_level1(n: int, d: int) -> LevelSet:
    reps = [weyl_matrix(a) for a in SympVector.all_vectors(n, d)]
    return LevelSet(1, n, d, "exact", reps, f"weyl-labels:n={n},d={d}")


def _build_level2(d: int) -> LevelSet:
    gens = [
        fourier_gate(d).mat,
        phase_gate(d).mat,
        weyl_matrix(SympVector((0,), (1,), d)).mat,
        weyl_matrix(SympVector((1,), (0,), d)).mat,
    ]
    mats = _closure_mod_phase(gens, d, max_size=4 * _clifford_count_mod_phase(1, d))
    expected = _clifford_count_mod_phase(1, d)
    if len(mats) != expected:
        raise RuntimeError(f"closure found {len(mats)} elements, expected {expected}")
    reps = [Unitary(m, 1, d) for m in mats]
    return LevelSet(2, 1, d, "exact", reps, f"closure:fourier,phase,shift,clock;d={d}")


def _build_level3_qubit(cache_dir) -> LevelSet:
    """Candidate family for level 3 on one qubit: products C1 . D . C2 with
    C1, C2 Clifford and D an eighth-root-of-unity diagonal, deduplicated up
    to phase and then filtered by the definitional membership test."""
    c2 = enumerate_level(1, 2, 2, cache_dir=cache_dir)
    diags = [np.diag([1.0, np.exp(1j * np.pi * m / 4)]) for m in range(8)]
    seen = {}
    for left in c2.representatives:
        for diag in diags:
            partial = left.mat @ diag
            for right in c2.representatives:
                cand = _phase_canonical(partial @ right.mat)
                key = _canonical_key(cand)
                if key not in seen:
                    seen[key] = cand
    reps = []
    for mat in seen.values():
        u = Unitary(mat, 1, 2)
        if in_level(u, 3).accepted:
            reps.append(u)
    return LevelSet(
        3, 1, 2, "candidate-family", reps, "clifford*diag8*clifford;filter=in_level3"
    )


def _resolve_cache_dir(cache_dir) -> Path | None:
    if cache_dir is not None:
        return Path(cache_dir)
    env = os.environ.get("PUNIF_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "punif"


_LEVEL_MEMO: dict = {}


def enumerate_level(n: int, d: int, k: int, cache_dir=None, fresh: bool = False) -> LevelSet:
    """Enumerate hierarchy level k for (n, d) within the supported ranges.

    k = 1 lists all Weyl labels (any n, d with d^{2n} <= 4096); k = 2 closes
    over the single-qudit Clifford generators (n = 1, d in {2, 3}) and
    validates the known group order; k = 3 builds the verified candidate
    family (n = 1, d = 2). Results persist to a versioned JSON cache keyed by
    the construction descriptor so enumeration runs once; `fresh` bypasses
    the in-process memo (but still reads the disk cache).
    """
    if k == 1:
        if d ** (2 * n) > 4096:
            raise OutOfScopeError(f"level-1 listing needs d^(2n) <= 4096, got {d ** (2 * n)}")
    elif k == 2:
        if n != 1 or d not in (2, 3):
            raise OutOfScopeError("level-2 enumeration supports n=1, d in {2, 3}")
    elif k == 3:
        if n != 1 or d != 2:
            raise OutOfScopeError("level-3 candidate family supports n=1, d=2 only")
    else:
        raise OutOfScopeError(f"level {k} enumeration is out of scope")

    memo_key = (n, d, k)
    if not fresh and memo_key in _LEVEL_MEMO:
        return _LEVEL_MEMO[memo_key]

    construction = {
        1: f"weyl-labels:n={n},d={d}",
        2: f"closure:fourier,phase,shift,clock;d={d}",
        3: "clifford*diag8*clifford;filter=in_level3",
    }[k]
    digest = hashlib.sha256(construction.encode()).hexdigest()[:12]
    directory = _resolve_cache_dir(cache_dir)
    path = directory / f"levelset_v{CACHE_FORMAT}_n{n}_d{d}_k{k}_{digest}.json"

    level_set = None
    if path.is_file():
        try:
            obj = json.loads(path.read_text(encoding="utf-8"))
            if obj.get("construction") == construction:
                level_set = LevelSet.from_json_dict(obj)
        except (ValueError, KeyError):
            level_set = None  # stale or corrupt cache; rebuild below

    if level_set is None:
        if k == 1:
            level_set = _build_level1(n, d)
        elif k == 2:
            level_set = _build_level2(d)
        else:
            level_set = _build_level3_qubit(cache_dir)
        try:
            directory.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(level_set.to_json_dict()), encoding="utf-8")
        except OSError:
            pass  # cache is an optimization; never fail the computation

    _LEVEL_MEMO[memo_key] = level_set
    return level_set


# ---------------------------------------------------------------------------
# Fidelity and the inequality checks


@dataclass
class FidelityResult:
    """Best squared overlap with a level set; exact if the set is complete,
    otherwise a lower bound. Global phases do not affect the value."""

    value: float
    argmax: Unitary
    level: int
    completeness: str

    @property
    def is_exact(self) -> bool:
        return self.completeness == "exact"


def fidelity(u: Unitary, level_set: LevelSet) -> FidelityResult:
    if len(level_set) == 0:
        raise ValueError("empty level set")
    if (u.n, u.d) != (level_set.n, level_set.d):
        raise ValueError(
            f"operator (n={u.n}, d={u.d}) does not match level set "
            f"(n={level_set.n}, d={level_set.d})"
        )
    overlaps = level_set.rep_flat.conj() @ u.mat.ravel() / u.dim
    values = np.abs(overlaps) ** 2
    best = int(np.argmax(values))
    return FidelityResult(
        value=float(values[best]),
        argmax=level_set.representatives[best],
        level=level_set.level,
        completeness=level_set.completeness,
    )


@dataclass
class SeparationReport:
    """Distance-to-identity landscape of a level set.

    Members close to the identity (within 2^{-k+3/2}) must be phase
    identities with |theta| <= 2 * distance; everything else must keep at
    least that distance.
    """

    level: int
    bound: float
    checked: int
    phase_identities: int
    min_nonphase_distance: float
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def separation_check(level_set: LevelSet, k: int | None = None) -> SeparationReport:
    k = level_set.level if k is None else k
    bound = 2.0 ** (-k + 1.5)
    eye = identity(level_set.n, level_set.d)
    violations = []
    phase_count = 0
    min_nonphase = math.inf
    for rep in level_set.representatives:
        dist = frob_norm(rep - eye)
        ip = hs_inner(eye, rep)
        phase_dist = math.sqrt(max(2.0 - 2.0 * abs(ip), 0.0))
        if phase_dist <= 1e-6:
            phase_count += 1
            theta = float(np.angle(ip))
            if abs(theta) > 2.0 * dist + 1e-12:
                violations.append({"kind": "phase-bound", "theta": theta, "distance": dist})
        else:
            min_nonphase = min(min_nonphase, dist)
            if dist < bound - 1e-12:
                violations.append({"kind": "too-close", "distance": dist, "bound": bound})
    return SeparationReport(
        level=k,
        bound=bound,
        checked=len(level_set),
        phase_identities=phase_count,
        min_nonphase_distance=min_nonphase,
        violations=violations,
    )


@dataclass
class InverseBoundsReport:
    """Joint check of the direct and inverse inequalities at order k.

    Upper-bound checks (direct, direct_improved) are only asserted against a
    complete level set and are None otherwise; the lower-bound checks remain
    valid with candidate-family fidelity.
    """

    k: int
    fidelity_value: float
    fidelity_is_exact: bool
    norm_value: float
    raw: float
    epsilon: float
    direct_ok: bool | None
    direct_improved_ok: bool | None
    inverse_p2_ok: bool | None
    near_extremal_applicable: bool
    near_extremal_ok: bool | None

    @property
    def ok(self) -> bool:
        checks = [self.direct_ok, self.direct_improved_ok, self.inverse_p2_ok, self.near_extremal_ok]
        return all(c for c in checks if c is not None)


def verify_inverse_bounds(
    u: Unitary, k: int, level_set: LevelSet, slack: float = 1e-9
) -> InverseBoundsReport:
    """Evaluate fidelity against level k-1 and compare with the order-k norm:
    F <= ||U||_k (and the improved F <= ||U||_k^2), F >= ||U||_2^4 at k = 2,
    and the near-extremal bound F >= 1 - 24^{k-1} eps when eps = 1 - raw is
    within range."""
    if level_set.level != k - 1:
        raise ValueError(f"need a level-{k - 1} set for order k={k}, got level {level_set.level}")
    report = pnorm_exact(u, k)
    fid = fidelity(u, level_set)
    exact = fid.is_exact
    eps = max(1.0 - report.raw, 0.0)
    applicable = eps <= near_extremal_epsilon(k)
    return InverseBoundsReport(
        k=k,
        fidelity_value=fid.value,
        fidelity_is_exact=exact,
        norm_value=report.value,
        raw=report.raw,
        epsilon=eps,
        direct_ok=(fid.value <= report.value + slack) if exact else None,
        direct_improved_ok=(fid.value <= report.value**2 + slack) if exact else None,
        inverse_p2_ok=(fid.value >= report.raw - slack) if k == 2 else None,
        near_extremal_applicable=applicable,
        near_extremal_ok=(
            fid.value >= 1.0 - inverse_constant(k) * eps - slack if applicable else None
        ),
    )


def battery() -> list:
    """The standard gate battery: single-qubit Weyl operators, the 24
    Cliffords, T, CZ and CNOT."""
    gates = [(f"W{a}", weyl_matrix(a)) for a in SympVector.all_vectors(1, 2)]
    cliffords = enumerate_level(1, 2, 2)
    gates += [(f"clifford{i:02d}", u) for i, u in enumerate(cliffords.representatives)]
    gates += [("T", t_gate()), ("CZ", cz_gate()), ("CNOT", cnot_gate())]
    return gates
