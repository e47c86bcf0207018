"""Hierarchy membership, level enumeration, and the inequality suite.

Classifies a handful of gates by definitional recursion over derivatives,
enumerates levels 1-3 for a single qubit (level 3 as a verified candidate
family), checks how well-separated the levels are, and exercises the
direct / inverse inequalities tying Clifford fidelity to the norms.

Run:  python demos/03_clifford_hierarchy.py
"""

import numpy as np

from punif import (
    Unitary,
    enumerate_level,
    fidelity,
    in_level,
    inverse_constant,
    near_extremal_epsilon,
    parse_gate,
    pnorm_exact,
    separation_check,
    t_gate,
    verify_inverse_bounds,
)

print("=== Membership by definitional recursion ===")
gates = ["X", "H", "S", "T", "H*T", "(H*T)*(H*T)"]
print(f"{'gate':>12} " + " ".join(f"{f'level {k}':>9}" for k in range(5)))
for name in gates:
    gate = parse_gate(name)
    marks = []
    for k in range(5):
        verdict = in_level(gate, k)
        marks.append("yes" if verdict.accepted else ".")
    print(f"{name:>12} " + " ".join(f"{m:>9}" for m in marks))
print("note the last row: (HT)^2 is outside every level even though HT is in level 3,")
print("so level 3 is not closed under multiplication.")
print()

print("=== Enumerating the levels (one qubit) ===")
for k in (1, 2, 3):
    level_set = enumerate_level(1, 2, k)
    print(f"level {k}: {len(level_set):>3} representatives  [{level_set.completeness}]")
print("level 2 for a qutrit:", len(enumerate_level(1, 3, 2)), "representatives")
print()

print("=== Separation: nothing sits close to the identity ===")
for k in (1, 2, 3):
    report = separation_check(enumerate_level(1, 2, k))
    print(f"level {k}: min distance of a non-phase member to I = "
          f"{report.min_nonphase_distance:.4f} (bound {report.bound:.4f}, ok={report.ok})")
print()

print("=== Fidelity against enumerated levels ===")
T = t_gate()
for k in (1, 2, 3):
    result = fidelity(T, enumerate_level(1, 2, k))
    tag = "exact" if result.is_exact else "lower bound"
    print(f"best overlap of T with level {k}: {result.value:.6f}  ({tag})")
print()

print("=== Direct and inverse inequalities on a perturbed Clifford ===")
base = enumerate_level(1, 2, 2).representatives[5]
rng = np.random.default_rng(3)
a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
h = (a + a.conj().T) / 2
h /= np.linalg.norm(h, 2)
vals, vecs = np.linalg.eigh(h)
u = Unitary(vecs @ np.diag(np.exp(2e-3j * vals)) @ vecs.conj().T @ base.mat, 1, 2)
report = verify_inverse_bounds(u, 3, enumerate_level(1, 2, 2))
print(f"||U||_3 = {report.norm_value:.10f},  eps = 1 - ||U||_3^8 = {report.epsilon:.3e}")
print(f"fidelity to the Clifford group = {report.fidelity_value:.10f}")
print(f"direct inequality F <= ||U||_3 holds: {report.direct_ok}")
print(f"improved form   F <= ||U||_3^2 holds: {report.direct_improved_ok}")
print(f"near-extremal window (eps <= {near_extremal_epsilon(3):.2e}): "
      f"applicable={report.near_extremal_applicable}")
print(f"F >= 1 - {inverse_constant(3):.0f} eps holds: {report.near_extremal_ok}")
