"""The uniformity-norm ladder and Weyl-basis Fourier analysis.

Walks the T gate up the norm ladder (its norm hits 1 exactly at order 4,
witnessing membership in hierarchy level 3), shows the two independent
routes to the order-2 norm, and compares the exact evaluator with the
Monte Carlo estimator on a Haar-random two-qubit unitary.

Run:  python demos/02_uniformity_norms.py
"""

import numpy as np

from punif import (
    SympVector,
    fourier_coeffs,
    haar_random_unitary,
    p2_via_fourier,
    pauli_derivative,
    pnorm_exact,
    pnorm_sampled,
    t_gate,
)

T = t_gate()
print("=== The norm ladder of the T gate ===")
print(f"{'order k':>8} {'value':>12} {'value^(2^k)':>14}")
for k in range(1, 5):
    report = pnorm_exact(T, k)
    print(f"{k:>8} {report.value:>12.8f} {report.raw:>14.8f}")
print("order 4 hits 1 exactly: T sits in level 3 of the hierarchy.")
print()

print("=== Derivatives drive the ladder ===")
for h in SympVector.all_vectors(1, 2):
    derived = pauli_derivative(T, h)
    p2 = pnorm_exact(derived, 2).raw
    print(f"  direction h = {h}:  ||d_h T||_2^4 = {p2:.4f}")
print("averaging those four numbers gives ||T||_3^8 = 0.75, the nesting identity.")
print()

print("=== Two independent routes to the order-2 norm ===")
table = fourier_coeffs(T)
print("Weyl coefficients of T:")
for label, coeff in table.items():
    if abs(coeff) > 1e-12:
        print(f"  W{label}: {coeff:.6f}  |c| = {abs(coeff):.6f}")
print(f"sum of |c|^4 (Fourier route)      = {p2_via_fourier(T):.12f}")
print(f"derivative-average route          = {pnorm_exact(T, 2).raw:.12f}")
print()

print("=== Exact vs sampled on a Haar-random two-qubit unitary ===")
u = haar_random_unitary(2, 2, seed=1)
exact = pnorm_exact(u, 4)
print(f"exact:   ||U||_4^16 = {exact.raw:.6f}  ({exact.term_count} lattice terms)")
for samples in (100, 1000, 10000):
    est = pnorm_sampled(u, 4, samples, seed=5)
    z = abs(est.raw - exact.raw) / est.stderr if est.stderr else 0.0
    print(f"sampled: {samples:>6} draws -> {est.raw:.6f} +- {est.stderr:.6f}  (|z| = {z:.2f})")
