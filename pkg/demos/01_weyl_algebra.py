"""A tour of the qudit Weyl algebra.

Builds the Weyl operators for a single qutrit, shows the product-phase
cocycle and the commutation rule in action, and multiplies abstract
Heisenberg-group elements against their matrix realization.

Run:  python demos/01_weyl_algebra.py
"""

import numpy as np

from punif import (
    PauliElement,
    PhaseExp,
    SympVector,
    commutator_phase,
    hs_inner,
    omega,
    phase_modulus,
    product_phase,
    tau,
    weil_rep,
    weyl_matrix,
)

d = 3
print(f"=== Weyl operators for one qudit of dimension d = {d} ===")
print(f"omega = exp(2 pi i / {d}) = {omega(d):.4f}")
print(f"tau   = {tau(d):.4f}   (tau^2 = omega, order {phase_modulus(d)})")
print()

for a in list(SympVector.all_vectors(1, d))[:4]:
    w = weyl_matrix(a)
    print(f"W{a} =")
    print(np.array_str(w.mat, precision=3, suppress_small=True))
    print(f"  trace = {w.trace():.3f}   (d^n at the zero label, 0 elsewhere)")
print("... and so on for all d^2 =", d**2, "labels.")
print()

print("=== The product law W_a W_b = tau^beta(a,b) W_{a+b} ===")
a = SympVector((1,), (2,), d)
b = SympVector((2,), (1,), d)
beta = product_phase(a, b)
lhs = weyl_matrix(a).mat @ weyl_matrix(b).mat
rhs = tau(d) ** beta.lift() * weyl_matrix(a + b).mat
print(f"a = {a}, b = {b}:  beta = {beta.lift()} (mod {beta.modulus})")
print(f"  || W_a W_b - tau^beta W_(a+b) || = {np.linalg.norm(lhs - rhs):.2e}")
print()

print("=== Commutation: W_a W_b = omega^[a,b] W_b W_a ===")
form = commutator_phase(a, b)
flipped = omega(d) ** form.lift() * weyl_matrix(b).mat @ weyl_matrix(a).mat
print(f"  [a, b] = {form.lift()} (mod {d}),  residual {np.linalg.norm(lhs - flipped):.2e}")
print()

print("=== Orthonormality under <U, V> = tr(U^dag V)/d^n ===")
labels = list(SympVector.all_vectors(1, d))
gram = np.array(
    [[hs_inner(weyl_matrix(x), weyl_matrix(y)) for y in labels] for x in labels]
)
print(f"  Gram matrix of all {d**2} Weyl operators deviates from the identity by "
      f"{np.linalg.norm(gram - np.eye(d**2)):.2e}")
print()

print("=== The abstract group vs. its matrix realization ===")
D = phase_modulus(d)
g = PauliElement(PhaseExp(2, D), a)
h = PauliElement(PhaseExp(1, D), b)
product = g * h
print(f"(t={g.t.lift()}, a={g.a}) * (t={h.t.lift()}, a={h.a})"
      f" = (t={product.t.lift()}, a={product.a})")
matrix_gap = np.linalg.norm(weil_rep(product).mat - weil_rep(g).mat @ weil_rep(h).mat)
print(f"  realization is a homomorphism: residual {matrix_gap:.2e}")
inverse = g.inverse()
print(f"  inverse of g: (t={inverse.t.lift()}, a={inverse.a});"
      f" g * g^-1 is the identity: {(g * inverse).is_identity}")
