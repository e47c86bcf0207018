"""Independent oracles for the test suite.

Everything here is computed straight from defining formulas with its own
minimal code (no reuse of the package's kernels), so it can serve as ground
truth for the optimized paths: dense Weyl matrices from the basis action,
uniformity norms by brute-force averaging over all direction tuples, and
phase-minimized distances by grid search.
"""

import itertools

import numpy as np


def weyl_dense_direct(u, v, d):
    """Weyl matrix from the definition: tau^{-sum |u_i v_i|} Z^u X^v, built
    entry by entry from Z^u X^v |j> = omega^{u.(j+v)} |j+v>."""
    n = len(u)
    dim = d**n
    tau = 1j if d == 2 else -np.exp(1j * np.pi / d)
    omega = np.exp(2j * np.pi / d)
    norm_exp = -sum((ui * vi) % d for ui, vi in zip(u, v))
    mat = np.zeros((dim, dim), dtype=complex)
    for col, j in enumerate(itertools.product(range(d), repeat=n)):
        target = tuple((ji + vi) % d for ji, vi in zip(j, v))
        row = 0
        for digit in target:
            row = row * d + digit
        zphase = sum(ui * ti for ui, ti in zip(u, target)) % d
        mat[row, col] = tau**norm_exp * omega**zphase
    return mat


def all_weyl_direct(n, d):
    return [
        weyl_dense_direct(lab[:n], lab[n:], d)
        for lab in itertools.product(range(d), repeat=2 * n)
    ]


def naive_pnorm_raw(mat, n, d, k):
    """The order-k expectation by brute force: average Re tr(...)/d^n over all
    d^{2nk} direction tuples of iterated derivatives, one matmul at a time."""
    dim = d**n
    weyls = all_weyl_direct(n, d)
    total = 0.0
    for tup in itertools.product(range(len(weyls)), repeat=k):
        m = mat
        for idx in tup:
            w = weyls[idx]
            m = w @ m @ w.conj().T @ m.conj().T
        total += (np.trace(m) / dim).real
    return total / len(weyls) ** k


def grid_phase_min(u_mat, v_mat, points=100_000):
    """min_theta ||U - e^{i theta} V||_2^2 by brute grid search."""
    dim = u_mat.shape[0]
    thetas = np.linspace(0.0, 2 * np.pi, points, endpoint=False)
    best = np.inf
    for theta in thetas:
        diff = u_mat - np.exp(1j * theta) * v_mat
        best = min(best, np.linalg.norm(diff) ** 2 / dim)
    return best


def brute_symplectic(u, v, up, vp, d):
    """u.v' - u'.v mod d from the formula."""
    return (
        sum(a * b for a, b in zip(u, vp)) - sum(a * b for a, b in zip(up, v))
    ) % d
