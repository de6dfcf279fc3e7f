"""
From complex conjugation to transpose
=====================================

A matrix with real eigenvalues is pushed through the family ``alpha_a`` for
a few values of ``a``.  At ``a = 0`` we get the entrywise conjugate, at
``a = 1`` the transpose, and in between a matrix that keeps the
characteristic polynomial and the Jordan type.
"""

import numpy as np

from hklab import alpha_gl, jordan_type
from hklab.linalg import JordanType, charpoly_drift
from hklab.verify import random_real_spectrum_matrix


def label(A):
    return {round(lam, 6): part for lam, part in jordan_type(A).blocks.items()}


# A 3x3 matrix similar to J_2(1) + J_1(-2), conjugated by a complex similarity
# so that it is neither real nor symmetric.
M = random_real_spectrum_matrix(3, JordanType({1.0: (2,), -2.0: (1,)}), seed=3,
                                complex_similarity=True)
print("Jordan type of M:", label(M))

###############################################################################
# Distances to the two endpoint maps along the path.

print(f"{'a':>5} {'|out - conj(M)|':>16} {'|out - M^T|':>12} {'drift':>9}  type")
for a in np.linspace(0.0, 1.0, 6):
    out = alpha_gl(M, a)
    print(f"{a:5.2f} {np.linalg.norm(out - M.conj()):16.2e} "
          f"{np.linalg.norm(out - M.T):12.2e} {charpoly_drift(out, M):9.1e}  "
          f"{label(out)}")

###############################################################################
# Each ``alpha_a`` is an involution.

a = 0.37
twice = alpha_gl(alpha_gl(M, a), a)
print(f"|alpha(alpha(M)) - M| at a={a}: {np.linalg.norm(twice - M):.2e}")

###############################################################################
# Real orthogonal conjugation and positive scaling commute with ``alpha_a``.

from hklab.linalg import random_orthogonal  # noqa: E402

k = random_orthogonal(3, 11)
lhs = alpha_gl(k @ M @ k.T, 0.5)
rhs = k @ alpha_gl(M, 0.5) @ k.T
print(f"O(3) equivariance residual: {np.linalg.norm(lhs - rhs):.2e}")
print(f"scaling residual (t=2):     {np.linalg.norm(alpha_gl(2 * M, 0.5) - 2 * alpha_gl(M, 0.5)):.2e}")
