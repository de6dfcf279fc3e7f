"""
Real nilpotent orbits flow to symmetric ones
============================================

Following the fixed point of ``alpha_a`` from ``a = 0`` to ``a = 1`` sends
a real matrix to a complex symmetric one in the same conjugacy class.  For
nilpotents this realizes the pairing of real and symmetric orbits, both
labelled by partitions.
"""

import numpy as np

from hklab import ks_table_gl, trace, verify_ks_endpoint
from hklab.ks import partitions, table_text
from hklab.linalg import JordanType
from hklab.verify import random_real_spectrum_matrix

###############################################################################
# The 2x2 nilpotent.  Its image is a symmetric square-zero matrix.

path = trace(np.array([[0.0, 1.0], [0.0, 0.0]]))
T = path.target
np.set_printoptions(precision=4, suppress=True)
print(T)
print("T - T^T:", np.linalg.norm(T - T.T), " T @ T:", np.linalg.norm(T @ T))

###############################################################################
# Every partition of 4.

for i, lam in enumerate(partitions(4)):
    M0 = random_real_spectrum_matrix(4, JordanType({0.0: lam}), seed=10 + i)
    check = verify_ks_endpoint(trace(M0))
    print(f"{str(lam):14s} -> {check['jordan_target']['blocks'][0][1]}  "
          f"symmetric residual {check['symmetry_residual']:.1e}")

###############################################################################
# The table these traces confirm.

print(table_text(ks_table_gl(4)))
