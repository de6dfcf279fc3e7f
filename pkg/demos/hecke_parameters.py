"""
Hecke parameters and the semismall real Springer map
====================================================

Restricted roots are computed as joint eigenspaces of ``ad(a)`` on an
explicit matrix model of each real form.  Their multiplicities give the
quadratic relation ``(T_s - 1)(T_s + (-1)^d_s) = 0``.
"""

from hklab import hecke_parameters, semismall_check_gl

for family, n, p in [("sl_split", 4, None), ("sl_complex", 3, None),
                     ("su_pq", 5, 2), ("su_pq", 3, 1)]:
    h = hecke_parameters(family, n, p)
    print(f"{family:10s} n={n} p={p}: d = {h.d}  ({h.kind})")
    for rel in h.relations():
        print("    ", rel)

###############################################################################
# Fiber dimension against half the codimension, for every nilpotent orbit.

for row in semismall_check_gl(5):
    print(f"{str(tuple(row['partition'])):16s} dim O = {row['orbit_dim']:2d}  "
          f"fiber = {row['fiber_dim']:2d}  bound = {row['bound']:4.1f}")
