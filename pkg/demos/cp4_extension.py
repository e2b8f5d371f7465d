"""
CP^4 with a rank-3 torus
========================

The standard rank-4 labelling of the complete graph K_5 is projected to rank
3 along a fixed epimorphism.  The projected graph is still 3-independent, so
restriction, kernels and face rings all behave.

Run with ``python demos/cp4_extension.py``.
"""

from gkmtools.catalog import CP4_PROJECTION, cp4_projected, cpn_torus
from gkmtools.cohomology import (freeness_probe, hilbert_function, kernel_ideal_check,
                                 kernel_of_projection, module_generators, restriction_map)
from gkmtools.facering import theorem2_quotient_check
from gkmtools.graph import gkm_independence_level

D = 12
big, small, p = cpn_torus(4), cp4_projected(), CP4_PROJECTION
print("p =", p, " ker p =", kernel_of_projection(p, 4))
print("levels:", gkm_independence_level(big), gkm_independence_level(small))

print(f"{'deg':>4} {'dim H_T':>8} {'dim H_K':>8} {'rank p_*':>9}")
for two_d in range(0, D + 1, 2):
    r = restriction_map(big, small, p, two_d)
    print(f"{two_d:>4} {r.dim_source:>8} {r.dim_target:>8} {r.rank:>9}")

# ker p_* against the ideal generated by ker p
for row in kernel_ideal_check(big, small, p, D):
    print(f"  degree {row.degree}: kernel {row.kernel_dim}, ideal {row.ideal_dim}")

print(freeness_probe(big, D).describe())
print("quotient dims:", module_generators(big, D).quotient_dims)

# Same comparison through the face ring of the rank-4 graph.
check = theorem2_quotient_check(small, big, p, 10)
print("generators of I:", [str(g) for g in check.generators])
for row in check.rows:
    print(f"  degree {row.degree}: k[S] {row.face_ring_dim} - I {row.ideal_dim} "
          f"= {row.quotient_dim}   vs H_K {row.target_dim}")
print("agree:", check.agree, "| H_K:", hilbert_function(small, 10))
