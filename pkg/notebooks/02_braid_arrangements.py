# Resonance and Chen ranks for the braid arrangement in C^4.
from koszulmod import builtin_cdga, chen_ranks, koszul_homology, minimalize, hilbert_series
from koszulmod import rational
from koszulmod.invariants import jump_locus, resonance_support_ideal, sample_points

A = builtin_cdga("os-braid:4")
print(A.name, "dims", A.dims())

B1 = minimalize(koszul_homology(A, 1))
print("B_1 has", B1.ngens, "generators")
print("Hilbert series:", hilbert_series(B1))

# theta_k = (k - 1) * 5 from k = 3 on; the series shows it directly
rep = chen_ranks(A, 7)
print("Chen ranks:", rep.sequence())

# Jump ideal (minors) against support ideal (annihilator), point by point
J = jump_locus(A, 1, 1)
S = resonance_support_ideal(A, 1, 1)
for p in sample_points(6, 6, seed=2):
    print(p, J.vanishes_at(A, p), S.zero_set_contains([rational(c) for c in p]))

# Random points miss the components. The triple point {1,2,3} gives the local
# component a12 + a13 + a23 = 0 with the other coordinates zero.
for p in ([1, -1, 0, 0, 0, 0], [1, 1, 0, -2, 0, 0]):
    print(p, J.vanishes_at(A, p), S.zero_set_contains([rational(c) for c in p]))
