# Koszul modules of two small Chevalley-Eilenberg models.
# Run with: python3 notebooks/01_small_lie_algebras.py
from koszulmod import builtin_cdga, koszul_homology, minimalize, annihilator, aomoto_dims

# The two-dimensional solvable algebra: d e2 = e1 e2, so H^1 is spanned by e1.
A = builtin_cdga("ce:sol2")
print(A.name, "dims", A.dims())

for i in (0, 1):
    M = minimalize(koszul_homology(A, i))
    print(f"B_{i} =", M)

# B_1 is supported at x = 1, not at the origin, so the module is not graded.
# The Aomoto complex tells the same story pointwise.
for a in (0, 1, 2):
    print(f"dim H^1(A, {a}) =", aomoto_dims(A, [a], 1))

# Heisenberg: d g = -e f. Everything is nilpotent, so the support shrinks to the origin.
H = builtin_cdga("ce:h(1)")
M = minimalize(koszul_homology(H, 1))
print("\nHeisenberg B_1 =", M)
print("Ann =", annihilator(M))
