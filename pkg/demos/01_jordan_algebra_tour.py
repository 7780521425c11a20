"""Tour of the element arithmetic shared by the three cone families.

Walks through products, operators, spectral decompositions, and the two
determinant identities on a real-symmetric algebra and on the Lorentz
algebra, printing everything it computes.
"""

import numpy as np

import symcone as sc

np.set_printoptions(precision=4, suppress=True)

# --- a rank-2 real symmetric algebra --------------------------------------
alg = sc.sym_real(2)
print(f"algebra: {alg.kind.value}, rank {alg.rank}, dimension {alg.dim}")

x = sc.from_matrix(alg, np.array([[2.0, 1.0], [1.0, 2.0]]))
y = sc.from_matrix(alg, np.diag([3.0, 5.0]))
print("x =\n", sc.to_matrix(x))
print("y =\n", sc.to_matrix(y))

# the symmetrized product keeps us inside the symmetric matrices
xy = sc.jordan_product(x, y)
print("x o y =\n", sc.to_matrix(xy))
print("commutative:", np.allclose(sc.to_matrix(xy), sc.to_matrix(sc.jordan_product(y, x))))

# multiplication and quadratic operators as plain matrices on coordinates
L = sc.lmap(x)
P = sc.quad_rep(x)
print("L(x) symmetric:", np.allclose(L.matrix, L.matrix.T))
print("P(x) y equals x y x:",
      np.allclose(sc.to_matrix(P.apply(y)), sc.to_matrix(x) @ sc.to_matrix(y) @ sc.to_matrix(x)))

# spectral decomposition: eigenvalues and primitive idempotents
s = sc.spectral_decomposition(x)
print("eigenvalues:", s.eigenvalues)
for i, c in enumerate(s.idempotents):
    print(f"idempotent {i}:\n", sc.to_matrix(c))
print("reconstruction error:", np.abs(s.reconstruct().coords - x.coords).max())

print("trace:", sc.trace(x), " det:", sc.det(x))
print("inverse:\n", sc.to_matrix(sc.inverse(x)))
print("sqrt squared back:",
      np.allclose(sc.to_matrix(sc.jordan_product(sc.sqrt(x), sc.sqrt(x))), sc.to_matrix(x)))

# the two determinant identities, on random cone points
rng = np.random.default_rng(0)
u = sc.random_cone_point_banded(alg, rng)
v = sc.random_cone_point_banded(alg, rng)
lhs = sc.det(sc.quad_apply(u, v))
rhs = sc.det(u) ** 2 * sc.det(v)
print(f"det(P(u) v) = {lhs:.6f}  vs  det(u)^2 det(v) = {rhs:.6f}")
op_det = sc.quad_rep(u).det()
print(f"Det P(u)   = {op_det:.6f}  vs  det(u)^(2 dim/r) = {sc.det(u) ** 3:.6f}")

# --- the Lorentz algebra has no matrix form but the same calculus ----------
lz = sc.lorentz(2)
a = sc.Element(lz, np.array([2.0, 1.0, 0.0]))
print(f"\nlorentz element {a.coords}: eigenvalues {sc.eigenvalues(a)}, "
      f"trace {sc.trace(a)}, det {sc.det(a)}")
print("inverse:", sc.inverse(a).coords)
print("in cone:", sc.in_cone(a), " / (1,2,0) in cone:",
      sc.in_cone(sc.Element(lz, np.array([1.0, 2.0, 0.0]))))
