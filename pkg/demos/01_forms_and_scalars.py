# Quadratic forms over GF(2^k): scalar sets, Arf invariants, Witt types.
import numpy as np

from stringc2 import linalg as la
from stringc2.field import field_new
from stringc2.forms import arf_value, build_phi, eval_phi_many, hyperbolic_basis, witt_type
from stringc2.strings import choose_scalars_for_type, scalar_set_A, scalar_set_A0

F = field_new(2)  # GF(4): 0, 1, w=2, w^2=3
print(F, "modulus", bin(F.modulus))
print("w * w^2 =", F.mul(2, 3), " w^-1 =", F.inv(2))

# N = {a^2 + a} is the kernel of the trace; half the field
for k in (1, 2, 3, 4):
    G = field_new(k)
    N = [b for b in range(G.q) if G.in_artin_schreier_N(b)]
    print(f"q={G.q:2d}  N={N}  A0={scalar_set_A0(G)}  A={scalar_set_A(G)}")

# Phi(w, w^2, w): ones on the diagonal, scalars above it
s = build_phi(F, [2, 3, 2])
print(s.phi)
print("bilinear form\n", s.bil)

# hyperbolic basis and the Arf sum
for e, f in hyperbolic_basis(s):
    print("e =", e[0], " f =", f[0])
print("Arf sum", arf_value(s), "-> type", witt_type(s))

# the type shows in the number of singular points of PG(3, q)
pts = la.projective_points(F, np.eye(4, dtype=int))
for eps in "+-":
    sc = choose_scalars_for_type(F, 4, eps)
    n = np.count_nonzero(eval_phi_many(build_phi(F, sc), pts) == 0)
    print(f"type {eps}: scalars {sc}, {n} singular points of {len(pts)}")
