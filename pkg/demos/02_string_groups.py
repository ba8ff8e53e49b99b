# Symmetries of the standard basis: string condition, group orders, intersection property.
import time

from stringc2 import linalg as la
from stringc2.field import field_new
from stringc2.groups import (check_intersection_property_recursive, check_string_condition,
                             classical_order, enumerate_group, product_orders)
from stringc2.stabchain import order_via_stabilizer_chain
from stringc2.strings import (build_sp4_rank4, orthogonal_string, symmetric_string,
                              symplectic_string)

F = field_new(2)

gs = symplectic_string(F, 3)
print("d=3 scalars", gs.scalars, "kind", gs.kind.value)
for g in gs.gens:
    print(la.to_text(g))

# orders against the classical formulas
cases = [(orthogonal_string(F, 4, "-"), "OrthMinus", 2),
         (orthogonal_string(F, 4, "+"), "OrthPlus", 2),
         (symplectic_string(F, 3), "Sp", 1),
         (symplectic_string(F, 5), "Sp", 2)]
for gs, kind, m in cases:
    t0 = time.perf_counter()
    G = enumerate_group(F, gs.gens)
    print(f"{gs.kind.value:>3} d={gs.space.d}  |G|={G.order:>7}  {kind}({2 * m},4)="
          f"{classical_order(kind, m, 4):>7}  schlafli={product_orders(F, gs.gens)}"
          f"  {time.perf_counter() - t0:.2f}s")

gs = symplectic_string(F, 5)
print("string condition", check_string_condition(F, gs.gens),
      "intersection property", check_intersection_property_recursive(F, gs.gens))

# rank 6 is too big to list; a stabiliser chain on the 4^6 vectors gives the order
for eps, kind in (("-", "OrthMinus"), ("+", "OrthPlus")):
    gs = orthogonal_string(F, 6, eps)
    print(f"O{eps}(6,4): {order_via_stabilizer_chain(F, gs.gens)}"
          f" vs {classical_order(kind, 3, 4)}")

# the four rank-4 generators of Sp(4,4)
su, rho, sw, tau = build_sp4_rank4(F).gens
print("Sp(4,4) rank 4: schlafli", product_orders(F, [su, rho, sw, tau]),
      "order", enumerate_group(F, [su, rho, sw, tau]).order)
# the first three preserve a plus-type form
print("|<s_u, rho, s_w>| =", enumerate_group(F, [su, rho, sw]).order,
      "=", classical_order("OrthPlus", 2, 4), "(plus type)")

# over GF(2) the d symmetries span S_(d+1)
for d in (2, 3, 4, 5):
    gs = symmetric_string(d)
    print(f"q=2 d={d}: order {enumerate_group(gs.field, gs.gens).order}")
