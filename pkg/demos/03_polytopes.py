# Coset geometry of a string C-group: faces, flags, incidence export.
import os
import tempfile

from stringc2.field import field_new
from stringc2.polytope import (build_polytope, check_diamond, count_flags, export_incidence,
                               import_incidence)
from stringc2.strings import orthogonal_string, symmetric_string, symplectic_string

F = field_new(2)

for name, gs in [("pentagon", orthogonal_string(F, 2, "-")),
                 ("d=3 sp", symplectic_string(F, 3)),
                 ("d=4 O-", orthogonal_string(F, 4, "-")),
                 ("q=2 d=3", symmetric_string(3)),
                 ("q=2 d=4", symmetric_string(4))]:
    p = build_polytope(gs.field, gs.gens)
    print(f"{name:9s} order {p.order:5d}  f-vector {p.f_vector}  {{{', '.join(map(str, p.schlafli))}}}"
          f"  flags {count_flags(p)}  diamond {check_diamond(p)}")

p = build_polytope(F, symplectic_string(F, 3).gens)
path = os.path.join(tempfile.mkdtemp(), "sp3.txt")
export_incidence(p, path)
with open(path) as fh:
    print("".join(fh.readlines()[:4]), "...")
print("round trip equal:", import_incidence(path) == p)
