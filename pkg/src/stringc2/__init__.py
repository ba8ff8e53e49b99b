"""String C-groups generated by symmetries of quadratic forms over GF(2^k)."""

from .field import Field, field_new, field_of_order
from .forms import QuadraticSpace, arf, build_phi, hyperbolic_basis, witt_type
from .groups import (CapExceededError, EnumeratedGroup, VerificationReport, classical_order,
                     enumerate_group, verify_string_c_group)
from .polytope import PolytopeData, build_polytope, export_incidence, import_incidence
from .stabchain import order_via_stabilizer_chain
from .strings import (GeneratorString, Kind, build_sp4_rank4, build_string_generators,
                      orthogonal_string, scalar_set_A, scalar_set_A0, symmetric_string,
                      symplectic_string)

__version__ = "0.1.0"
