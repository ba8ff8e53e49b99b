"""Generator strings built from symmetries of the form Phi(a_1, ..., a_(d-1)).

All canonical choices (least scalar, least pair) use ascending bit-pattern
order of field elements.
"""

from dataclasses import dataclass, field as dc_field, replace
from enum import Enum

import numpy as np

from . import linalg as la
from .field import Field, field_new
from .forms import (QuadraticSpace, build_phi, eval_phi, eval_phi_many, invariant_quadratic_forms,
                    preserves_bil, preserves_phi, quadratic_space, radical_is_singular, witt_type)


class Kind(Enum):
    ORTH_PLUS = "+"
    ORTH_MINUS = "-"
    SYMPLECTIC = "sp"
    SP4_RANK4 = "sp4"
    # odd d with a singular radical: a string C-group, but not Sp(d-1, q)
    ODD_SINGULAR = "odd-singular"
    # q = 2, all scalars 1: the generators span a copy of S_d
    SYMMETRIC = "sym"


@dataclass(frozen=True, eq=False)
class GeneratorString:
    space: QuadraticSpace
    gens: tuple
    kind: Kind
    scalars: tuple | None = None
    meta: dict = dc_field(default_factory=dict)

    @property
    def field(self) -> Field:
        return self.space.field

    @property
    def rank(self) -> int:
        return len(self.gens)


def symmetry(s: QuadraticSpace, x) -> np.ndarray:
    """Matrix of v -> v + ((v, x) / phi(x)) x, i.e. I + (B x^T x) / phi(x)."""
    F = s.field
    x = np.asarray(x, dtype=F.dtype).reshape(1, -1)
    px = eval_phi(s, x)
    if px == 0:
        raise ValueError("symmetry needs a nonsingular vector")
    col = la.matmul(F, s.bil, x.T)  # (v, x) = v . col
    col = F.scale_table(F.inv(px))[col]
    return la.identity(F, s.d) ^ F.vmul(col, x)


def _h_matrix(F: Field, beta: int) -> np.ndarray:
    return la.asmatrix(F, [[1, beta], [beta, 1 ^ F.square(beta)]])


def h_matrix(F: Field, beta: int) -> np.ndarray:
    """[[1, b], [b, 1 + b^2]]: the product of the two symmetries on a 2-space."""
    return _h_matrix(F, F.check(beta))


def scalar_set_A0(F: Field) -> list:
    """Nonzero b whose inverse is not of the form a^2 + a (sorted)."""
    return [b for b in range(1, F.q) if not F.in_artin_schreier_N(F.inv(b))]


def scalar_set_A(F: Field) -> list:
    """Members b of A0 for which h_matrix(b) has order exactly q + 1 (sorted).

    Over GF(2) this is {1}: N = {0} there, and h_matrix(1) has order 3.
    """
    return [b for b in scalar_set_A0(F) if la.has_order(F, _h_matrix(F, b), F.q + 1)]


def string_symmetries(s: QuadraticSpace) -> list:
    """The symmetries of the standard basis vectors v_1, ..., v_d."""
    return [symmetry(s, la.unit_vector(s.field, s.d, i)) for i in range(s.d)]


def build_string_generators(s: QuadraticSpace) -> GeneratorString:
    """Symmetries of the standard basis of a space built by build_phi.

    The scalars must lie in A; the only exception is q = 2 with all scalars
    equal to 1, which produces the symmetric-group degeneration.
    """
    F = s.field
    if s.scalars is None:
        raise ValueError("space was not built from scalars")
    scalars = tuple(s.scalars)
    if F.q == 2:
        if any(a != 1 for a in scalars):
            raise ValueError("over GF(2) only the all-ones scalars are allowed")
        kind = Kind.SYMMETRIC
    else:
        admissible = set(scalar_set_A(F))
        bad = [a for a in scalars if a not in admissible]
        if bad:
            raise ValueError(f"scalars {bad} are not in the admissible set A")
        if s.d % 2 == 0:
            kind = Kind.ORTH_PLUS if witt_type(s) == "+" else Kind.ORTH_MINUS
        else:
            kind = Kind.ODD_SINGULAR if radical_is_singular(s) else Kind.SYMPLECTIC
    return GeneratorString(s, tuple(string_symmetries(s)), kind, scalars)


def _require_q4(F):
    if F.q < 4:
        raise ValueError("over GF(2) the symmetries generate a symmetric group; need q >= 4")


def _pattern(lam: int, mu: int, d: int) -> list:
    if d == 2:
        return [lam]
    return [lam] + [mu] * (d - 3) + [lam]


def choose_scalars_for_type(F: Field, d: int, eps: str) -> list:
    """Least (lambda, mu) in A x A with scalars (lambda, mu, ..., mu, lambda) of type eps."""
    if eps not in ("+", "-"):
        raise ValueError(f"type must be '+' or '-', got {eps!r}")
    _require_q4(F)
    if d < 2 or d % 2:
        raise ValueError("orthogonal strings need even d >= 2")
    A = scalar_set_A(F)
    mus = A if d > 3 else A[:1]
    for lam in A:
        for mu in mus:
            scalars = _pattern(lam, mu, d)
            if witt_type(build_phi(F, scalars)) == eps:
                return scalars
    raise ValueError(f"no admissible scalars of type {eps} for d={d}, q={F.q}")


def prescribed_arf_value(F: Field, m: int, lam: int, mu: int) -> int:
    """m(m-1)/2 mu^-1 + (m-1) lambda^-1 + mu / lambda^2, a field element.

    Only its class modulo {a^2 + a} is meaningful; used as a cross-check.
    """
    total = 0
    if (m * (m - 1) // 2) % 2:
        total ^= F.inv(mu)
    if (m - 1) % 2:
        total ^= F.inv(lam)
    total ^= F.div(mu, F.square(lam))
    return total


def choose_scalars_symplectic(F: Field, d: int) -> list:
    """min(A) everywhere except the last scalar, chosen so the radical is nonsingular."""
    _require_q4(F)
    if d < 3 or d % 2 == 0:
        raise ValueError("symplectic strings need odd d >= 3")
    A = scalar_set_A(F)
    head = [A[0]] * (d - 2)
    for last in A:
        if not radical_is_singular(build_phi(F, head + [last])):
            return head + [last]
    raise ValueError(f"no choice of the last scalar gives a nonsingular radical (q={F.q})")


def orthogonal_string(F: Field, d: int, eps: str) -> GeneratorString:
    gs = build_string_generators(build_phi(F, choose_scalars_for_type(F, d, eps)))
    lam = gs.scalars[0]
    mu = gs.scalars[1] if d > 3 else lam
    return replace(gs, meta={"lambda": lam, "mu": mu})


def symplectic_string(F: Field, d: int) -> GeneratorString:
    return build_string_generators(build_phi(F, choose_scalars_symplectic(F, d)))


def symmetric_string(d: int) -> GeneratorString:
    return build_string_generators(build_phi(field_new(1), [1] * (d - 1)))


# rank-4 generators for Sp(4, q) ----------------------------------------------

def sp4_alpha(F: Field) -> int:
    """Least nonzero a with [[0, 1], [1, a^2]] of order q + 1."""
    for a in range(1, F.q):
        m = la.asmatrix(F, [[0, 1], [1, F.square(a)]])
        if la.has_order(F, m, F.q + 1):
            return a
    raise ValueError(f"no suitable alpha in {F}")


def sp4_matrices(F: Field, alpha: int) -> list:
    """sigma_u, rho, sigma_w, tau relative to the ordered basis u, e, b, w."""
    a = alpha
    sigma_u = [[1, 0, 0, 0], [a, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    rho = [[1, a, a, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1 ^ a, a, 1]]
    sigma_w = [[1, 0, 0, 0], [0, 1, 0, a], [0, 0, 1, 1], [0, 0, 0, 1]]
    tau = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, a, 1]]
    return [la.asmatrix(F, m) for m in (sigma_u, rho, sigma_w, tau)]


def build_sp4_rank4(F: Field) -> GeneratorString:
    """The four involutions exhibiting Sp(4, q) as a rank-4 string C-group.

    The attached space carries the quadratic form preserved by the first three
    generators (solved for, unique up to scalar); tau preserves only its
    bilinear form.
    """
    if F.q < 4:
        raise ValueError("the rank-4 construction needs q >= 4")
    alpha = sp4_alpha(F)
    gens = sp4_matrices(F, alpha)
    forms = invariant_quadratic_forms(F, gens[:3])
    if len(forms) != 1:
        raise ArithmeticError(f"expected a unique invariant quadratic form, got {len(forms)}")
    space = quadratic_space(F, forms[0])
    return GeneratorString(space, tuple(gens), Kind.SP4_RANK4, None, {"alpha": alpha})


# helpers used by the verification oracles ------------------------------------

def nonsingular_points(s: QuadraticSpace, vectors) -> np.ndarray:
    """Normalised representatives of the nonsingular points in the span of vectors."""
    pts = la.projective_points(s.field, vectors)
    return pts[eval_phi_many(s, pts) != 0]


def sigma_span_generators(s: QuadraticSpace, vectors) -> list:
    """Symmetries of every nonsingular point in the span of vectors."""
    return [symmetry(s, p) for p in nonsingular_points(s, vectors)]


def commute(F: Field, a, b) -> bool:
    return np.array_equal(la.matmul(F, a, b), la.matmul(F, b, a))



def check_isometries(gs: GeneratorString) -> bool:
    """Every generator preserves phi (tau of the rank-4 string only its polar form)."""
    s = gs.space
    if gs.kind is Kind.SP4_RANK4:
        return (all(preserves_phi(s, g) for g in gs.gens[:3])
                and all(preserves_bil(s, g) for g in gs.gens))
    return all(preserves_phi(s, g) for g in gs.gens)
