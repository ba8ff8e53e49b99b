"""Quadratic and alternating forms in characteristic 2.

A quadratic form is stored by an upper-triangular matrix ``phi`` with
``phi(v) = v phi v^T``; its polar form has the symmetric, zero-diagonal
matrix ``bil = phi + phi^T``.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import linalg as la
from .field import Field


class LineClass(Enum):
    ASINGULAR = "asingular"
    SINGULAR = "singular"
    HYPERBOLIC = "hyperbolic"
    TOTALLY_SINGULAR = "totally singular"


@dataclass(frozen=True, eq=False)
class QuadraticSpace:
    field: Field
    phi: np.ndarray
    scalars: tuple | None = None

    def __post_init__(self):
        phi = la.asmatrix(self.field, self.phi)
        if phi.ndim != 2 or phi.shape[0] != phi.shape[1]:
            raise ValueError("form matrix must be square")
        if np.any(np.tril(phi, -1)):
            raise ValueError("form matrix must be upper triangular")
        phi.setflags(write=False)
        object.__setattr__(self, "phi", phi)
        bil = phi ^ phi.T
        bil.setflags(write=False)
        object.__setattr__(self, "bil", bil)

    @property
    def d(self) -> int:
        return self.phi.shape[0]

    def __repr__(self):
        return f"QuadraticSpace({self.field}, d={self.d}, phi={la.to_text(self.phi)!r})"


def build_phi(F: Field, scalars) -> QuadraticSpace:
    """Form with ones on the diagonal and ``scalars`` on the superdiagonal."""
    scalars = tuple(F.check(a) for a in scalars)
    d = len(scalars) + 1
    if d < 2:
        raise ValueError("need at least one scalar (d >= 2)")
    if any(a == 0 for a in scalars):
        raise ValueError("scalars must be nonzero")
    phi = la.identity(F, d)
    for i, a in enumerate(scalars):
        phi[i, i + 1] = a
    return QuadraticSpace(F, phi, scalars)


def quadratic_space(F: Field, form) -> QuadraticSpace:
    """Space for an arbitrary square matrix, folded to upper-triangular shape."""
    m = la.asmatrix(F, form)
    upper = np.triu(m) ^ np.tril(m, -1).T
    return QuadraticSpace(F, upper)


def _vec(v, d):
    v = np.asarray(v).reshape(1, -1)
    if v.shape[1] != d:
        raise ValueError(f"vector length {v.shape[1]} != {d}")
    return v


def eval_phi(s: QuadraticSpace, v) -> int:
    F = s.field
    v = _vec(v, s.d)
    return int(la.matmul(F, la.matmul(F, v, s.phi), v.T)[0, 0])


def eval_bil(s: QuadraticSpace, u, v) -> int:
    F = s.field
    u = _vec(u, s.d)
    v = _vec(v, s.d)
    return int(la.matmul(F, la.matmul(F, u, s.bil), v.T)[0, 0])


def eval_phi_many(s: QuadraticSpace, vecs) -> np.ndarray:
    """phi evaluated on every row of an (n, d) array."""
    F = s.field
    vecs = np.asarray(vecs, dtype=F.dtype)
    vp = la.right_mul(F, vecs[:, None, :], s.phi)[:, 0, :]
    return np.bitwise_xor.reduce(F.vmul(vp, vecs), axis=1)


def radical(s: QuadraticSpace) -> list:
    return la.nullspace(s.field, s.bil)


def radical_closed_form(F: Field, scalars) -> np.ndarray:
    """The vector (1, 0, b1, 0, ..., 0, bm) spanning the radical for odd d.

    Here b_s is the product over i <= s of a_(2i-1) / a_(2i).
    """
    scalars = [F.check(a) for a in scalars]
    d = len(scalars) + 1
    if d % 2 == 0:
        raise ValueError("closed-form radical only exists for odd d")
    z = np.zeros((1, d), dtype=F.dtype)
    z[0, 0] = 1
    beta = 1
    for s in range(1, (d - 1) // 2 + 1):
        beta = F.mul(beta, F.div(scalars[2 * s - 2], scalars[2 * s - 1]))
        z[0, 2 * s] = beta
    return z


def radical_is_singular(s: QuadraticSpace) -> bool:
    """Whether phi vanishes on the (1-dimensional) radical of an odd-d space."""
    if s.d % 2 == 0:
        raise ValueError("radical_is_singular needs odd d")
    if s.scalars is not None:
        F = s.field
        z = radical_closed_form(F, s.scalars)
        total = 1
        for b in z[0, 2::2]:
            total ^= F.square(int(b))
        return total == 0
    rad = radical(s)
    if len(rad) != 1:
        raise ValueError(f"radical has dimension {len(rad)}, expected 1")
    return eval_phi(s, rad[0]) == 0


def classify_line(s: QuadraticSpace, u, w) -> LineClass:
    """Classify <u, w> by counting its singular projective points."""
    F = s.field
    u = _vec(u, s.d)
    w = _vec(w, s.d)
    if la.rank(F, np.vstack([u, w])) != 2:
        raise ValueError("vectors are linearly dependent")
    pts = la.projective_points(F, [u, w])
    count = int(np.count_nonzero(eval_phi_many(s, pts) == 0))
    classes = {0: LineClass.ASINGULAR, 1: LineClass.SINGULAR, 2: LineClass.HYPERBOLIC,
               F.q + 1: LineClass.TOTALLY_SINGULAR}
    if count not in classes:
        raise AssertionError(f"impossible singular point count {count}")
    return classes[count]


# hyperbolic bases -------------------------------------------------------------

def _require_nondegenerate(s: QuadraticSpace):
    if s.d % 2:
        raise ValueError("hyperbolic basis needs even dimension")
    if la.rank(s.field, s.bil) != s.d:
        raise ValueError("bilinear form is degenerate")


def hyperbolic_basis(s: QuadraticSpace, method: str = "auto") -> list:
    """Pairs (e_i, f_i) with (e_i, f_j) = delta_ij and (e_i, e_j) = (f_i, f_j) = 0.

    ``method`` is ``"sweep"`` (only for spaces built from scalars), ``"greedy"``
    (any nondegenerate space) or ``"auto"``.
    """
    _require_nondegenerate(s)
    if method == "auto":
        method = "sweep" if s.scalars is not None else "greedy"
    if method == "sweep":
        if s.scalars is None:
            raise ValueError("sweep method needs a space built by build_phi")
        return _sweep_basis(s)
    if method == "greedy":
        return _greedy_basis(s, la.identity(s.field, s.d))
    raise ValueError(f"unknown method {method!r}")


def _sweep_basis(s: QuadraticSpace) -> list:
    # e_1 = v_1; e_i = v_(2i-1) + (a_(2i-2)/a_(2i-3)) e_(i-1); f_i = v_(2i)/a_(2i-1)
    F = s.field
    a = s.scalars
    d = s.d
    pairs = []
    e = la.unit_vector(F, d, 0)
    for i in range(1, d // 2 + 1):
        if i > 1:
            c = F.div(a[2 * i - 3], a[2 * i - 4])
            e = la.unit_vector(F, d, 2 * i - 2) ^ F.scale_table(c)[e]
        f = F.scale_table(F.inv(a[2 * i - 2]))[la.unit_vector(F, d, 2 * i - 1)]
        pairs.append((e.copy(), f))
    return pairs


def _greedy_basis(s: QuadraticSpace, start) -> list:
    F = s.field
    rest = [np.asarray(r).reshape(1, -1).astype(F.dtype) for r in start]
    pairs = []
    while rest:
        e = rest.pop(0)
        if not e.any():
            continue
        for j, cand in enumerate(rest):
            c = eval_bil(s, e, cand)
            if c:
                f = F.scale_table(F.inv(c))[cand]
                rest.pop(j)
                break
        else:
            raise ValueError("bilinear form is degenerate")
        projected = []
        for w in rest:
            # w - (w,f) e - (w,e) f is orthogonal to both e and f.
            w = w ^ F.scale_table(eval_bil(s, w, f))[e] ^ F.scale_table(eval_bil(s, w, e))[f]
            projected.append(w)
        rest = projected
        pairs.append((e, f))
    return pairs


def arf_value(s: QuadraticSpace, basis=None) -> int:
    """The field element sum phi(e_i) phi(f_i) over a hyperbolic basis."""
    F = s.field
    if basis is None:
        basis = hyperbolic_basis(s)
    total = 0
    for e, f in basis:
        total ^= F.mul(eval_phi(s, e), eval_phi(s, f))
    return total


def arf(s: QuadraticSpace, basis=None) -> int:
    """Arf invariant as a bit: 0 if the sum lies in {a^2 + a}, else 1."""
    return 0 if s.field.in_artin_schreier_N(arf_value(s, basis)) else 1


def witt_type(s: QuadraticSpace) -> str:
    """'+' (Witt index m) or '-' (Witt index m - 1) for a nondegenerate 2m-space."""
    return "+" if arf(s) == 0 else "-"


# isometries and invariant forms --------------------------------------------

def _is_alternating(m) -> bool:
    return not np.any(np.diag(m)) and np.array_equal(m, m.T)


def preserves_phi(s: QuadraticSpace, g) -> bool:
    """Exact test of phi(v g) = phi(v) for all v: g phi g^T + phi must be alternating."""
    F = s.field
    m = la.matmul(F, la.matmul(F, g, s.phi), np.asarray(g).T) ^ s.phi
    return _is_alternating(m)


def preserves_bil(s: QuadraticSpace, g) -> bool:
    F = s.field
    return np.array_equal(la.matmul(F, la.matmul(F, g, s.bil), np.asarray(g).T), s.bil)


def invariant_quadratic_forms(F: Field, gens) -> list:
    """Basis of the upper-triangular matrices whose quadratic forms all gens preserve."""
    gens = [np.asarray(g) for g in gens]
    d = gens[0].shape[0]
    slots = [(i, j) for i in range(d) for j in range(i, d)]
    cols = []
    for i, j in slots:
        phi = la.zeros(F, d, d)
        phi[i, j] = 1
        rows = []
        for g in gens:
            m = la.matmul(F, la.matmul(F, g, phi), g.T) ^ phi
            # coordinates of m as a quadratic form: diagonal and m_ij + m_ji
            rows.append(np.concatenate([np.diag(m), (m ^ m.T)[np.triu_indices(d, 1)]]))
        cols.append(np.concatenate(rows))
    system = np.stack(cols, axis=1).astype(F.dtype)
    out = []
    for v in la.right_nullspace(F, system):
        phi = la.zeros(F, d, d)
        for (i, j), c in zip(slots, v[0]):
            phi[i, j] = c
        out.append(phi)
    return out


def invariant_alternating_forms(F: Field, gens) -> list:
    """Basis of the alternating matrices B with g B g^T = B for all gens."""
    gens = [np.asarray(g) for g in gens]
    d = gens[0].shape[0]
    slots = [(i, j) for i in range(d) for j in range(i + 1, d)]
    cols = []
    for i, j in slots:
        b = la.zeros(F, d, d)
        b[i, j] = b[j, i] = 1
        rows = [(la.matmul(F, la.matmul(F, g, b), g.T) ^ b)[np.triu_indices(d, 1)] for g in gens]
        cols.append(np.concatenate(rows))
    if not slots:
        return []
    system = np.stack(cols, axis=1).astype(F.dtype)
    out = []
    for v in la.right_nullspace(F, system):
        b = la.zeros(F, d, d)
        for (i, j), c in zip(slots, v[0]):
            b[i, j] = b[j, i] = c
        out.append(b)
    return out
