"""Dense matrices over GF(2^k).

Matrices are numpy arrays of field bit patterns (dtype ``F.dtype``); every
function takes the field as its first argument. Vectors are rows, so a vector
v is acted on by a matrix g as ``v @ g``. Products accept stacks of matrices
(arrays of shape ``(..., n, m)``), which is what group enumeration relies on.
"""

import numpy as np

from .field import Field


class SingularMatrixError(ValueError):
    pass


def asmatrix(F: Field, a) -> np.ndarray:
    a = np.asarray(a)
    if a.size and (a.min() < 0 or a.max() >= F.q):
        raise ValueError(f"entries out of range for {F}")
    return a.astype(F.dtype)


def identity(F: Field, d: int) -> np.ndarray:
    return np.eye(d, dtype=F.dtype)


def zeros(F: Field, rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=F.dtype)


def unit_vector(F: Field, d: int, i: int) -> np.ndarray:
    v = np.zeros((1, d), dtype=F.dtype)
    v[0, i] = 1
    return v


def matmul(F: Field, a, b) -> np.ndarray:
    """Matrix product over F; either operand may be a stack of matrices."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim < 2 or b.ndim < 2 or a.shape[-1] != b.shape[-2]:
        raise ValueError(f"shape mismatch: {a.shape} @ {b.shape}")
    if b.ndim == 2 and a.ndim > 2:
        return right_mul(F, a, b)
    if a.ndim == 2 and b.ndim > 2:
        return left_mul(F, a, b)
    shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
    out = np.zeros(shape, dtype=F.dtype)
    for k in range(a.shape[-1]):
        out ^= F.vmul(a[..., :, k, None], b[..., None, k, :])
    return out


def right_mul(F: Field, stack, g) -> np.ndarray:
    """``stack @ g`` for a stack of matrices and one constant matrix g.

    Works column by column with per-constant lookup tables and writes ``g`` as
    ``I + (g - I)`` when that is sparser, which is the common case for the
    involutions generating our groups.
    """
    stack = np.asarray(stack)
    g = np.asarray(g)
    n = g.shape[0]
    use_identity = g.shape[0] == g.shape[1] and (
        np.count_nonzero(g ^ np.eye(n, dtype=g.dtype)) < np.count_nonzero(g))
    if use_identity:
        out = stack.copy()
        delta = g ^ np.eye(n, dtype=g.dtype)
    else:
        out = np.zeros(stack.shape[:-1] + (g.shape[1],), dtype=F.dtype)
        delta = g
    for k, j in zip(*np.nonzero(delta)):
        c = int(delta[k, j])
        col = stack[..., :, k]
        out[..., :, j] ^= col if c == 1 else F.scale_table(c)[col]
    return out


def left_mul(F: Field, g, stack) -> np.ndarray:
    """``g @ stack`` for one constant matrix g and a stack of matrices."""
    stack = np.asarray(stack)
    gt = np.asarray(g).T
    return np.swapaxes(right_mul(F, np.swapaxes(stack, -1, -2), gt), -1, -2)


def matpow(F: Field, a, n: int) -> np.ndarray:
    a = np.asarray(a)
    if n < 0:
        a = inverse(F, a)
        n = -n
    result = identity(F, a.shape[0])
    while n:
        if n & 1:
            result = matmul(F, result, a)
        a = matmul(F, a, a)
        n >>= 1
    return result


def is_identity(a) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and np.array_equal(a, np.eye(a.shape[0], dtype=a.dtype))


def rref(F: Field, a):
    """Reduced row echelon form and pivot columns."""
    m = np.array(a, dtype=F.dtype, copy=True)
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        p = r + nz[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        m[r] = F.scale_table(F.inv(int(m[r, c])))[m[r]]
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] ^= F.scale_table(int(m[i, c]))[m[r]]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(F: Field, a) -> int:
    return len(rref(F, a)[1])


def inverse(F: Field, a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"inverse of non-square shape {a.shape}")
    d = a.shape[0]
    red, piv = rref(F, np.hstack([a.astype(F.dtype), identity(F, d)]))
    if piv[:d] != list(range(d)) or len(piv) < d:
        raise SingularMatrixError("matrix is singular")
    return red[:, d:].copy()


def right_nullspace(F: Field, a) -> list:
    """Basis of {x : a x^T = 0}, as a list of 1 x n row vectors."""
    a = np.asarray(a)
    red, piv = rref(F, a)
    n = a.shape[1]
    free = [c for c in range(n) if c not in piv]
    basis = []
    for fcol in free:
        v = np.zeros((1, n), dtype=F.dtype)
        v[0, fcol] = 1
        for i, pc in enumerate(piv):
            v[0, pc] = red[i, fcol]
        basis.append(v)
    return basis


def nullspace(F: Field, a) -> list:
    """Left nullspace {v : v a = 0}, matching the row-vector convention."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("nullspace expects a square matrix")
    return right_nullspace(F, a.T)


def element_order(F: Field, a, cap: int = 1 << 20) -> int:
    """Least n >= 1 with a^n = I, by repeated multiplication."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("element_order expects a square matrix")
    if rank(F, a) != a.shape[0]:
        raise SingularMatrixError("singular matrix has no order")
    x = a
    for n in range(1, cap + 1):
        if is_identity(x):
            return n
        x = matmul(F, x, a)
    raise OverflowError(f"order exceeds cap {cap}")


def has_order(F: Field, a, n: int) -> bool:
    """Exact test that a has multiplicative order n, via fast powering."""
    if not is_identity(matpow(F, a, n)):
        return False
    return all(not is_identity(matpow(F, a, n // p)) for p in prime_factors(n))


def prime_factors(n: int) -> list:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def span(F: Field, vectors) -> np.ndarray:
    """All q^r vectors in the span of r row vectors, as an (q^r, d) array."""
    vecs = [np.asarray(v).reshape(-1) for v in vectors]
    d = len(vecs[0])
    out = np.zeros((1, d), dtype=F.dtype)
    for v in vecs:
        scaled = np.stack([F.scale_table(c)[v] for c in range(F.q)])
        out = (out[:, None, :] ^ scaled[None, :, :]).reshape(-1, d)
    return out


def projective_points(F: Field, vectors) -> np.ndarray:
    """One normalised representative (leading entry 1) per point of the span."""
    allv = span(F, vectors)
    keep = []
    for v in allv:
        nz = np.nonzero(v)[0]
        if len(nz) and v[nz[0]] == 1:
            keep.append(v)
    return np.array(keep, dtype=F.dtype).reshape(-1, allv.shape[1])


def normalize_rows(F: Field, vecs) -> np.ndarray:
    """Scale each nonzero row so that its leading entry is 1."""
    vecs = np.array(vecs, dtype=F.dtype, copy=True)
    for v in vecs:
        nz = np.nonzero(v)[0]
        if len(nz):
            v[:] = F.scale_table(F.inv(int(v[nz[0]])))[v]
    return vecs


# text format ------------------------------------------------------------------

def to_text(a) -> str:
    """Rows separated by ';', entries by ',', elements as decimal bit patterns."""
    a = np.asarray(a)
    return ";".join(",".join(str(int(x)) for x in row) for row in a)


def from_text(F: Field, text: str) -> np.ndarray:
    rows = [r for r in text.strip().split(";")]
    try:
        data = [[int(x) for x in r.split(",")] for r in rows]
    except ValueError as exc:
        raise ValueError(f"cannot parse matrix {text!r}") from exc
    if len({len(r) for r in data}) != 1:
        raise ValueError(f"ragged matrix {text!r}")
    return asmatrix(F, data)


# canonical encoding ------------------------------------------------------------

def entry_bits(F: Field) -> int:
    """Bits per entry in the canonical encoding: 2, 4, 8 or 16."""
    for b in (2, 4, 8):
        if F.k <= b:
            return b
    return 16


def packed_width(F: Field, d: int, cols: int | None = None) -> int:
    cols = d if cols is None else cols
    return (d * cols * entry_bits(F) + 7) // 8


def pack(F: Field, mats) -> np.ndarray:
    """Row-major packed bytes of a stack of matrices, shape (n, width).

    Entries are written most significant first, so byte order agrees with
    entrywise lexicographic order.
    """
    mats = np.asarray(mats)
    n = mats.shape[0] if mats.ndim == 3 else 1
    flat = mats.reshape(n, mats.shape[-2] * mats.shape[-1])
    b = entry_bits(F)
    if b == 16:
        return flat.astype(">u2").view(np.uint8).reshape(n, 2 * flat.shape[1]).copy()
    if b == 8:
        return flat.astype(np.uint8).copy()
    per = 8 // b
    m = flat.shape[1]
    padded = np.zeros((n, -(-m // per) * per), dtype=np.uint8)
    padded[:, :m] = flat
    padded = padded.reshape(n, -1, per)
    out = np.zeros(padded.shape[:2], dtype=np.uint8)
    for j in range(per):
        out |= padded[:, :, j] << (8 - b * (j + 1))
    return out


def unpack(F: Field, packed, d: int, cols: int | None = None) -> np.ndarray:
    cols = d if cols is None else cols
    packed = np.asarray(packed, dtype=np.uint8)
    n = packed.shape[0]
    m = d * cols
    b = entry_bits(F)
    if b == 16:
        flat = packed.reshape(n, -1).view(">u2").astype(F.dtype)
    elif b == 8:
        flat = packed.astype(F.dtype)
    else:
        per = 8 // b
        mask = (1 << b) - 1
        parts = [(packed >> (8 - b * (j + 1))) & mask for j in range(per)]
        flat = np.stack(parts, axis=2).reshape(n, -1)[:, :m].astype(F.dtype)
    return flat.reshape(n, d, cols)


def canonical_bytes(F: Field, a) -> bytes:
    return pack(F, np.asarray(a)[None])[0].tobytes()


def keys_from_packed(packed) -> np.ndarray:
    """Sortable keys whose order equals byte-lexicographic order.

    Encodings of up to 8 bytes become big-endian uint64; longer ones become a
    fixed-width void dtype (compared bytewise by numpy).
    """
    packed = np.ascontiguousarray(packed, dtype=np.uint8)
    n, w = packed.shape
    if w <= 8:
        buf = np.zeros((n, 8), dtype=np.uint8)
        buf[:, 8 - w:] = packed
        return buf.view(">u8").reshape(n).astype(np.uint64)
    return packed.view(np.dtype((np.void, w))).reshape(n)


def packed_from_keys(keys, width: int) -> np.ndarray:
    keys = np.asarray(keys)
    n = keys.shape[0]
    if keys.dtype == np.uint64:
        return keys.astype(">u8").view(np.uint8).reshape(n, 8)[:, 8 - width:]
    return keys.view(np.uint8).reshape(n, width)


def keys(F: Field, mats) -> np.ndarray:
    return keys_from_packed(pack(F, mats))
