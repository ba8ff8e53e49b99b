"""Arithmetic in GF(2^k), 1 <= k <= 16.

Elements are plain Python ints holding the bit pattern of a polynomial in the
generator x (bit i is the coefficient of x^i). Vectorised helpers operate on
numpy arrays of such bit patterns; they are what the matrix code uses.
"""

from functools import lru_cache

import numpy as np

# Conway polynomials over GF(2), bit i = coefficient of x^i.
CONWAY_POLYNOMIALS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1011011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10001101111,
    11: 0b100000000101,
    12: 0b1000011101011,
    13: 0b10000000011011,
    14: 0b100000010101001,
    15: 0b1000000000110101,
    16: 0b10000000000101101,
}

MAX_K = 16


def poly_mod(a: int, m: int) -> int:
    """Remainder of a modulo m, both polynomials over GF(2) packed as ints."""
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible(m: int) -> bool:
    """Trial division by every polynomial of degree <= deg(m)/2."""
    deg = m.bit_length() - 1
    if deg < 1:
        return False
    for p in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(m, p) == 0:
            return False
    return True


class Field:
    """The field GF(2^k) modulo its Conway polynomial.

    Construct through :func:`field_new`, which caches one instance per k.
    """

    def __init__(self, k: int):
        if not isinstance(k, (int, np.integer)) or not 1 <= k <= MAX_K:
            raise ValueError(f"k must be an integer in [1, {MAX_K}], got {k!r}")
        k = int(k)
        self.k = k
        self.q = 1 << k
        self.modulus = CONWAY_POLYNOMIALS[k]
        if not is_irreducible(self.modulus):
            raise ArithmeticError(f"modulus {self.modulus:#x} is reducible")
        self.dtype = np.uint8 if k <= 8 else np.uint16

        q = self.q
        # x is primitive for a Conway polynomial (for k = 1, x = 1).
        gen = 2 if k > 1 else 1
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        a = 1
        for i in range(q - 1):
            exp[i] = a
            log[a] = i
            a = self._slow_mul(a, gen)
        if a != 1 or len(set(exp[: q - 1].tolist())) != q - 1:
            raise ArithmeticError("generator is not primitive")
        exp[q - 1:] = exp[: q - 1]
        self._exp = exp
        self._log = log
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
        self._inv = inv.astype(self.dtype)
        self._mul_table = None
        if k <= 8:
            table = exp[(log[:, None] + log[None, :])]
            table[0, :] = 0
            table[:, 0] = 0
            self._mul_table = table.astype(self.dtype)
        self._scale_cache = {}

    def __repr__(self):
        return f"GF(2^{self.k})"

    def __reduce__(self):
        return field_new, (self.k,)

    # scalar arithmetic -----------------------------------------------------

    def _slow_mul(self, a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> self.k & 1:
                a ^= self.modulus
        return r

    def check(self, a) -> int:
        a = int(a)
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of {self}")
        return a

    def elements(self):
        return range(self.q)

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return int(self._inv[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if n == 0 else 0
        return int(self._exp[(self._log[a] * n) % (self.q - 1)])

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def trace(self, a: int) -> int:
        """Absolute trace a + a^2 + a^4 + ... + a^(2^(k-1)), which lies in {0, 1}."""
        t = 0
        x = a
        for _ in range(self.k):
            t ^= x
            x = self.square(x)
        return t

    def in_artin_schreier_N(self, beta: int) -> bool:
        """Whether beta = a^2 + a for some a in the field.

        The image of a -> a^2 + a is the kernel of the absolute trace.
        """
        return self.trace(self.check(beta)) == 0

    # vectorised arithmetic -------------------------------------------------

    def vmul(self, a, b):
        """Elementwise product of two broadcastable arrays of elements."""
        a = np.asarray(a)
        b = np.asarray(b)
        if self._mul_table is not None:
            return self._mul_table[a, b]
        la = self._log[a]
        lb = self._log[b]
        out = self._exp[la + lb].astype(self.dtype)
        return np.where((a == 0) | (b == 0), 0, out).astype(self.dtype)

    def scale_table(self, c: int):
        """Lookup table t with t[x] = c * x."""
        t = self._scale_cache.get(c)
        if t is None:
            if self._mul_table is not None:
                t = self._mul_table[c].copy()
            else:
                t = self.vmul(np.full(self.q, c), np.arange(self.q))
            self._scale_cache[c] = t
        return t

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]


@lru_cache(maxsize=None)
def field_new(k: int) -> Field:
    return Field(k)


def field_of_order(q: int) -> Field:
    """The field with q = 2^k elements."""
    q = int(q)
    if q < 2 or q & (q - 1):
        raise ValueError(f"q = {q} is not a power of 2")
    return field_new(q.bit_length() - 1)

