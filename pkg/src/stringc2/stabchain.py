"""Group orders from a stabiliser chain, for groups too large to enumerate.

A matrix group acts faithfully on the q^d vectors of its row space. We turn
each generator into a permutation of those vectors and run the deterministic
Schreier-Sims algorithm; the order is the product of the basic orbit lengths.
"""

import numpy as np

from . import linalg as la
from .field import Field

MAX_POINTS = 1 << 24


def vector_index(F: Field, vecs) -> np.ndarray:
    """Index of each row vector: its entries as base-q digits, first entry highest."""
    vecs = np.asarray(vecs, dtype=np.int64)
    idx = np.zeros(vecs.shape[0], dtype=np.int64)
    for j in range(vecs.shape[1]):
        idx = (idx << F.k) | vecs[:, j]
    return idx


def all_vectors(F: Field, d: int) -> np.ndarray:
    n = F.q ** d
    idx = np.arange(n, dtype=np.int64)
    out = np.empty((n, d), dtype=F.dtype)
    for j in range(d - 1, -1, -1):
        out[:, j] = idx & (F.q - 1)
        idx >>= F.k
    return out


def matrix_permutations(F: Field, gens, max_points: int = MAX_POINTS) -> list:
    """Each matrix g as the permutation v -> v g of the vector indices."""
    d = np.asarray(gens[0]).shape[0]
    n = F.q ** d
    if n > max_points:
        raise ValueError(f"{n} points exceed the limit of {max_points}")
    vecs = all_vectors(F, d)
    dtype = np.uint16 if n <= 1 << 16 else np.uint32
    perms = []
    for g in gens:
        images = la.right_mul(F, vecs[:, None, :], np.asarray(g))[:, 0, :]
        perms.append(vector_index(F, images).astype(dtype))
    return perms


class StabilizerChain:
    """Base, strong generators and transversals of a permutation group.

    Permutations are numpy index arrays; the image of point x under p is
    p[x], and the product "p then r" is r[p].
    """

    def __init__(self, gens, degree: int, base_hint=()):
        self.degree = degree
        self.identity = np.arange(degree, dtype=gens[0].dtype if gens else np.int64)
        self.base_hint = list(base_hint)
        self.base = []
        self.strong = []  # strong[i]: generators of the i-th stabiliser
        self.orbits = []  # orbits[i]: point -> (u, u^-1) with base[i]^u = point
        gens = [g for g in gens if not np.array_equal(g, self.identity)]
        if gens:
            self._new_level(gens[0])
            self.strong[0].extend(gens)
            self._extend_orbit(0)
            self._schreier_sims()

    @staticmethod
    def _mul(p, r):
        return r[p]

    @staticmethod
    def _inv(p):
        out = np.empty_like(p)
        out[p] = np.arange(len(p), dtype=p.dtype)
        return out

    def _moved_point(self, g):
        for b in self.base_hint:
            if g[b] != b:
                return b
        return int(np.nonzero(g != self.identity)[0][0])

    def _new_level(self, g):
        self.base.append(self._moved_point(g))
        self.strong.append([])
        self.orbits.append({self.base[-1]: (self.identity, self.identity)})

    def _extend_orbit(self, i):
        orbit = self.orbits[i]
        queue = list(orbit)
        while queue:
            pt = queue.pop()
            u = orbit[pt][0]
            for s in self.strong[i]:
                img = int(s[pt])
                if img not in orbit:
                    w = self._mul(u, s)
                    orbit[img] = (w, self._inv(w))
                    queue.append(img)

    def sift(self, g, start=0):
        """Strip g through levels start..; return (residue, level reached)."""
        for i in range(start, len(self.base)):
            pt = int(g[self.base[i]])
            if pt not in self.orbits[i]:
                return g, i
            g = self._mul(g, self.orbits[i][pt][1])
        return g, len(self.base)

    def _schreier_sims(self):
        i = len(self.base) - 1
        while i >= 0:
            found = self._check_level(i)
            if found is None:
                i -= 1
            else:
                i = found

    def _check_level(self, i):
        for pt, (u, _) in list(self.orbits[i].items()):
            for s in list(self.strong[i]):
                img = int(s[pt])
                us = self._mul(u, s)
                if np.array_equal(us, self.orbits[i][img][0]):
                    continue
                h = self._mul(us, self.orbits[i][img][1])
                res, j = self.sift(h, i + 1)
                if not np.array_equal(res, self.identity):
                    self._add_generator_from(res, i + 1, j)
                    return j
        return None

    def _add_generator_from(self, res, lo, hi):
        if hi == len(self.base):
            self._new_level(res)
        for level in range(lo, hi + 1):
            self.strong[level].append(res)
            self._extend_orbit(level)

    def order(self) -> int:
        out = 1
        for orbit in self.orbits:
            out *= len(orbit)
        return out

    def contains(self, g) -> bool:
        res, _ = self.sift(g)
        return bool(np.array_equal(res, self.identity))


def order_via_stabilizer_chain(F: Field, gens, max_points: int = MAX_POINTS) -> int:
    """Order of the matrix group generated by gens."""
    gens = [np.asarray(g) for g in gens]
    d = gens[0].shape[0]
    perms = matrix_permutations(F, gens, max_points)
    # standard basis vectors first: their pointwise stabiliser is trivial
    hint = [1 << (F.k * (d - 1 - j)) for j in range(d)]
    return StabilizerChain(perms, F.q ** d, hint).order()
