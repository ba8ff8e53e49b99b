"""Matrix groups over GF(2^k) by explicit enumeration.

Group elements are stored as sorted canonical keys (see
:func:`stringc2.linalg.keys`), so membership is a binary search and
intersection is a sorted-array intersection.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
import logging

import numpy as np

from . import linalg as la
from .field import Field

log = logging.getLogger(__name__)

DEFAULT_CAP = 20_000_000
MAXIMALITY_CAP = 100_000


class CapExceededError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class EnumeratedGroup:
    field: Field
    d: int
    generators: tuple
    keys: np.ndarray

    @property
    def order(self) -> int:
        return len(self.keys)

    def __len__(self):
        return len(self.keys)

    @property
    def width(self) -> int:
        return la.packed_width(self.field, self.d)

    def elements(self) -> np.ndarray:
        """All elements as an (order, d, d) array, in key order."""
        return la.unpack(self.field, la.packed_from_keys(self.keys, self.width), self.d)

    def index_of(self, mats) -> np.ndarray:
        """Positions of the given matrices in key order; -1 for non-members."""
        k = la.keys(self.field, np.asarray(mats).reshape(-1, self.d, self.d))
        pos = np.searchsorted(self.keys, k)
        pos = np.minimum(pos, len(self.keys) - 1)
        return np.where(self.keys[pos] == k, pos, -1)

    def contains(self, m) -> bool:
        m = np.asarray(m)
        if m.shape != (self.d, self.d):
            raise ValueError(f"expected a {self.d}x{self.d} matrix, got shape {m.shape}")
        return bool(self.index_of(m)[0] >= 0)

    __contains__ = contains

    def same_elements(self, other: "EnumeratedGroup") -> bool:
        return self.order == other.order and bool(np.all(self.keys == other.keys))

    def issubset(self, other: "EnumeratedGroup") -> bool:
        if self.order > other.order:
            return False
        pos = np.searchsorted(other.keys, self.keys)
        pos = np.minimum(pos, other.order - 1)
        return bool(np.all(other.keys[pos] == self.keys))


def _check_gens(F, gens):
    gens = [la.asmatrix(F, g) for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    d = gens[0].shape[0]
    for g in gens:
        if g.shape != (d, d):
            raise ValueError("generators must be square matrices of equal size")
        if la.rank(F, g) != d:
            raise la.SingularMatrixError("generator is not invertible")
    return gens, d


def _inverse_closed(F, gens) -> bool:
    ks = set(la.keys(F, np.stack(gens)).tolist())
    return all(la.keys(F, la.inverse(F, g)[None])[0].item() in ks for g in gens)


def _sorted_unique(keys, mats):
    uk, idx = np.unique(keys, return_index=True)
    return uk, mats[idx]


def _not_in(keys, sorted_ref):
    if len(sorted_ref) == 0:
        return np.ones(len(keys), dtype=bool)
    pos = np.minimum(np.searchsorted(sorted_ref, keys), len(sorted_ref) - 1)
    return sorted_ref[pos] != keys


def enumerate_group(F: Field, gens, cap: int = DEFAULT_CAP, threads: int = 1) -> EnumeratedGroup:
    """Breadth-first closure of the identity under right multiplication by gens.

    For an inverse-closed generating set (e.g. involutions) only the two most
    recent layers are consulted when discarding repeats. ``threads`` splits
    each frontier across worker threads; the resulting element set does not
    depend on it.
    """
    gens, d = _check_gens(F, gens)
    symmetric = _inverse_closed(F, gens)
    ident = la.identity(F, d)[None]
    layers = [la.keys(F, ident)]
    frontier = ident
    total = 1
    pool = ThreadPoolExecutor(threads) if threads > 1 else None

    def expand(chunk):
        prods = np.concatenate([la.right_mul(F, chunk, g) for g in gens])
        return la.keys(F, prods), prods

    try:
        while len(frontier):
            if pool is None:
                k, prods = expand(frontier)
            else:
                chunks = [c for c in np.array_split(frontier, threads) if len(c)]
                parts = list(pool.map(expand, chunks))
                k = np.concatenate([p[0] for p in parts])
                prods = np.concatenate([p[1] for p in parts])
            k, prods = _sorted_unique(k, prods)
            recent = layers[-2:] if symmetric else layers
            keep = np.ones(len(k), dtype=bool)
            for ref in recent:
                keep &= _not_in(k, ref)
            k, frontier = k[keep], prods[keep]
            total += len(k)
            if total > cap:
                raise CapExceededError(f"group has more than {cap} elements")
            if len(k):
                layers.append(k)
    finally:
        if pool is not None:
            pool.shutdown()
    allkeys = np.sort(np.concatenate(layers))
    return EnumeratedGroup(F, d, tuple(gens), allkeys)


def contains(g: EnumeratedGroup, m) -> bool:
    return g.contains(m)


def intersect(a: EnumeratedGroup, b: EnumeratedGroup) -> EnumeratedGroup:
    """Set intersection of two enumerated groups (no generating set is kept)."""
    if a.field is not b.field or a.d != b.d:
        raise ValueError("groups live over different fields or dimensions")
    k = np.intersect1d(a.keys, b.keys, assume_unique=True)
    return EnumeratedGroup(a.field, a.d, (), k)


def is_involution(F: Field, g) -> bool:
    g = np.asarray(g)
    return not la.is_identity(g) and la.is_identity(la.matmul(F, g, g))


def _require_involutions(F, gens):
    for i, g in enumerate(gens):
        if not is_involution(F, g):
            raise ValueError(f"generator {i} is not an involution")


def commute(F: Field, a, b) -> bool:
    return np.array_equal(la.matmul(F, a, b), la.matmul(F, b, a))


def check_string_condition(F: Field, gens) -> bool:
    """rho_i rho_j != rho_j rho_i exactly when |i - j| = 1."""
    gens = [np.asarray(g) for g in gens]
    _require_involutions(F, gens)
    for i, j in combinations(range(len(gens)), 2):
        if commute(F, gens[i], gens[j]) == (j - i == 1):
            return False
    return True


class _SubgroupCache:
    """Enumerations of <gens[i] : i in I>, keyed by the index tuple I."""

    def __init__(self, F, gens, cap, threads=1):
        self.F = F
        self.gens = [np.asarray(g) for g in gens]
        self.d = self.gens[0].shape[0]
        self.cap = cap
        self.threads = threads
        self._cache = {}

    def __call__(self, idx) -> EnumeratedGroup:
        idx = tuple(sorted(idx))
        grp = self._cache.get(idx)
        if grp is None:
            if idx:
                grp = enumerate_group(self.F, [self.gens[i] for i in idx], self.cap, self.threads)
            else:
                ident = la.identity(self.F, self.d)
                grp = EnumeratedGroup(self.F, self.d, (), la.keys(self.F, ident[None]))
            self._cache[idx] = grp
        return grp


def _meet_is(a: EnumeratedGroup, b: EnumeratedGroup, c: EnumeratedGroup) -> bool:
    """Whether a and b intersect in exactly c, given that c lies in both."""
    small, big = (a, b) if a.order <= b.order else (b, a)
    meet = np.count_nonzero(~_not_in(small.keys, big.keys))
    return meet == c.order and c.issubset(small)


def check_intersection_property_full(F: Field, gens, cap: int = DEFAULT_CAP, threads: int = 1) -> bool:
    """<rho_I> meet <rho_J> = <rho_(I & J)> for every pair of index sets."""
    n = len(gens)
    if n > 5:
        raise ValueError("the exhaustive check is limited to at most 5 generators")
    _require_involutions(F, gens)
    sub = _SubgroupCache(F, gens, cap, threads)
    subsets = [frozenset(c) for r in range(n + 1) for c in combinations(range(n), r)]
    for I, J in combinations(subsets, 2):
        if I <= J or J <= I:
            continue
        if not _meet_is(sub(I), sub(J), sub(I & J)):
            log.debug("intersection property fails for %s, %s", sorted(I), sorted(J))
            return False
    return True


def check_intersection_property_recursive(F: Field, gens, cap: int = DEFAULT_CAP,
                                          threads: int = 1, _sub=None) -> bool:
    """Check via windows: prefix and suffix are C-groups and meet in the middle.

    Every window of consecutive generators is checked once; subgroup
    enumerations are shared between windows.
    """
    n = len(gens)
    if n < 1:
        raise ValueError("need at least one generator")
    _require_involutions(F, gens)
    sub = _sub or _SubgroupCache(F, gens, cap, threads)
    memo = {}

    def window_ok(lo, hi):  # generators lo .. hi-1
        if hi - lo <= 1:
            return True
        if (lo, hi) not in memo:
            ok = (window_ok(lo, hi - 1) and window_ok(lo + 1, hi)
                  and _meet_is(sub(range(lo, hi - 1)), sub(range(lo + 1, hi)),
                               sub(range(lo + 1, hi - 1))))
            memo[(lo, hi)] = ok
        return memo[(lo, hi)]

    return window_ok(0, n)


def check_maximal(sub: EnumeratedGroup, g: EnumeratedGroup, cap: int = MAXIMALITY_CAP) -> bool:
    """Whether adding any element of g outside sub to sub's generators gives all of g."""
    if not sub.issubset(g):
        raise ValueError("sub is not contained in g")
    if g.order > cap:
        raise CapExceededError(f"maximality check limited to groups of order <= {cap}")
    if sub.order == g.order:
        return False
    F = g.field
    base = list(sub.generators)
    outside = g.keys[_not_in(g.keys, sub.keys)]
    mats = la.unpack(F, la.packed_from_keys(outside, g.width), g.d)
    for x in mats:
        if enumerate_group(F, base + [x], cap=g.order).order != g.order:
            return False
    return True


def product_orders(F: Field, gens, cap: int = 1 << 20) -> list:
    """Orders of rho_i rho_(i+1) for consecutive generators."""
    return [la.element_order(F, la.matmul(F, gens[i], gens[i + 1]), cap)
            for i in range(len(gens) - 1)]


def classical_order(kind: str, m: int, q: int) -> int:
    """|Sp(2m, q)| or |O^(+/-)(2m, q)| for q a power of 2."""
    if m < 1 or q < 2 or q & (q - 1):
        raise ValueError(f"invalid parameters m={m}, q={q}")
    if kind == "Sp":
        out = q ** (m * m)
        for i in range(1, m + 1):
            out *= q ** (2 * i) - 1
        return out
    if kind in ("OrthPlus", "OrthMinus"):
        eps = 1 if kind == "OrthPlus" else -1
        out = 2 * q ** (m * (m - 1)) * (q ** m - eps)
        for i in range(1, m):
            out *= q ** (2 * i) - 1
        return out
    raise ValueError(f"unknown group kind {kind!r}")


@dataclass
class VerificationReport:
    kind: str
    parameters: dict
    string_condition: bool
    intersection_property: bool | None
    group_order: int | None
    schlafli: list
    isometry: bool | None = None
    mode: str = "recursive"

    @property
    def passed(self) -> bool:
        return bool(self.string_condition and self.intersection_property
                    and self.isometry is not False)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "parameters": self.parameters,
            "isometry": self.isometry,
            "string_condition": self.string_condition,
            "intersection_property": self.intersection_property,
            "intersection_mode": self.mode,
            "group_order": self.group_order,
            "schlafli": self.schlafli,
        }


def verify_string_c_group(F: Field, gens, mode: str = "recursive", cap: int = DEFAULT_CAP,
                          kind: str = "", parameters=None, isometry=None,
                          threads: int = 1) -> VerificationReport:
    """Run the string condition, intersection property, order and Schlafli checks."""
    gens = [np.asarray(g) for g in gens]
    string_ok = check_string_condition(F, gens)
    schlafli = product_orders(F, gens)
    ip = None
    if string_ok:
        if mode == "full":
            ip = check_intersection_property_full(F, gens, cap, threads)
        elif mode == "recursive":
            ip = check_intersection_property_recursive(F, gens, cap, threads)
        else:
            raise ValueError(f"unknown mode {mode!r}")
    try:
        order = enumerate_group(F, gens, cap, threads).order
    except CapExceededError:
        from .stabchain import order_via_stabilizer_chain
        order = order_via_stabilizer_chain(F, gens)
    return VerificationReport(kind, dict(parameters or {}), string_ok, ip, order, schlafli,
                              isometry, mode)
