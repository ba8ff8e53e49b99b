"""Abstract regular polytopes as coset geometries of string C-groups.

The rank-i faces are the right cosets G_i x of the parabolic subgroup
G_i = <rho_j : j != i>. A face is labelled by the hex encoding of the least
(in canonical byte order) matrix it contains, and two faces of consecutive
ranks are incident when their cosets meet.
"""

from collections import defaultdict
from dataclasses import dataclass
import random

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import linalg as la
from .field import Field
from .groups import (DEFAULT_CAP, EnumeratedGroup, enumerate_group, product_orders,
                     verify_string_c_group)

POLYTOPE_CAP = 1_000_000


class VerificationError(ValueError):
    pass


@dataclass(frozen=True)
class PolytopeData:
    rank: int
    d: int
    q: int
    order: int
    f_vector: tuple
    schlafli: tuple
    faces: tuple  # faces[i]: sorted labels of the rank-i faces
    incidences: tuple  # (i, label_i, label_(i+1)), sorted
    flag_count: int


def parabolic(F: Field, gens, i: int, cap: int = DEFAULT_CAP) -> EnumeratedGroup:
    """<rho_j : j != i>."""
    if not 0 <= i < len(gens):
        raise IndexError(f"generator index {i} out of range")
    rest = [g for j, g in enumerate(gens) if j != i]
    if not rest:
        d = np.asarray(gens[0]).shape[0]
        return EnumeratedGroup(F, d, (), la.keys(F, la.identity(F, d)[None]))
    return enumerate_group(F, rest, cap)


def schlafli(F: Field, gens, cap: int = 1 << 20) -> list:
    return product_orders(F, gens, cap)


def _left_mult_perm(G: EnumeratedGroup, elems, s) -> np.ndarray:
    idx = G.index_of(la.left_mul(G.field, s, elems))
    if np.any(idx < 0):
        raise ValueError("generator does not preserve the element set")
    return idx


def coset_labels(G: EnumeratedGroup, elems, sub_gens) -> np.ndarray:
    """For each element x of G, the index of the least element of H x, H = <sub_gens>."""
    n = G.order
    if not sub_gens:
        return np.arange(n)
    rows = np.concatenate([np.arange(n)] * len(sub_gens))
    cols = np.concatenate([_left_mult_perm(G, elems, s) for s in sub_gens])
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    _, comp = connected_components(graph, directed=True, connection="weak")
    least = np.full(comp.max() + 1, n, dtype=np.int64)
    np.minimum.at(least, comp, np.arange(n))
    return least[comp]


def build_polytope(F: Field, gens, cap: int = POLYTOPE_CAP, verify: bool = True) -> PolytopeData:
    """Coset geometry of the string C-group generated by gens."""
    gens = [la.asmatrix(F, g) for g in gens]
    n = len(gens)
    if verify:
        rep = verify_string_c_group(F, gens, cap=max(cap, DEFAULT_CAP))
        if not rep.passed:
            raise VerificationError("generators do not form a string C-group")
    G = enumerate_group(F, gens, cap)
    elems = G.elements()
    packed = la.packed_from_keys(G.keys, G.width)

    def label(idx):
        return packed[idx].tobytes().hex()

    ranks = []
    faces = []
    for i in range(n):
        lab = coset_labels(G, elems, [g for j, g in enumerate(gens) if j != i])
        ranks.append(lab)
        faces.append(tuple(label(x) for x in np.unique(lab)))
    incidences = []
    for i in range(n - 1):
        pairs = np.unique(np.stack([ranks[i], ranks[i + 1]], axis=1), axis=0)
        incidences.extend((i, label(a), label(b)) for a, b in pairs)
    flags = len(np.unique(np.stack(ranks, axis=1), axis=0))
    return PolytopeData(
        rank=n,
        d=G.d,
        q=F.q,
        order=G.order,
        f_vector=tuple(len(f) for f in faces),
        schlafli=tuple(product_orders(F, gens)),
        faces=tuple(faces),
        incidences=tuple(sorted(incidences)),
        flag_count=flags,
    )


# combinatorics recovered from the incidence data ----------------------------------

def _adjacency(p: PolytopeData):
    up = defaultdict(set)
    down = defaultdict(set)
    for i, a, b in p.incidences:
        up[(i, a)].add(b)
        down[(i + 1, b)].add(a)
    return up, down


def count_flags(p: PolytopeData) -> int:
    """Number of chains F_0 < F_1 < ... < F_(n-1) through consecutive incidences."""
    up, _ = _adjacency(p)
    counts = {f: 1 for f in p.faces[0]}
    for i in range(p.rank - 1):
        nxt = defaultdict(int)
        for f, c in counts.items():
            for g in up[(i, f)]:
                nxt[g] += c
        counts = nxt
    return sum(counts.values())


def _above(up, i, faces, j):
    """Faces of rank j above the given rank-i faces."""
    cur = set(faces)
    for r in range(i, j):
        cur = set().union(*(up[(r, f)] for f in cur)) if cur else set()
    return cur


def _below(down, i, faces, j):
    cur = set(faces)
    for r in range(i, j, -1):
        cur = set().union(*(down[(r, f)] for f in cur)) if cur else set()
    return cur


def schlafli_from_incidences(p: PolytopeData) -> tuple:
    """Entry i counts the rank-i faces in a section F_(i-1) < . < F_(i+2)."""
    up, down = _adjacency(p)
    out = []
    for i in range(p.rank - 1):
        cand = set(p.faces[i])
        if i + 2 < p.rank:
            top = p.faces[i + 2][0]
            cand &= _below(down, i + 2, [top], i)
            lows = _below(down, i + 2, [top], i - 1) if i >= 1 else None
        else:
            lows = set(p.faces[i - 1]) if i >= 1 else None
        if lows:
            cand &= _above(up, i - 1, [min(lows)], i)
        out.append(len(cand))
    return tuple(out)


def check_diamond(p: PolytopeData, samples: int = 200, seed: int = 0) -> bool:
    """Every incident pair of ranks i-1 < i+1 has exactly two faces of rank i between.

    Exhaustive up to 10^4 faces per rank, otherwise sampled.
    """
    up, down = _adjacency(p)
    rng = random.Random(seed)
    for i in range(1, p.rank - 1):
        lows = list(p.faces[i - 1])
        if len(lows) > 10_000:
            lows = rng.sample(lows, samples)
        for lo in lows:
            for hi in _above(up, i - 1, [lo], i + 1):
                between = up[(i - 1, lo)] & down[(i + 1, hi)]
                if len(between) != 2:
                    return False
    # ranks 0 and n-1 against the improper faces
    for f in p.faces[1][:samples] if p.rank > 1 else ():
        if len(down[(1, f)]) != 2:
            return False
    for f in p.faces[p.rank - 2][:samples] if p.rank > 1 else ():
        if len(up[(p.rank - 2, f)]) != 2:
            return False
    return True


# export ------------------------------------------------------------------------

def incidence_text(p: PolytopeData) -> str:
    lines = [f"{p.rank} {p.d} {p.q} {p.order}"]
    for i, labels in enumerate(p.faces):
        lines.extend(f"F {i} {lab}" for lab in labels)
    lines.extend(f"I {i} {a} {b}" for i, a, b in p.incidences)
    return "\n".join(lines) + "\n"


def export_incidence(p: PolytopeData, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(incidence_text(p))


def parse_incidence(text: str) -> PolytopeData:
    lines = text.splitlines()
    try:
        rank, d, q, order = (int(x) for x in lines[0].split())
    except (IndexError, ValueError) as exc:
        raise ValueError("bad incidence header") from exc
    faces = [[] for _ in range(rank)]
    incidences = []
    for ln, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "F" and len(parts) == 3:
            faces[int(parts[1])].append(parts[2])
        elif parts[0] == "I" and len(parts) == 4:
            incidences.append((int(parts[1]), parts[2], parts[3]))
        else:
            raise ValueError(f"line {ln}: cannot parse {line!r}")
    p = PolytopeData(rank, d, q, order, tuple(len(f) for f in faces), (),
                     tuple(tuple(sorted(f)) for f in faces), tuple(sorted(incidences)), 0)
    return PolytopeData(rank, d, q, order, p.f_vector, schlafli_from_incidences(p), p.faces,
                        p.incidences, count_flags(p))


def import_incidence(path) -> PolytopeData:
    with open(path, encoding="ascii") as fh:
        return parse_incidence(fh.read())
