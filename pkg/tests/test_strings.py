import numpy as np
import pytest

from stringc2 import linalg as la
from stringc2.field import field_new
from stringc2.forms import (arf, build_phi, eval_bil, eval_phi, eval_phi_many, preserves_bil,
                            preserves_phi, radical, radical_is_singular, witt_type)
from stringc2.groups import check_string_condition, commute
from stringc2.strings import (Kind, build_sp4_rank4, build_string_generators, check_isometries,
                              choose_scalars_for_type, choose_scalars_symplectic, h_matrix,
                              orthogonal_string, prescribed_arf_value, scalar_set_A,
                              scalar_set_A0, sp4_alpha, sp4_matrices, symmetric_string,
                              symmetry, symplectic_string)

from oracles import artin_schreier_image, naive_order

W, W2 = 2, 3


def test_symmetry_matrix(gf4):
    for a in (1, W, W2):
        s = build_phi(gf4, [a])
        assert symmetry(s, [1, 0]).tolist() == [[1, 0], [a, 1]]


def test_symmetry_scale_invariant(gf8):
    s = build_phi(gf8, [3, 5, 6])
    x = np.array([1, 4, 0, 7])
    assert eval_phi(s, x) != 0
    for c in range(1, 8):
        assert np.array_equal(symmetry(s, gf8.scale_table(c)[x]), symmetry(s, x))


def test_symmetry_of_singular_vector(gf4):
    with pytest.raises(ValueError):
        symmetry(build_phi(gf4, [W, W]), [1, 0, 1])


def test_symmetry_properties(gf8):
    s = build_phi(gf8, [3, 5, 6, 2])
    rng = np.random.default_rng(0)
    count = 0
    while count < 30:
        x = rng.integers(0, 8, 5)
        if eval_phi(s, x) == 0:
            continue
        g = symmetry(s, x)
        assert la.is_identity(la.matmul(gf8, g, g))
        assert preserves_phi(s, g)
        # support: the image of g - I is <x>
        delta = g ^ la.identity(gf8, 5)
        assert la.rank(gf8, delta) == 1
        assert la.rank(gf8, np.vstack([delta, x[None]])) == 1
        count += 1


def test_symmetry_fixes_perp(gf4):
    s = build_phi(gf4, [W, W2, W])
    x = np.array([1, 1, 0, 2])
    g = symmetry(s, x)
    vecs = la.span(gf4, np.eye(4, dtype=int))
    perp = [v for v in vecs if eval_bil(s, v, x) == 0]
    assert len(perp) == 4 ** 3
    for v in perp:
        assert np.array_equal(la.matmul(gf4, v[None], g)[0], v)


def test_symmetries_commute_iff_orthogonal(gf8):
    s = build_phi(gf8, [3, 5, 6])
    rng = np.random.default_rng(1)
    seen = set()
    for _ in range(300):
        x, y = rng.integers(0, 8, (2, 4))
        if eval_phi(s, x) == 0 or eval_phi(s, y) == 0:
            continue
        ortho = eval_bil(s, x, y) == 0
        assert commute(gf8, symmetry(s, x), symmetry(s, y)) == ortho
        seen.add(ortho)
    assert seen == {True, False}


def test_A0(gf2, gf4):
    # N = {0} over GF(2), so 1 belongs to A0
    assert scalar_set_A0(gf2) == [1]
    assert scalar_set_A0(gf4) == [W, W2]


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_A0_against_image(k):
    F = field_new(k)
    N = artin_schreier_image(F)
    A0 = scalar_set_A0(F)
    assert A0 == sorted(b for b in range(1, F.q) if F.inv(b) not in N)
    assert len(A0) == F.q // 2


def test_A_small_fields(gf2, gf4, gf8, gf16):
    assert scalar_set_A(gf2) == [1]
    assert scalar_set_A(gf4) == [W, W2]
    assert scalar_set_A(gf8) == [2, 4, 6]
    assert scalar_set_A(gf16) == [2, 3, 4, 5, 8, 10, 12, 15]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_A_against_repeated_multiplication(k):
    F = field_new(k)
    A = scalar_set_A(F)
    assert A and set(A) <= set(scalar_set_A0(F))
    for b in scalar_set_A0(F):
        assert (naive_order(F, h_matrix(F, b)) == F.q + 1) == (b in A)


def test_h_matrix(gf4):
    assert h_matrix(gf4, W).tolist() == [[1, 2], [2, 2]]


def test_middle_generator_d3(gf4):
    gs = build_string_generators(build_phi(gf4, [W, W]))
    assert gs.gens[1].tolist() == [[1, 2, 0], [0, 1, 0], [0, 2, 1]]
    assert gs.kind is Kind.ODD_SINGULAR


@pytest.mark.parametrize("k,scalars,kind", [
    (2, [W, W, W], Kind.ORTH_MINUS),
    (2, [W, W2, W], Kind.ORTH_PLUS),
    (2, [W, W2], Kind.SYMPLECTIC),
    (2, [W2, W, W2, W], Kind.ODD_SINGULAR),
    (3, [2, 4, 6, 2, 4], Kind.ORTH_PLUS),
    (4, [3, 15, 8], None),
])
def test_build_string_generators(k, scalars, kind):
    F = field_new(k)
    s = build_phi(F, scalars)
    gs = build_string_generators(s)
    if kind is not None:
        assert gs.kind is kind
    assert gs.rank == s.d and gs.scalars == tuple(scalars)
    assert check_string_condition(F, gs.gens)
    for i, g in enumerate(gs.gens):
        assert la.is_identity(la.matmul(F, g, g))
        assert preserves_phi(s, g)
        if i + 1 < gs.rank:
            assert la.element_order(F, la.matmul(F, g, gs.gens[i + 1])) == F.q + 1


def test_build_rejects_scalars_outside_A(gf4, gf8):
    with pytest.raises(ValueError):
        build_string_generators(build_phi(gf4, [W, 1]))
    with pytest.raises(ValueError):
        build_string_generators(build_phi(gf8, [2, 3]))  # 3 is in neither A0 nor A
    s = build_phi(gf4, [W])
    with pytest.raises(ValueError):
        build_string_generators(type(s)(gf4, s.phi))


def test_isometry_probes(gf4):
    rng = np.random.default_rng(5)
    for gs in (orthogonal_string(gf4, 4, "-"), orthogonal_string(gf4, 4, "+"),
               symplectic_string(gf4, 3), symplectic_string(gf4, 5)):
        s = gs.space
        probes = la.span(gf4, np.eye(s.d, dtype=int)) if s.d <= 4 else \
            la.projective_points(gf4, np.eye(s.d, dtype=int))
        probes = np.vstack([probes, rng.integers(0, 4, (100, s.d)).astype(gf4.dtype)])
        before = eval_phi_many(s, probes)
        for g in gs.gens:
            after = eval_phi_many(s, la.right_mul(gf4, probes[:, None], g)[:, 0])
            assert np.array_equal(before, after)
        assert check_isometries(gs)


def test_swapped_order_breaks_string_condition(gf4):
    gs = symplectic_string(gf4, 5)
    g = list(gs.gens)
    assert not check_string_condition(gf4, [g[0], g[2], g[1], g[3], g[4]])


def test_choose_scalars_for_type(gf4):
    assert choose_scalars_for_type(gf4, 4, "-") == [W, W, W]
    assert choose_scalars_for_type(gf4, 4, "+") == [W, W2, W]
    assert choose_scalars_for_type(gf4, 2, "-") == [W]
    with pytest.raises(ValueError):
        choose_scalars_for_type(gf4, 2, "+")
    with pytest.raises(ValueError):
        choose_scalars_for_type(gf4, 5, "+")
    with pytest.raises(ValueError):
        choose_scalars_for_type(gf4, 4, "x")
    with pytest.raises(ValueError):
        choose_scalars_for_type(field_new(1), 4, "-")


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("d", [4, 6, 8])
@pytest.mark.parametrize("eps", ["+", "-"])
def test_prescribed_type(k, d, eps):
    F = field_new(k)
    scalars = choose_scalars_for_type(F, d, eps)
    s = build_phi(F, scalars)
    assert witt_type(s) == eps
    A = scalar_set_A(F)
    lam, mu = scalars[0], scalars[1]
    assert scalars == [lam] + [mu] * (d - 3) + [lam]
    # least pair: every earlier (lambda, mu) gives the other type
    for l2 in A:
        for m2 in A:
            if (l2, m2) < (lam, mu):
                assert witt_type(build_phi(F, [l2] + [m2] * (d - 3) + [l2])) != eps


@pytest.mark.parametrize("k", [2, 3, 4])
def test_prescribed_arf_formula(k):
    F = field_new(k)
    A = scalar_set_A(F)
    for m in range(2, 6):
        for lam in A:
            for mu in A:
                s = build_phi(F, [lam] + [mu] * (2 * m - 3) + [lam])
                val = prescribed_arf_value(F, m, lam, mu)
                assert arf(s) == (0 if F.in_artin_schreier_N(val) else 1)


def test_choose_scalars_symplectic(gf4):
    assert choose_scalars_symplectic(gf4, 3) == [W, W2]
    sc = choose_scalars_symplectic(gf4, 5)
    assert not radical_is_singular(build_phi(gf4, sc))
    with pytest.raises(ValueError):
        choose_scalars_symplectic(gf4, 4)


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("d", [3, 5, 7])
def test_symplectic_radical(k, d):
    F = field_new(k)
    s = build_phi(F, choose_scalars_symplectic(F, d))
    assert len(radical(s)) == 1 and not radical_is_singular(s)
    assert symplectic_string(F, d).kind is Kind.SYMPLECTIC


def test_orthogonal_string_meta(gf4):
    gs = orthogonal_string(gf4, 4, "+")
    assert gs.meta == {"lambda": W, "mu": W2}
    assert gs.kind is Kind.ORTH_PLUS


def test_symmetric_string():
    gs = symmetric_string(4)
    F = gs.field
    assert F.q == 2 and gs.kind is Kind.SYMMETRIC and gs.rank == 4
    assert scalar_set_A(F) == [1]
    for i in range(3):
        assert la.element_order(F, la.matmul(F, gs.gens[i], gs.gens[i + 1])) == 3
    assert check_string_condition(F, gs.gens)


def test_sp4_alpha(gf4, gf8, gf16):
    assert sp4_alpha(gf4) == 2
    for F in (gf4, gf8, gf16):
        a = sp4_alpha(F)
        m = la.asmatrix(F, [[0, 1], [1, F.square(a)]])
        assert la.element_order(F, m) == F.q + 1
        for b in range(1, a):
            m = la.asmatrix(F, [[0, 1], [1, F.square(b)]])
            assert la.element_order(F, m) != F.q + 1


def test_sp4_matrices(gf4):
    su, rho, sw, tau = sp4_matrices(gf4, 2)
    expected_tau = np.eye(4, dtype=int)
    expected_tau[3, 2] = 2
    assert tau.tolist() == expected_tau.tolist()
    for g in (su, rho, sw, tau):
        assert la.is_identity(la.matmul(gf4, g, g))


@pytest.mark.parametrize("k", [2, 3])
def test_build_sp4_rank4(k):
    F = field_new(k)
    gs = build_sp4_rank4(F)
    su, rho, sw, tau = gs.gens
    assert gs.kind is Kind.SP4_RANK4 and gs.meta == {"alpha": sp4_alpha(F)}
    assert check_string_condition(F, gs.gens)
    assert la.element_order(F, la.matmul(F, su, rho)) == 2 * (F.q + 1)
    assert la.element_order(F, la.matmul(F, rho, sw)) == 2 * (F.q + 1)
    assert all(preserves_phi(gs.space, g) for g in gs.gens[:3])
    assert not preserves_phi(gs.space, tau)
    assert all(preserves_bil(gs.space, g) for g in gs.gens)
    assert la.rank(F, gs.space.bil) == 4
    assert check_isometries(gs)
    with pytest.raises(ValueError):
        build_sp4_rank4(field_new(1))
