import numpy as np
import pytest
from hypothesis import given, strategies as st

from stringc2 import linalg as la
from stringc2.field import field_new
from stringc2.forms import (LineClass, QuadraticSpace, arf, arf_value, build_phi, classify_line,
                            eval_bil, eval_phi, eval_phi_many, hyperbolic_basis,
                            invariant_alternating_forms, invariant_quadratic_forms,
                            preserves_bil, preserves_phi, quadratic_space, radical,
                            radical_closed_form, radical_is_singular, witt_type)

from oracles import naive_phi

W, W2 = 2, 3  # omega and omega^2 in GF(4)


def scalar_tuples(k, n):
    return st.lists(st.integers(1, (1 << k) - 1), min_size=n, max_size=n)


def test_build_phi(gf4):
    assert build_phi(gf4, [W]).phi.tolist() == [[1, 2], [0, 1]]
    s = build_phi(gf4, [W, W])
    assert s.phi.tolist() == [[1, 2, 0], [0, 1, 2], [0, 0, 1]]
    assert s.bil.tolist() == [[0, 2, 0], [2, 0, 2], [0, 2, 0]]
    assert s.d == 3
    with pytest.raises(ValueError):
        build_phi(gf4, [W, 0])
    with pytest.raises(ValueError):
        build_phi(gf4, [])
    with pytest.raises(ValueError):
        build_phi(gf4, [4])


def test_space_is_immutable_and_upper(gf4):
    s = build_phi(gf4, [W])
    with pytest.raises(ValueError):
        s.phi[0, 0] = 0
    with pytest.raises(ValueError):
        QuadraticSpace(gf4, np.array([[1, 0], [1, 1]]))
    folded = quadratic_space(gf4, [[1, 1], [3, 1]])
    assert folded.phi.tolist() == [[1, 2], [0, 1]]


def test_eval_examples(gf4):
    s = build_phi(gf4, [W, W2, W])
    for i in range(4):
        assert eval_phi(s, la.unit_vector(gf4, 4, i)) == 1
    for i, a in enumerate(s.scalars):
        assert eval_bil(s, la.unit_vector(gf4, 4, i), la.unit_vector(gf4, 4, i + 1)) == a
    assert eval_phi(build_phi(gf4, [W, W]), [1, 0, 1]) == 0
    with pytest.raises(ValueError):
        eval_phi(s, [1, 0])


@pytest.mark.parametrize("k", [2, 3, 4])
@given(data=st.data())
def test_polarization_and_naive_eval(k, data):
    F = field_new(k)
    d = data.draw(st.integers(2, 6))
    s = build_phi(F, data.draw(scalar_tuples(k, d - 1)))
    u = np.array(data.draw(st.lists(st.integers(0, F.q - 1), min_size=d, max_size=d)))
    v = np.array(data.draw(st.lists(st.integers(0, F.q - 1), min_size=d, max_size=d)))
    assert eval_bil(s, u, v) == eval_phi(s, u ^ v) ^ eval_phi(s, u) ^ eval_phi(s, v)
    assert eval_phi(s, u) == naive_phi(F, s.phi, u)
    assert eval_phi_many(s, np.stack([u, v])).tolist() == [eval_phi(s, u), eval_phi(s, v)]


def test_radical_examples(gf4):
    assert radical(build_phi(gf4, [W, W2, W])) == []
    (z,) = radical(build_phi(gf4, [W, W2]))
    assert la.normalize_rows(gf4, z).tolist() == [[1, 0, W2]]
    (z,) = radical(build_phi(gf4, [W, W2, W, W]))
    z = la.normalize_rows(gf4, z)[0]
    assert z[0] == 1 and z[1] == 0 and z[3] == 0


def test_radical_closed_form_examples(gf4):
    assert radical_closed_form(gf4, [W, W]).tolist() == [[1, 0, 1]]
    assert radical_closed_form(gf4, [W, W2]).tolist() == [[1, 0, W2]]
    with pytest.raises(ValueError):
        radical_closed_form(gf4, [W, W, W])


def test_radical_is_singular_examples(gf4):
    assert radical_is_singular(build_phi(gf4, [W, W]))
    assert not radical_is_singular(build_phi(gf4, [W, W2]))
    s = build_phi(gf4, [W] * 4)
    z = radical_closed_form(gf4, s.scalars)
    assert radical_is_singular(s) == (eval_phi(s, z) == 0)
    with pytest.raises(ValueError):
        radical_is_singular(build_phi(gf4, [W]))


@pytest.mark.parametrize("k", [2, 3])
def test_radical_sweep(k):
    F = field_new(k)
    rng = np.random.default_rng(k)
    for _ in range(100):
        d = int(rng.choice([3, 5, 7]))
        scalars = [int(x) for x in rng.integers(1, F.q, d - 1)]
        s = build_phi(F, scalars)
        z = radical_closed_form(F, scalars)
        (r,) = radical(s)
        assert np.array_equal(la.normalize_rows(F, r), z)
        assert radical_is_singular(s) == (eval_phi(s, z) == 0)
        # the nullspace path (no scalars recorded) must agree
        assert radical_is_singular(QuadraticSpace(F, s.phi)) == radical_is_singular(s)


def test_classify_line_examples(gf4):
    e1, e2 = [1, 0], [0, 1]
    assert classify_line(build_phi(gf4, [W]), e1, e2) is LineClass.ASINGULAR
    assert classify_line(build_phi(gf4, [1]), e1, e2) is LineClass.HYPERBOLIC
    with pytest.raises(ValueError):
        classify_line(build_phi(gf4, [W]), e1, [2, 0])


def test_classify_singular_line(gf4):
    # <z, v1> with z the singular radical of Phi(w, w)
    s = build_phi(gf4, [W, W])
    assert classify_line(s, [1, 0, 1], [1, 0, 0]) is LineClass.SINGULAR


def test_totally_singular_line_in_plus_space(gf4):
    s = build_phi(gf4, [W, W2, W])
    assert witt_type(s) == "+"
    pts = la.projective_points(gf4, np.eye(4, dtype=int))
    singular = pts[eval_phi_many(s, pts) == 0]
    found = None
    for i, u in enumerate(singular):
        for w in singular[i + 1:]:
            if eval_bil(s, u, w) == 0:
                found = (u, w)
                break
        if found:
            break
    assert found is not None
    assert classify_line(s, *found) is LineClass.TOTALLY_SINGULAR


@pytest.mark.parametrize("k", [2, 3])
def test_line_counts_are_legal(k):
    F = field_new(k)
    rng = np.random.default_rng(7)
    s = build_phi(F, [int(x) for x in rng.integers(1, F.q, 4)])
    for _ in range(40):
        u, w = rng.integers(0, F.q, (2, 5))
        if la.rank(F, np.stack([u, w])) == 2:
            classify_line(s, u, w)  # raises on an impossible count


def test_hyperbolic_basis_examples(gf4):
    ((e, f),) = hyperbolic_basis(build_phi(gf4, [W]))
    assert e.tolist() == [[1, 0]] and f.tolist() == [[0, gf4.inv(W)]]
    pairs = hyperbolic_basis(build_phi(gf4, [W, W2, W]))
    assert pairs[1][0].tolist() == [[gf4.div(W2, W), 0, 1, 0]]
    with pytest.raises(ValueError):
        hyperbolic_basis(build_phi(gf4, [W, W]))
    with pytest.raises(ValueError):
        hyperbolic_basis(build_phi(gf4, [W]), method="nope")


def closed_form_e(F, a, i):
    """e_i = sum over j <= i of (prod_{t=j}^{i-1} a_(2t) / a_(2t-1)) v_(2j-1), 1-based."""
    d = len(a) + 1
    e = np.zeros(d, dtype=np.int64)
    for j in range(1, i + 1):
        c = 1
        for t in range(j, i):
            c = F.mul(c, F.div(a[2 * t - 1], a[2 * t - 2]))
        e[2 * j - 2] = c
    return e


def _check_pairs(s, pairs):
    vecs = [v for pair in pairs for v in pair]
    for a_i, (e, f) in enumerate(pairs):
        for b_i, (e2, f2) in enumerate(pairs):
            assert eval_bil(s, e, f2) == (1 if a_i == b_i else 0)
            assert eval_bil(s, e, e2) == 0 and eval_bil(s, f, f2) == 0
    assert la.rank(s.field, np.vstack(vecs)) == s.d


@pytest.mark.parametrize("k", [2, 3, 4])
@given(data=st.data())
def test_hyperbolic_bases(k, data):
    F = field_new(k)
    d = 2 * data.draw(st.integers(1, 4))
    a = data.draw(scalar_tuples(k, d - 1))
    s = build_phi(F, a)
    sweep = hyperbolic_basis(s, "sweep")
    greedy = hyperbolic_basis(s, "greedy")
    _check_pairs(s, sweep)
    _check_pairs(s, greedy)
    for i, (e, f) in enumerate(sweep, start=1):
        assert np.array_equal(e[0], closed_form_e(F, a, i))
        assert eval_bil(s, la.unit_vector(F, d, 2 * i - 2), f) == 1
    assert arf(s, sweep) == arf(s, greedy)
    # the Arf class does not depend on the basis, the raw sum may
    assert F.in_artin_schreier_N(arf_value(s, sweep) ^ arf_value(s, greedy))


def test_f_vectors_closed_form(gf8):
    a = [3, 5, 6, 7, 2]
    for i, (_, f) in enumerate(hyperbolic_basis(build_phi(gf8, a)), start=1):
        expected = np.zeros((1, 6), dtype=int)
        expected[0, 2 * i - 1] = gf8.inv(a[2 * i - 2])
        assert f.tolist() == expected.tolist()


def test_greedy_handles_general_forms(gf8):
    rng = np.random.default_rng(3)
    done = 0
    while done < 10:
        phi = np.triu(rng.integers(0, 8, (4, 4)))
        s = QuadraticSpace(gf8, phi)
        if la.rank(gf8, s.bil) < 4:
            with pytest.raises(ValueError):
                hyperbolic_basis(s)
            continue
        _check_pairs(s, hyperbolic_basis(s))
        done += 1


def test_arf_examples(gf4):
    assert arf(build_phi(gf4, [W])) == 1
    assert arf(build_phi(gf4, [1])) == 0
    assert arf(build_phi(gf4, [W, W2, W])) == 0


def test_witt_type_examples(gf4):
    assert witt_type(build_phi(gf4, [W, W, W])) == "-"
    assert witt_type(build_phi(gf4, [W, W2, W])) == "+"
    assert witt_type(build_phi(gf4, [W])) == "-"


@pytest.mark.parametrize("k", [2, 3])
def test_witt_type_by_counting(k):
    """A plus-type 4-space has (q+1)^2 singular points, a minus-type one q^2+1."""
    F = field_new(k)
    q = F.q
    pts = la.projective_points(F, np.eye(4, dtype=int))
    for a in [(1, 1, 1), (2, 3, 2), (3, 1, 2), (2, 2, 2)]:
        s = build_phi(F, a)
        n = int(np.count_nonzero(eval_phi_many(s, pts) == 0))
        assert n == ((q + 1) ** 2 if witt_type(s) == "+" else q * q + 1)


def test_preserves_phi_matches_probe(gf4):
    s = build_phi(gf4, [W, W2, W])
    vecs = la.span(gf4, np.eye(4, dtype=int))
    sigma = la.identity(gf4, 4)
    sigma[1, 0] = W  # symmetry of v1
    assert preserves_phi(s, sigma) and preserves_bil(s, sigma)
    assert np.array_equal(eval_phi_many(s, la.right_mul(gf4, vecs[:, None], sigma)[:, 0]),
                          eval_phi_many(s, vecs))
    bad = sigma.copy()
    bad[1, 0] = W2
    assert not preserves_phi(s, bad)
    probe = eval_phi_many(s, la.right_mul(gf4, vecs[:, None], bad)[:, 0])
    assert not np.array_equal(probe, eval_phi_many(s, vecs))


def test_invariant_forms(gf4):
    s = build_phi(gf4, [W, W2, W])
    gens = []
    for i in range(4):
        g = la.identity(gf4, 4)
        for j in range(4):
            c = s.bil[j, i]
            g[j, i] ^= c
        gens.append(g)
    (phi,) = invariant_quadratic_forms(gf4, gens)
    assert np.array_equal(phi, s.phi)
    (b,) = invariant_alternating_forms(gf4, gens)
    c = gf4.div(int(s.bil[0, 1]), int(b[0, 1]))
    assert np.array_equal(gf4.scale_table(c)[b], s.bil)
    assert len(invariant_quadratic_forms(gf4, [la.identity(gf4, 3)])) == 6
