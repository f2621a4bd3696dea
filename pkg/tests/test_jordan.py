import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy.linalg import expm

from huaharm.jordan import (
    JordanAlgebra,
    JordanFrame,
    TubeGroup,
    box,
    cone_boundary_rank,
    in_cone,
    l_op,
    peirce,
    peirce_project,
    sym_algebra,
)

TOL = 1e-10


@pytest.fixture(scope="module", params=[2, 3])
def group(request):
    return TubeGroup(sym_algebra(request.param))


def rand_sym(rng, r):
    A = rng.normal(size=(r, r))
    return A + A.T


class TestAlgebra:
    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    def test_dimension_and_unit(self, r):
        alg = sym_algebra(r)
        assert alg.dim == r * (r + 1) // 2
        assert_allclose(alg.to_matrix(alg.unit), np.eye(r), atol=1e-15)

    def test_product_is_symmetrized_matrix_product(self):
        alg = sym_algebra(3)
        rng = np.random.default_rng(0)
        X, Y = rand_sym(rng, 3), rand_sym(rng, 3)
        xy = alg.product(alg.from_matrix(X), alg.from_matrix(Y))
        assert_allclose(alg.to_matrix(xy), (X @ Y + Y @ X) / 2, atol=1e-13)

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_jordan_identity(self, seed):
        alg = sym_algebra(3)
        rng = np.random.default_rng(seed)
        x, y = rng.normal(size=alg.dim), rng.normal(size=alg.dim)
        x2 = alg.product(x, x)
        lhs = alg.product(alg.product(x, y), x2)
        rhs = alg.product(x, alg.product(y, x2))
        assert_allclose(lhs, rhs, atol=1e-10)

    def test_box_is_triple_product(self):
        alg = sym_algebra(3)
        rng = np.random.default_rng(1)
        X, Y, Z = (rand_sym(rng, 3) for _ in range(3))
        x, y, z = (alg.from_matrix(M) for M in (X, Y, Z))
        assert_allclose(alg.to_matrix(box(alg, x, y) @ z), (X @ Y @ Z + Z @ Y @ X) / 2, atol=1e-12)
        assert_allclose(l_op(alg, x) @ z, alg.product(x, z), atol=1e-13)

    def test_cone_membership_via_eigenvalues(self):
        alg = sym_algebra(3)
        rng = np.random.default_rng(2)
        for _ in range(50):
            X = rand_sym(rng, 3)
            assert in_cone(alg, alg.from_matrix(X)) == (np.linalg.eigvalsh(X).min() > 0)

    def test_boundary_rank(self):
        alg = sym_algebra(3)
        assert cone_boundary_rank(alg, alg.from_matrix(np.diag([1.0, 2.0, 0.0]))) == 2
        assert cone_boundary_rank(alg, alg.unit) == 3
        c1 = alg.from_matrix(np.diag([1.0, 0.0, 0.0]))
        assert in_cone(alg, alg.unit)
        assert not in_cone(alg, c1) and cone_boundary_rank(alg, c1) == 1
        assert not in_cone(alg, alg.from_matrix(np.diag([1.0, 1.0, -1.0])))

    def test_invalid_bases(self):
        with pytest.raises(ValueError):
            JordanAlgebra(np.zeros((2, 2, 3)))
        with pytest.raises(ValueError):
            JordanAlgebra(np.array([[[0.0, 1.0], [0.0, 0.0]]]))
        with pytest.raises(ValueError):
            JordanAlgebra(np.array([[[2.0, 0.0], [0.0, 0.0]]]))
        with pytest.raises(ValueError):
            sym_algebra(0)


class TestFrameAndPeirce:
    def test_standard_frame(self):
        alg = sym_algebra(3)
        fr = JordanFrame.standard(alg)
        assert fr.r == 3
        assert_allclose(alg.to_matrix(fr[2]), np.diag([0.0, 1.0, 0.0]), atol=1e-15)

    def test_rejects_bad_frames(self):
        alg = sym_algebra(2)
        e11 = alg.from_matrix(np.diag([1.0, 0.0]))
        with pytest.raises(ValueError, match="sum"):
            JordanFrame(alg, [e11])
        with pytest.raises(ValueError, match="primitive"):
            JordanFrame(alg, [alg.unit])
        half = alg.from_matrix(np.full((2, 2), 0.5))
        with pytest.raises(ValueError):
            JordanFrame(alg, [e11, half])

    def test_rotated_frame(self):
        alg = sym_algebra(2)
        th = 0.4
        u = np.array([np.cos(th), np.sin(th)])
        v = np.array([-np.sin(th), np.cos(th)])
        fr = JordanFrame(alg, [alg.from_matrix(np.outer(u, u)), alg.from_matrix(np.outer(v, v))])
        pb = peirce(fr)
        assert pb.d == 1
        G = TubeGroup(alg, fr)
        assert G.adjoint_weight_check().max_deviation <= TOL

    @pytest.mark.parametrize("r", [2, 3])
    def test_peirce_blocks(self, r):
        alg = sym_algebra(r)
        fr = JordanFrame.standard(alg)
        pb = peirce(fr)
        assert pb.d == 1
        x = np.random.default_rng(3).normal(size=alg.dim)
        total = sum(peirce_project(pb, x, i, j) for i in range(1, r + 1) for j in range(i, r + 1))
        assert_allclose(total, x, atol=1e-13)
        for i in range(1, r + 1):
            for j in range(i, r + 1):
                v = peirce_project(pb, x, i, j)
                for h in range(1, r + 1):
                    ev = 1.0 if i == j == h else 0.5 if (h in (i, j) and i != j) else 0.0
                    assert_allclose(alg.l_op(fr[h]) @ v, ev * v, atol=1e-13)
        change = pb.change
        assert_allclose(change.T @ change, np.eye(alg.dim), atol=1e-13)


class TestGroup:
    def test_tau_is_congruence(self, group):
        G = group
        alg = G.algebra
        rng = np.random.default_rng(4)
        for j in range(1, G.r):
            y = G.upper_projector(j) @ rng.normal(size=G.m)
            D = alg.to_matrix(y) @ alg.to_matrix(G.c[j - 1])
            Z = rand_sym(rng, G.r)
            want = alg.from_matrix((np.eye(G.r) + D) @ Z @ (np.eye(G.r) + D).T)
            assert_allclose(G.tau(y, j) @ alg.from_matrix(Z), want, atol=1e-12)

    def test_linear_part_preserves_cone(self, group):
        G = group
        rng = np.random.default_rng(5)
        for _ in range(20):
            g = G.random_element(rng)
            A = rng.normal(size=(G.r, G.r))
            u = G.algebra.from_matrix(A @ A.T + 0.1 * np.eye(G.r))
            assert G.algebra.in_cone(g.linear @ u)

    def test_composition_and_action(self, group):
        G = group
        rng = np.random.default_rng(6)
        for _ in range(10):
            g, h, k = (G.random_element(rng) for _ in range(3))
            z = rng.normal(size=G.m) + 1j * G.e
            assert_allclose((g @ h).act(z), g.act(h.act(z)), atol=TOL)
            lhs, rhs = (g @ h) @ k, g @ (h @ k)
            assert_allclose(lhs.linear, rhs.linear, atol=TOL)
            assert_allclose(lhs.x, rhs.x, atol=TOL)

    def test_simply_transitive(self, group):
        G = group
        rng = np.random.default_rng(7)
        for _ in range(10):
            g = G.random_element(rng)
            z = g.act(G.base_point())
            h = G.point_to_group(z)
            assert_allclose(h.act(G.base_point()), z, atol=TOL)
            assert_allclose(h.a, g.a, atol=1e-9)
            for a, b in zip(h.ys, g.ys):
                assert_allclose(a, b, atol=1e-9)

    def test_point_outside_tube(self, group):
        with pytest.raises(ValueError):
            group.point_to_group(-1j * group.e)

    def test_nilpotent_part_is_triangular(self, group):
        G = group
        rng = np.random.default_rng(8)
        for _ in range(5):
            ys = G.random_element(rng).ys
            M = G.element(ys=ys).linear
            assert G.nilpotent_triangularity(M) <= TOL
            assert_allclose(np.diag(M), 1.0, atol=TOL)

    def test_weights_and_brackets(self, group):
        rep = group.adjoint_weight_check()
        assert rep.max_deviation <= TOL and rep.checks > 0
        assert group.splus_bracket_check() <= TOL

    def test_split(self, group):
        G = group
        rng = np.random.default_rng(9)
        for _ in range(10):
            g = G.random_element(rng)
            sm, sp = G.split_s(g)
            assert G.in_s_minus(sm) and G.in_s_plus(sp)
            prod = sm @ sp
            assert_allclose(prod.linear, g.linear, atol=TOL)
            assert_allclose(prod.x, g.x, atol=TOL)

    def test_y_blocks_validated(self, group):
        G = group
        bad = [np.ones(G.m) for _ in range(G.r - 1)]
        with pytest.raises(ValueError):
            G.element(ys=bad)


class TestSpecialCoordinates:
    def test_phi_jacobian_diagonal(self, group):
        G = group
        rng = np.random.default_rng(10)
        for _ in range(20):
            rep = G.phi_jacobian(rng.normal(scale=0.5, size=G.w_dim))
            assert np.abs(rep.diagonal - rep.expected_diagonal).max() <= 1e-6
            assert rep.triangularity_deviation <= 1e-6
            assert set(np.round(rep.expected_diagonal, 12)) >= {1.0}

    def test_membership_matches_sign(self, group):
        G = group
        rng = np.random.default_rng(11)
        for _ in range(100):
            w = rng.normal(scale=0.5, size=G.w_dim)
            b = rng.uniform(0.05, 1.0) * rng.choice([-1.0, 1.0])
            assert G.membership(w, b) == ("interior" if b > 0 else "exterior")
        assert G.membership(rng.normal(size=G.w_dim), 0.0) == "boundary"

    def test_phi_lands_on_rank_r_minus_1_boundary(self, group):
        G = group
        w = np.random.default_rng(12).normal(scale=0.5, size=G.w_dim)
        assert G.algebra.rank_of(G.phi(w).imag) == G.r - 1

    def test_big_phi_is_group_orbit(self, group):
        G = group
        assert_allclose(G.big_phi(np.zeros(G.w_dim), 1.0), G.base_point(), atol=1e-15)
        w = np.random.default_rng(13).normal(scale=0.5, size=G.w_dim)
        b = 0.7
        s = G.s_prime(w)
        dil = G.element(a=np.eye(G.r)[-1] * np.log(b))
        assert_allclose(G.big_phi(w, b), (s @ dil).act(G.base_point()), atol=1e-12)

    def test_labels_and_size(self, group):
        G = group
        assert len(G.w_labels()) == G.w_dim == 2 * G.m - 1
        with pytest.raises(ValueError):
            G.unpack_w(np.zeros(G.w_dim + 1))


def test_lie_fields_generate_the_curves():
    G = TubeGroup(sym_algebra(3))
    s = 0.3
    y = s * G.block_vectors(1, 3)[0]
    E = expm(s * G.lie_Yjk(1, 3))
    assert_allclose(E[: G.m, : G.m], G.tau(y, 1), atol=1e-12)
    assert_allclose(expm(s * G.lie_H(2))[: G.m, : G.m], G.a_exp([0.0, s, 0.0]), atol=1e-12)
