import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from huaharm.heisenberg import (
    FieldId,
    GaussianTestFunction,
    HPoint,
    SiegelPoint,
    SPoint,
    apply_field,
    boundary_residuals,
    bump_profile,
    cauchy_kernel,
    commutator,
    e_kappa_lambda,
    e_kappa_psi,
    e_kappa_radial,
    hn_inv,
    hn_mul,
    inversion_partial_sums,
    inversion_target,
    log_kernel,
    op_calL_alpha,
    op_L_alpha,
    rep_coeff,
    s_act,
    s_inv,
    s_mul,
)
from huaharm.kernels import g_radial

coord = st.floats(-2.0, 2.0)


def hpoint(n):
    return st.builds(
        lambda re, im, t: HPoint(np.array(re) + 1j * np.array(im), t),
        st.lists(coord, min_size=n, max_size=n),
        st.lists(coord, min_size=n, max_size=n),
        coord,
    )


def spoint(n):
    return st.builds(lambda h, a: SPoint(h.zeta, h.t, a), hpoint(n), st.floats(0.2, 3.0))


def same(p, q, tol=1e-12):
    assert_allclose(p.zeta, q.zeta, atol=tol)
    assert_allclose(p.t, q.t, atol=tol)


class TestGroupLaw:
    @settings(max_examples=30, deadline=None)
    @given(p=hpoint(2), q=hpoint(2), r=hpoint(2))
    def test_associative(self, p, q, r):
        same(hn_mul(hn_mul(p, q), r), hn_mul(p, hn_mul(q, r)))

    @settings(max_examples=30, deadline=None)
    @given(p=hpoint(2))
    def test_inverse(self, p):
        same(hn_mul(p, hn_inv(p)), HPoint.identity(2))

    def test_twist(self):
        p = hn_mul(HPoint(1.0, 0.0), HPoint(1j, 0.0))
        assert p.t == 2 * np.imag(1.0 * np.conj(1j))

    @settings(max_examples=30, deadline=None)
    @given(p=spoint(1), q=spoint(1))
    def test_s_action_is_a_homomorphism(self, p, q):
        z = SiegelPoint([0.3 - 0.2j, 0.5 + 1.0j])
        assert_allclose(s_act(s_mul(p, q), z).z, s_act(p, s_act(q, z)).z, atol=1e-10)

    @settings(max_examples=30, deadline=None)
    @given(p=spoint(2))
    def test_s_inverse_and_orbit(self, p):
        e = s_mul(p, s_inv(p))
        same(e, SPoint.identity(2))
        assert_allclose(e.a, 1.0)
        back = p.siegel().to_spoint()
        same(back, p, 1e-10)
        assert_allclose(back.a, p.a, rtol=1e-10)

    def test_rejects_nonpositive_a(self):
        with pytest.raises(ValueError):
            SPoint(0j, 0.0, 0.0)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            hn_mul(HPoint(0j, 0.0), HPoint([0j, 0j], 0.0))


class TestFields:
    f = staticmethod(lambda q: np.exp(1j * q.t - abs(q.zeta[0]) ** 2) * (1 + q.zeta[0].real * q.t))

    def test_bracket_of_x_and_y_is_central(self):
        at = HPoint(0.3 + 0.1j, 0.4)
        lhs = commutator(FieldId("Y"), FieldId("X"), self.f, at)
        assert_allclose(lhs, 4 * apply_field(FieldId("T"), self.f, at), atol=1e-7)

    def test_x_field_formula(self):
        at = HPoint(0.3 + 0.1j, 0.4)
        g = lambda q: q.t
        assert_allclose(apply_field(FieldId("X"), g, at), 2 * 0.1, atol=1e-10)
        assert_allclose(apply_field(FieldId("Y"), g, at), -2 * 0.3, atol=1e-10)

    def test_left_invariance(self):
        g = HPoint(0.7 - 0.2j, 1.1)
        at = HPoint(0.3 + 0.1j, 0.4)
        moved = lambda q: self.f(hn_mul(g, q))
        for tag in ("X", "Y", "T"):
            assert_allclose(apply_field(FieldId(tag), moved, at),
                            apply_field(FieldId(tag), self.f, hn_mul(g, at)), atol=1e-8)

    def test_s_fields_need_s_points(self):
        with pytest.raises(TypeError):
            apply_field(FieldId("aX"), self.f, HPoint(0j, 0.0))

    def test_index_checks(self):
        with pytest.raises(ValueError):
            FieldId("X", 0)
        with pytest.raises(ValueError):
            FieldId("W")
        with pytest.raises(ValueError):
            apply_field(FieldId("X", 2), self.f, HPoint(0j, 0.0))


class TestRepresentation:
    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("kappa", range(6))
    def test_fast_path_matches_quadrature(self, lam, kappa):
        w = HPoint(0.4 - 0.3j, 0.6)
        assert abs(e_kappa_lambda(lam, kappa, w) - e_kappa_lambda(lam, kappa, w, "quadrature")) <= 1e-8

    def test_radial_form_matches_multi_index_sum(self):
        w = HPoint([0.3 + 0.2j, -0.1 + 0.5j], 0.8)
        r2 = float(np.sum(np.abs(w.zeta) ** 2))
        for kappa in range(4):
            assert_allclose(e_kappa_radial(1.3, kappa, 2, r2, w.t), e_kappa_lambda(1.3, kappa, w), atol=1e-12)

    def test_unitarity_at_identity(self):
        e = HPoint.identity(1)
        for k in range(5):
            for j in range(5):
                assert_allclose(rep_coeff(0.8, (k,), (j,), e), float(k == j), atol=1e-12)

    def test_homomorphism_of_coefficients(self):
        # <R(pq) h_k, h_j> = sum_m <R(q) h_k, h_m><R(p) h_m, h_j> up to a truncated sum
        p, q = HPoint(0.2 + 0.1j, 0.3), HPoint(-0.1 + 0.2j, -0.4)
        lam, M = 1.0, 30
        lhs = rep_coeff(lam, (1,), (2,), hn_mul(p, q))
        rhs = sum(rep_coeff(lam, (1,), (m,), q) * rep_coeff(lam, (m,), (2,), p) for m in range(M))
        assert_allclose(lhs, rhs, atol=1e-10)

    def test_printed_convention(self):
        w = HPoint(0.3 + 0.1j, 0.5)
        mu = 0.7
        assert_allclose(e_kappa_lambda(mu, 2, w, printed=True), e_kappa_lambda(np.pi * mu / 2, 2, w))

    def test_errors(self):
        with pytest.raises(ValueError):
            e_kappa_lambda(0.0, 1, HPoint(0j, 0.0))
        with pytest.raises(ValueError):
            e_kappa_lambda(1.0, -1, HPoint(0j, 0.0))
        with pytest.raises(ValueError):
            e_kappa_lambda(1.0, 1, HPoint(0j, 0.0), method="magic")
        with pytest.raises(ValueError):
            rep_coeff(1.0, (1, 0), (1,), HPoint(0j, 0.0))


SAMPLE = [HPoint(x + 1j * y, t) for x, y, t in
          [(0, 0, 0), (0.3, 0.1, 0.2), (-0.5, 0.4, 1.0), (0.8, -0.2, -0.7), (0.1, 0.9, 0.4),
           (-0.6, -0.6, 0.0), (1.2, 0.3, -1.5), (0.0, -1.0, 2.0), (0.5, 0.5, 0.5)]]


class TestEigenrelation:
    @pytest.mark.parametrize("lam", [0.7, -1.2])
    @pytest.mark.parametrize("kappa", range(5))
    def test_sublaplacian_eigenvalue(self, lam, kappa):
        f = lambda q: e_kappa_lambda(lam, kappa, q)
        for w in SAMPLE:
            lhs = op_calL_alpha(0, f, w)
            assert abs(lhs - (2 * kappa + 1) * abs(lam) * f(w)) <= 1e-4

    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    @pytest.mark.parametrize("kappa", [0, 1, 3])
    def test_l_alpha_harmonic_extension(self, alpha, kappa):
        lam = 0.9
        F = lambda p: e_kappa_lambda(lam, kappa, p.h) * float(g_radial(alpha, 1, kappa, abs(lam) * p.a))
        for w in SAMPLE[:4]:
            assert abs(op_L_alpha(alpha, F, SPoint(w.zeta, w.t, 0.7))) <= 1e-4

    def test_l_alpha_detects_non_harmonic(self):
        F = lambda p: e_kappa_lambda(0.9, 1, p.h) * np.exp(-p.a)
        assert abs(op_L_alpha(0.5, F, SPoint(0.3 + 0.1j, 0.2, 0.7))) > 1e-2


class TestKernels:
    def test_cauchy_modulus(self):
        w = HPoint([0.3 + 0.4j], 0.7)
        c = 2 ** 0 * 1 / np.pi**2
        assert_allclose(abs(cauchy_kernel(w)), c * (0.49 + 0.25**2) ** -1)

    def test_cauchy_is_cr_and_holomorphic(self):
        for w in (HPoint(0.4 + 0.3j, 0.7), HPoint([0.4 + 0.3j, 0.1 - 0.2j], -0.5)):
            res = boundary_residuals(cauchy_kernel, w)
            assert res["cr"] < 1e-8
            assert abs(res["hol"]) < 1e-6
            assert abs(res["antihol"]) > 1e-2

    def test_cr_example(self):
        f = lambda q: np.exp(1j * q.t - abs(q.zeta[0]) ** 2)
        res = boundary_residuals(f, HPoint(0.2 - 0.4j, 0.3))
        assert res["cr"] < 1e-9
        assert abs(res["hol"]) < 1e-6

    def test_log_kernel_vanishes_at_t_zero(self):
        assert log_kernel(HPoint(0.5 + 0.2j, 0.0)) == 0

    def test_log_kernel_matches_mpmath(self):
        w = HPoint([0.3 + 0.4j, -0.2j], -1.3)
        rho = 0.25 + 0.04
        C = 2.0**0 * 1 / np.pi**3
        m, p = mpmath.mpc(rho, 1.3), mpmath.mpc(rho, -1.3)
        ref = complex(C * (mpmath.log(m) - mpmath.log(p)) * m**-2)
        assert_allclose(log_kernel(w), ref, rtol=1e-13)

    def test_log_kernel_conjugation_symmetry(self):
        z = np.array([0.3 + 0.4j])
        assert_allclose(log_kernel(HPoint(z, -0.9)), np.conj(log_kernel(HPoint(z, 0.9))), rtol=1e-14)

    def test_origin_is_singular(self):
        for k in (cauchy_kernel, log_kernel):
            with pytest.raises(ValueError):
                k(HPoint.identity(1))


class TestInversion:
    def test_partial_sums_converge_monotonically(self):
        f = GaussianTestFunction(1, 1.0, 1.0)
        psi = bump_profile(0.2, 0.8)
        w = HPoint(0.3 + 0.2j, 0.4)
        S = inversion_partial_sums(f, psi, w, 16)
        target = inversion_target(f, psi, w)
        errs = [abs(S[K] - target) for K in (1, 2, 4, 8, 16)]
        assert all(b < a for a, b in zip(errs, errs[1:]))
        assert errs[-1] < 1e-4 * abs(target)

    def test_e_kappa_psi_is_the_lambda_integral(self):
        psi = bump_profile(0.5, 2.0)
        w = HPoint(0.3 - 0.1j, 0.6)
        lam = np.linspace(0.5, 2.0, 20001)
        vals = np.array([e_kappa_radial(l, 2, 1, abs(w.zeta[0]) ** 2, w.t) for l in lam]) * psi.func(lam)
        assert_allclose(e_kappa_psi(2, psi, w), np.trapezoid(vals, lam), rtol=1e-7)

    def test_profile_support_avoids_zero(self):
        with pytest.raises(ValueError):
            bump_profile(-1.0, 1.0)
        with pytest.raises(ValueError):
            bump_profile(2.0, 1.0)
