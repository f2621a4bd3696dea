"""Acceptance criteria 1-10, one pass/fail line each (see the terminal summary)."""

import time
import warnings

import mpmath
import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from huaharm import heisenberg as hz
from huaharm import hua, jordan, kernels
from huaharm.oracles import shoot_hyper
from huaharm.specfun import (
    asymptotic_exponent,
    bounded_hyper,
    bounded_legendre,
    gauss_hermite,
    hermite,
    singular_index,
)


def report(n: int, ok: bool, detail: str):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def relative_residual(sol, x):
    y0, y1, y2 = (sol.derivative(p, x) for p in range(3))
    scale = np.abs(x * y2) + np.abs(sol.gamma * y1) + np.abs((x + sol.gamma + sol.beta) * y0)
    return float(np.max(np.abs(sol.residual(x)) / scale))


def test_criterion_1_hypergeometric_suite():
    start = time.perf_counter()
    x = np.geomspace(0.1, 10, 20)
    worst_res = worst_shoot = 0.0
    for g in (0.5, 1.0, 1.3, 2.0, 2.5):
        for b in (0.0, 1.0, 2.0):
            sol = bounded_hyper(g, b)
            worst_res = max(worst_res, relative_residual(sol, x))
            y = sol.evaluate(x) / sol.evaluate(1.0)
            ref = shoot_hyper(g, b, x)
            worst_shoot = max(worst_shoot, float(np.max(np.abs(y - ref) / np.abs(ref))))
    wall = time.perf_counter() - start
    ok = worst_res <= 1e-6 and worst_shoot <= 1e-6 and wall < 10
    report(1, ok, f"residual {worst_res:.2e}, shooting {worst_shoot:.2e}, {wall:.1f} s")


def test_criterion_2_asymptotic_exponents():
    start = time.perf_counter()
    worst = 0.0
    power_ok = True
    for g in (0.5, 1.3, 2.5):
        fit = asymptotic_exponent(bounded_hyper(g, 1.0))
        worst = max(worst, abs(fit.exponent - (g - singular_index(g))))
        power_ok &= not fit.log_flag
    logs = [asymptotic_exponent(bounded_hyper(g, 1.0)).log_flag for g in (1.0, 2.0)]
    wall = time.perf_counter() - start
    ok = power_ok and worst <= 0.02 and all(logs) and wall < 10
    report(2, ok, f"exponent deviation {worst:.2e}, log branch {logs}, {wall:.1f} s")


def legendre_bessel(beta, x):
    mpmath.mp.dps = 30
    return float(2 * x ** ((beta + 1) / 2) * mpmath.besselk(beta + 1, 2 * mpmath.sqrt(x)) / mpmath.gamma(beta + 1))


def test_criterion_3_legendre_suite():
    x = np.linspace(0.1, 5, 25)
    worst = 0.0
    at_zero = True
    for b in (0.5, 1.0, 1.5):
        sol = bounded_legendre(b)
        ref = np.array([legendre_bessel(b, v) for v in x])
        worst = max(worst, float(np.max(np.abs(sol.evaluate(x) - ref) / np.abs(ref))))
        at_zero &= sol.evaluate(0.0) == 1.0
    report(3, worst <= 1e-8 and at_zero, f"Bessel-K deviation {worst:.2e}, z(0) = 1: {at_zero}")


def test_criterion_4_hermite_and_fast_path():
    rule = gauss_hermite(64)
    x, w = rule.nodes, rule.weights * np.exp(rule.nodes**2)
    H = np.array([hermite(k, x) for k in range(11)])
    gram = float(np.abs((H * w) @ H.T - np.eye(11)).max())
    worst = 0.0
    rng = np.random.default_rng(0)
    for lam in (0.5, 1.0, 2.0):
        for kappa in range(6):
            for _ in range(3):
                pt = hz.HPoint(rng.normal(scale=0.6) + 1j * rng.normal(scale=0.6), rng.normal())
                fast = hz.e_kappa_lambda(lam, kappa, pt)
                quad = hz.rep_coeff(lam, (kappa,), (kappa,), pt)
                worst = max(worst, abs(fast - quad))
    report(4, gram <= 1e-10 and worst <= 1e-8, f"Gram {gram:.2e}, fast path {worst:.2e}")


NINE = [hz.HPoint(x + 1j * y, t) for x, y, t in
        [(0, 0, 0), (0.3, 0.1, 0.2), (-0.5, 0.4, 1.0), (0.8, -0.2, -0.7), (0.1, 0.9, 0.4),
         (-0.6, -0.6, 0.0), (1.2, 0.3, -1.5), (0.0, -1.0, 2.0), (0.5, 0.5, 0.5)]]


def test_criterion_5_eigenrelation_and_harmonicity():
    eig = 0.0
    for lam in (0.8, -1.5):
        for kappa in range(5):
            f = lambda q: hz.e_kappa_lambda(lam, kappa, q)
            for w in NINE:
                eig = max(eig, abs(hz.op_calL_alpha(0, f, w) - (2 * kappa + 1) * abs(lam) * f(w)))
    harm = 0.0
    for alpha in (0.5, 1.0):
        for kappa in range(5):
            lam = 1.1
            F = lambda p: hz.e_kappa_lambda(lam, kappa, p.h) * float(kernels.g_radial(alpha, 1, kappa, lam * p.a))
            for w in NINE:
                harm = max(harm, abs(hz.op_L_alpha(alpha, F, hz.SPoint(w.zeta, w.t, 0.6))))
    report(5, eig <= 1e-4 and harm <= 1e-4, f"eigenrelation {eig:.2e}, L_alpha residual {harm:.2e}")


def test_criterion_6_cn_dichotomy():
    start = time.perf_counter()
    pc = kernels.ProbeConfig(a_min=1e-4, a_max=1.0)
    grid = pc.grid()
    const = kernels.TrigBoundaryData.constant(1.0, 1)
    rep_c = kernels.dichotomy(const, 0.7, 1, pc)
    phi = kernels.annular_profile()
    probe_max = max(abs(kernels.I_p_probe(const, 0.7, phi, p, a)) for p in range(rep_c.k + 2) for a in grid)
    ext = np.abs([kernels.extend_Cn(const, 0.7, a, [0.0, 0.0]) for a in grid])
    ratio = float(ext.max() / ext.min())
    mode = kernels.TrigBoundaryData.single_mode([1.0, 0.0])
    rep_p = kernels.dichotomy(mode, 0.7, 1, pc)
    rep_l = kernels.dichotomy(mode, 1.0, 1, pc)
    wall = time.perf_counter() - start
    ok = (rep_c.verdict == "regular" and probe_max == 0.0 and ratio <= 1.01
          and rep_p.verdict == "blow-up" and abs(rep_p.fitted_exponent + 0.3) <= 0.03
          and rep_l.log_flag and wall < 30)
    report(6, ok, f"constant ratio {ratio:.4f}, exponent {rep_p.fitted_exponent:.4f}, "
                  f"log branch {rep_l.log_flag}, {wall:.1f} s")


def test_criterion_7_heisenberg_propagation():
    alpha, kappa = 0.5, 1
    psi = hz.bump_profile(0.5, 2.0)
    f = kernels.HeisBoundaryData((kernels.HeisAtom(-1.0, kappa),), 1)
    pc = kernels.ProbeConfig(psi=psi, kappa=kappa)
    rep = kernels.dichotomy(f, alpha, 1, pc)
    grid = pc.grid()
    cauchy = True
    for p in range(rep.k + 1):
        vals = np.array([kernels.heis_I_probe(f, alpha, psi, kappa, p, a) for a in grid])
        diffs = np.abs(np.diff(vals))
        tail = diffs[len(diffs) // 2:]
        cauchy &= bool(np.any(vals)) and bool(np.all(np.diff(tail) <= 0)) and tail[-1] < 0.1 * diffs[0]
    rate = abs(rep.fitted_exponent - rep.expected_exponent)
    ok = cauchy and rep.verdict == "blow-up" and rate <= 0.03
    report(7, ok, f"limits for p <= {rep.k}: {cauchy}, exponent {rep.fitted_exponent:.4f} "
                  f"vs {rep.expected_exponent:.4f}")


def test_criterion_8_jordan_peirce():
    worst = 0.0
    jac = 0.0
    wrong = 0
    for r in (2, 3):
        G = jordan.TubeGroup(jordan.sym_algebra(r))
        alg = G.algebra
        rng = np.random.default_rng(r)
        for i in range(r):
            for j in range(r):
                target = G.c[i] if i == j else 0 * G.c[i]
                worst = max(worst, np.abs(alg.product(G.c[i], G.c[j]) - target).max())
        for (i, j, al) in G.order:
            v = np.eye(G.m)[G.index(i, j, al)]
            for h in range(1, r + 1):
                ev = 1.0 if i == j == h else 0.5 if (h in (i, j) and i != j) else 0.0
                worst = max(worst, np.abs(alg.l_op(G.c[h - 1]) @ v - ev * v).max())
        for _ in range(5):
            worst = max(worst, G.nilpotent_triangularity(G.element(ys=G.random_element(rng).ys).linear))
        worst = max(worst, G.adjoint_weight_check().max_deviation, G.splus_bracket_check())
        for _ in range(20):
            rep = G.phi_jacobian(rng.normal(scale=0.5, size=G.w_dim))
            jac = max(jac, float(np.abs(rep.diagonal - rep.expected_diagonal).max()))
        for _ in range(100):
            w = rng.normal(scale=0.5, size=G.w_dim)
            b = rng.uniform(0.05, 1.0) * rng.choice([-1.0, 1.0])
            wrong += G.membership(w, b) != ("interior" if b > 0 else "exterior")
    ok = worst <= 1e-10 and jac <= 1e-6 and wrong == 0
    report(8, ok, f"algebra {worst:.2e}, Jacobian diagonal {jac:.2e}, membership mismatches {wrong}")


def test_criterion_9_hua_suite():
    start = time.perf_counter()
    annihil = base = 0.0
    control = np.inf
    for r in (2, 3):
        G = jordan.TubeGroup(jordan.sym_algebra(r))
        rng = np.random.default_rng(10 + r)
        samples = [G.random_element(rng, 0.4) for _ in range(5)]
        for i in range(6):
            A = rng.normal(size=(r, r))
            F = hua.ExpPluriharmonic(G.algebra.from_matrix(A @ A.T / r), "re" if i % 2 == 0 else "im")
            annihil = max(annihil, hua.hua_report(F, samples).max_residual)
        ctrl = lambda z: np.abs(np.asarray(z)[..., G.index(1, 1)]) ** 2
        control = min(control, abs(hua.hua_j(ctrl, G.identity(), 1)))
        Q = rng.normal(size=(2 * G.m, 2 * G.m))
        Q = Q + Q.T
        cubic = rng.normal(size=2 * G.m)

        def poly(z):
            z = np.asarray(z)
            v = np.concatenate([z.real, z.imag], axis=-1)
            return np.einsum("...i,ij,...j->...", v, Q, v) + (v @ cubic) ** 3

        D = hua.flat_ddbar(poly, G.base_point())
        e = G.identity()
        for j in range(1, r + 1):
            base = max(base, abs(hua.delta_j(poly, e, j) - D[G.index(j, j), G.index(j, j)]))
            for k in range(j + 1, r + 1):
                base = max(base, abs(hua.delta_jk(poly, e, j, k) - D[G.index(j, k), G.index(j, k)]))
    wall = time.perf_counter() - start
    ok = annihil <= 1e-4 and control >= 0.5 and base <= 1e-5 and wall < 60
    report(9, ok, f"annihilation {annihil:.2e}, control {control:.3f}, base point {base:.2e}, {wall:.1f} s")


def test_criterion_10_cross_module():
    cross = 0.0
    for r in (2, 3):
        G = jordan.TubeGroup(jordan.sym_algebra(r))
        n = r - 1
        wts = np.arange(1, n + 1)
        F = lambda p: (np.exp(-abs(p.zeta @ wts) ** 2 - 0.3 * p.t**2) * np.cos(p.t) * np.log1p(p.a)
                       + 1j * p.a * p.t * p.zeta[0].real)
        rng = np.random.default_rng(20 + r)
        for _ in range(3):
            p = hz.SPoint(rng.normal(scale=0.5, size=n) + 1j * rng.normal(scale=0.5, size=n),
                          rng.normal(), np.exp(0.5 * rng.normal()))
            lhs, rhs = hua.hua_vs_l_half(G, F, p)
            cross = max(cross, abs(lhs - rhs))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", kernels.TruncationWarning)
        mass = float(kernels.p_kernel_mass(kernels.HKernelSpec(alpha=0.5, n=1), 0.5).values[0])
    f = hz.GaussianTestFunction(1, 1.0, 1.0)
    psi = hz.bump_profile(0.2, 0.8)
    w = hz.HPoint(0.3 + 0.2j, 0.4)
    S = hz.inversion_partial_sums(f, psi, w, 8)
    target = hz.inversion_target(f, psi, w)
    errs = [abs(S[K] - target) for K in (2, 4, 8)]
    monotone = errs[0] > errs[1] > errs[2]
    ok = cross <= 1e-4 and abs(mass - 1) <= 0.02 and monotone
    report(10, ok, f"Hua vs L_1/2 {cross:.2e}, kernel mass {mass:.4f}, "
                   f"inversion residuals {', '.join(f'{e:.1e}' for e in errs)}")
