"""End-to-end acceptance sweep.

Each test prints one `criterion NN: PASS/FAIL - ...` line and runs well
under a minute on one core.  Counts and tolerances are the advertised
contract of the library, so they are spelled out literally here instead
of being imported from the modules under test.
"""

import numpy as np
import pytest

import chebzeros as cz
from chebzeros import funcspace as fs
from chebzeros.chebsys import COUNTEREXAMPLE, NO_VIOLATION


def _line(num: int, ok: bool, desc: str):
    print(f"criterion {num:02d}: {'PASS' if ok else 'FAIL'} - {desc}")
    assert ok, f"criterion {num:02d} failed: {desc}"


def _stratified_points(rng, dom, m):
    fr = (np.arange(m) + 0.15 + 0.7 * rng.uniform(size=m)) / m
    return dom.a + dom.span * fr


def test_criterion_01_interval_sign_bound():
    ok = True
    for n in range(1, 7):
        sys = cz.polynomial_system(n - 1)
        for t in range(100):
            rng = fs.derived_rng(101, n, t)
            pts = _stratified_points(rng, sys.dom, n)
            res = cz.synth_orthogonal(sys, pts)
            ok &= res.sign_report.count >= n
            if t % 10 == 0:
                rep = cz.theorem1_check(sys, res.F,
                                        breaks=res.step.breakpoints)
                ok &= rep.applicable and rep.passed
        # sharp instance: sign flips exactly at the Gauss nodes
        nodes = np.polynomial.legendre.leggauss(n)[0]
        sharp = cz.synth_orthogonal(sys, np.sort(nodes))
        ok &= sharp.sign_report.count == n
        ok &= float(np.max(np.abs(np.sort(sharp.sign_report.locations)
                                  - np.sort(nodes)))) <= 1e-6
    _line(1, ok, "600 runs: moment-free functions change sign >= n times; "
          "Gauss-node instances are sharp")


def test_criterion_02_circle_sign_bound():
    ok = True
    for k in (1, 2, 3):
        sys = cz.trig_system(k)
        m = 2 * k + 2
        for t in range(100):
            rng = fs.derived_rng(102, k, t)
            pts = np.sort(_stratified_points(rng, sys.dom, m))
            res = cz.synth_orthogonal(sys, pts)
            ok &= res.sign_report.count >= m
        eq = fs.TWO_PI * (np.arange(m) + 0.5) / m
        minimal = cz.synth_orthogonal(sys, eq)
        ok &= minimal.sign_report.count == m
    _line(2, ok, "300 runs: functions orthogonal to k harmonics change sign "
          ">= 2k+2 times; equispaced instances are sharp")


def _system_catalog():
    cat = [cz.polynomial_system(deg) for deg in range(1, 9)]
    cat += [cz.trig_system(k) for k in range(1, 5)]
    cat.append(cz.power_system([np.sqrt(2.0), np.sqrt(3.0)],
                               fs.interval(1.0, float(np.e))))
    cat.append(cz.power_system([0.5, 1.5, 2.5], fs.interval(0.5, 2.0)))
    return cat


def test_criterion_03_constructive_core():
    cat = _system_catalog()
    ok = True
    worst_ratio, worst_res, worst_loc = 1.0, 0.0, 0.0
    for i in range(500):
        sys = cat[i % len(cat)]
        m = cz.m_of(sys.dom, sys.order_n)
        rng = fs.derived_rng(103, i)
        pts = _stratified_points(rng, sys.dom, m)
        res = cz.synth_orthogonal(sys, pts)
        h = np.abs(res.step.heights)
        ratio = float(np.min(h) / np.max(h))
        resid = float(np.max(np.abs(res.residuals)))
        loc = float(np.max(np.abs(np.sort(res.sign_report.locations)
                                  - np.sort(pts))))
        worst_ratio = min(worst_ratio, ratio)
        worst_res = max(worst_res, resid)
        worst_loc = max(worst_loc, loc)
        signs = np.sign(res.step.heights)
        ok &= bool(np.all(signs == signs[0]))
        ok &= ratio > 1e-12 and resid <= 1e-8 and loc <= 1e-6
    oracle = cz.null_direction(cz.moment_matrix(
        cz.polynomial_system(1),
        cz.poly_annihilator([-1 / 3, 1 / 3], fs.interval(-1, 1)),
        [-1 / 3, 1 / 3]))
    expect = np.array([1.0, 10.0, 1.0]) / np.sqrt(102.0)
    ok &= float(np.max(np.abs(oracle - expect))) <= 1e-10
    _line(3, ok, "500 syntheses: one-signed heights (min ratio "
          f"{worst_ratio:.2e}), residuals <= {worst_res:.2e}, locations "
          f"within {worst_loc:.2e}; hand oracle (1,10,1)/sqrt(102) matches")


def test_criterion_04_convexity_equals_chebyshev():
    catalog = [cz.moment_curve(2), cz.moment_curve(3), cz.moment_curve(4),
               cz.trig_curve(1), cz.trig_curve(2),
               cz.power_curve([1.0, 2.5], 0.5, 2.0), cz.exp_graph(),
               cz.smoothed_polygon(6)]
    ok = True
    for cur in catalog:
        rep = cz.theorem4_check(cur, trials=150, rng_seed=11)
        ok &= rep.agree and rep.convexity.convex
    bad = cz.theorem4_check(cz.sine_graph(), trials=400, rng_seed=11)
    ok &= bad.agree and not bad.convexity.convex
    ok &= bad.chebyshev.status == COUNTEREXAMPLE
    for t in range(50):
        rng = fs.derived_rng(104, t)
        d = 2 + t % 3
        s = 0.05 / (d + 1)
        A = np.eye(d) + s * rng.uniform(-1.0, 1.0, (d, d))
        b = rng.uniform(-0.5, 0.5, d)
        img = cz.affine_image(cz.moment_curve(d), A, b)
        rep = cz.theorem4_check(img, trials=100, rng_seed=11 + t)
        ok &= rep.agree and rep.convexity.convex
    _line(4, ok, "catalog + 50 affine perturbations (d in 2..4): convexity "
          "and Chebyshev verdicts agree; sine graph fails both")


def test_criterion_05_curve_orthogonal_bound():
    configs = [("moment", 2, 1), ("moment", 2, 2), ("moment", 3, 1),
               ("moment", 3, 2), ("trig", 1, 1), ("trig", 1, 2)]
    ok = True
    for kind, p, n in configs:
        for t in range(100):
            rng = fs.derived_rng(105, kind == "trig", p, n, t)
            if kind == "moment":
                a = -2.0 + 1.5 * rng.uniform()
                cur = cz.moment_curve(p, a, a + 0.8 + 1.2 * rng.uniform())
                bound = n * p + 1
            else:
                cur = cz.trig_curve(p)
                bound = n * 2 * p + 2
            dim = cz.dimension_estimate(cz.restrict_polynomials(cur, n),
                                        cur.dom)
            res = cz.construct_orthogonal_on_curve(cur, n,
                                                   pieces=dim + 1 + t % 4)
            ok &= res.sign_report.count >= bound
            if t % 10 == 0:
                t5 = cz.theorem5_verify(cur, n, res.F)
                ok &= t5.applicable and t5.passed
    for d, n in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        cur = cz.moment_curve(d)
        res = cz.construct_orthogonal_on_curve(cur, n)
        ok &= res.sign_report.count == n * d + 1
    _line(5, ok, "600 constructions on moment/trig curves: sign changes "
          ">= nd+1 (nd+2 closed); minimal moment instances sharp")


def test_criterion_06_hexagon_example():
    hexc = cz.smoothed_polygon(6)
    apothem = float(np.cos(np.pi / 6))
    r_mid = 0.5 * (apothem + 1.0 - 0.1 * (1.0 - apothem))
    poly = {(2, 0): 1.0, (0, 2): 1.0, (0, 0): -r_mid ** 2}
    F = cz.polynomial_on_curve(poly, hexc)
    rep = fs.count_sign_changes(F, hexc.dom, grid_n=4096)
    ok = rep.count == 12
    verdict = cz.verify_chebyshev(
        (cz.restrict_polynomials(hexc, 2), hexc.dom), trials=400, rng_seed=5)
    ok &= verdict.status == COUNTEREXAMPLE
    _line(6, ok, "smoothed hexagon: mid-radius circle polynomial has 12 "
          "sign changes; restricted quadratics flagged non-Chebyshev")


def test_criterion_07_exp_graph_example():
    eg = cz.exp_graph()
    dim = cz.dimension_estimate(cz.restrict_polynomials(eg, 2), eg.dom)
    ok = dim == 6
    res = cz.construct_orthogonal_on_curve(eg, 2, pieces=7)
    ok &= res.sign_report.count >= 6
    t5 = cz.theorem5_verify(eg, 2, res.F)
    ok &= t5.applicable and t5.passed
    _line(7, ok, "exp graph: quadratic restrictions span dimension 6 and "
          "the orthogonal function changes sign >= 6 times")


def test_criterion_08_polygon_mass_bound():
    ok = True
    worst_res = 0.0
    for n in (1, 2):
        for k in (8, 12, 16):
            for t in range(1000):
                seed = int(fs.derived_rng(108, n, k, t).integers(2 ** 31))
                P = cz.random_convex_polygon(k, seed)
                masses = cz.construct_masses(P, n, seed)
                rep = cz.theorem6_check(P, n, masses)
                ok &= rep.applicable and rep.passed
                ok &= rep.sign_changes >= 2 * n + 2
                ok &= rep.max_residual <= 1e-10
                worst_res = max(worst_res, rep.max_residual)
    _line(8, ok, "6000 random convex polygons: mass vectors change sign "
          f">= 2n+2 times, moment residuals <= {worst_res:.2e}")


def test_criterion_09_parallel_sided_polygons():
    ok = True
    for t in range(200):
        M1, M2 = cz.aleksandrov_pair(5 + t % 8, rng_seed=t)
        rep = cz.aleksandrov_check(M1, M2)
        ok &= rep.applicable and rep.passed
        ok &= rep.degenerate or rep.sign_changes >= 4
    N = np.array([[0.0, -1.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]])
    rect = cz.polygon_from_normals(N, np.array([3.0, 1.0, 3.0, 1.0]))
    square = cz.polygon_from_normals(N, np.array([2.0, 2.0, 2.0, 2.0]))
    hand = cz.aleksandrov_check(rect, square)
    ok &= hand.passed and hand.sign_changes == 4
    _line(9, ok, "200 shared-fan equal-perimeter pairs: side-length "
          "differences change sign >= 4 times; rectangle/square exactly 4")


def test_criterion_10_four_vertex_and_blaschke():
    ok = True
    worst = 0.0
    for t in range(500):
        amp = 0.3 + 0.5 * (t % 7) / 7.0
        oval = cz.random_oval(2 + t % 4, amp, rng_seed=t)
        rep = cz.four_vertex_check(oval)
        ok &= rep.passed and rep.extrema >= 4
        rc, rs = cz.verify_R_orthogonality(oval)
        ok &= rc <= 1e-10 and rs <= 1e-10
        worst = max(worst, rc, rs)
    cos2 = cz.OvalSupport(1.0, ((0.0, 0.0), (0.1, 0.0)))
    ok &= cz.four_vertex_check(cos2).extrema == 4
    circle = cz.OvalSupport(1.0)
    for t in range(20):
        oval = cz.random_oval(3, 0.6, rng_seed=1000 + t)
        ok &= (cz.blaschke_ratio_check(oval, circle).extrema
               == cz.four_vertex_check(oval).extrema)
    _line(10, ok, "500 random ovals: >= 4 curvature extrema, first-harmonic "
          f"integrals <= {worst:.2e}; 1+0.1cos2a gives exactly 4; circle "
          "ratio matches plain count")


def test_criterion_11_numerics_floor():
    ok = True
    # quadrature exactness: monomials, trig polynomials, piecewise polys
    dom = fs.interval(-1.0, 2.0)
    for k in range(13):
        exact = (2.0 ** (k + 1) - (-1.0) ** (k + 1)) / (k + 1)
        got = fs.integrate(fs.Func1D(lambda t, k=k: np.asarray(t, float) ** k),
                           dom)
        ok &= abs(got - exact) <= 1e-12 * max(1.0, abs(exact))
    circ = fs.circle()
    got = fs.integrate(fs.Func1D(
        lambda t: 2.0 + np.cos(3 * t) - 0.5 * np.sin(7 * t)), circ)
    ok &= abs(got - 4 * np.pi) <= 1e-12 * 4 / np.pi
    got = fs.integrate(fs.Func1D(lambda t: np.cos(2 * t) ** 2), circ)
    ok &= abs(got - np.pi) <= 1e-12
    stepf = fs.Func1D(lambda t: np.where(np.asarray(t) < 0.5,
                                         np.asarray(t) ** 3, 1.0))
    got = fs.integrate_with_breaks(stepf, dom, [0.5])
    exact = (0.5 ** 4 - 1.0) / 4.0 + 1.5
    ok &= abs(got - exact) <= 1e-12

    # grid-stability of the sign counter against an 8x finer oracle
    mismatches = 0
    for t in range(200):
        rng = fs.derived_rng(111, t)
        on_circle = t % 2 == 1
        if on_circle:
            dom_t = circ
            m = 2 * (1 + int(rng.integers(4)))
        else:
            dom_t = fs.interval(-1.0 - rng.uniform(), 1.0 + rng.uniform())
            m = 1 + int(rng.integers(8))
        pts = np.sort(_stratified_points(rng, dom_t, m))
        base = cz.default_annihilator(pts, dom_t)
        c = 0.2 + 0.6 * rng.uniform()
        f = fs.Func1D(lambda t_, base=base, c=c:
                      fs.sample(base, np.asarray(t_, float))
                      * (1.0 + c * np.sin(np.asarray(t_, float))))
        coarse = fs.count_sign_changes(f, dom_t, grid_n=2048)
        fine = fs.count_sign_changes(f, dom_t, grid_n=65536)
        if coarse.count != fine.count or coarse.count != m:
            mismatches += 1
    ok &= mismatches == 0
    _line(11, ok, "quadrature exact to 1e-12 on monomial/trig/piecewise "
          "cases; sign counts at 2048 match the 65536-sample oracle on "
          "200 seeded functions")
