import numpy as np
import pytest

import chebzeros as cz
from chebzeros import funcspace as fs


def test_oval_support_validation():
    with pytest.raises(ValueError):
        cz.OvalSupport(-1.0)
    with pytest.raises(ValueError):
        cz.OvalSupport(0.0)
    # h stays positive but R = 1 - 7.2 cos(3a) does not
    with pytest.raises(ValueError):
        cz.OvalSupport(1.0, ((0.0, 0.0), (0.0, 0.0), (0.9, 0.0)))
    oval = cz.OvalSupport(1.0, ((0.0, 0.0), (0.1, 0.0)))
    assert not oval.is_circle
    assert cz.OvalSupport(2.0).is_circle


def test_cos2_oracle_exactly_four():
    # h = 1 + 0.1 cos 2a gives R = 1 - 0.3 cos 2a
    oval = cz.OvalSupport(1.0, ((0.0, 0.0), (0.1, 0.0)))
    R = cz.radius_of_curvature(oval)
    ts = np.linspace(0, 2 * np.pi, 9)
    assert np.allclose(R(ts), 1.0 - 0.3 * np.cos(2 * ts), atol=1e-14)
    rep = cz.four_vertex_check(oval)
    assert rep.passed and rep.extrema == 4


def test_first_harmonic_is_translation():
    # pure first harmonic translates the circle: R stays constant
    oval = cz.OvalSupport(1.0, ((0.3, -0.2),))
    rep = cz.four_vertex_check(oval)
    assert rep.passed and rep.degenerate and rep.extrema == 0


def test_R_orthogonality_structural():
    for seed in range(10):
        oval = cz.random_oval(harmonics=4, amplitude=0.8, rng_seed=seed)
        rc, rs = cz.verify_R_orthogonality(oval)
        assert rc <= 1e-10 and rs <= 1e-10


def test_four_vertex_over_seeds():
    for seed in range(10):
        oval = cz.random_oval(harmonics=3 + seed % 3, amplitude=0.7,
                              rng_seed=seed)
        rep = cz.four_vertex_check(oval)
        assert rep.passed
        assert rep.degenerate or rep.extrema >= 4


def test_blaschke_over_seeds():
    for seed in range(6):
        o1 = cz.random_oval(3, 0.6, rng_seed=seed)
        o2 = cz.random_oval(4, 0.5, rng_seed=seed + 100)
        rep = cz.blaschke_ratio_check(o1, o2)
        assert rep.passed
        assert not rep.reduces_to_four_vertex


def test_blaschke_against_circle_matches_plain_count():
    for seed in range(6):
        o1 = cz.random_oval(3, 0.6, rng_seed=seed)
        circle = cz.OvalSupport(2.0)
        rep = cz.blaschke_ratio_check(o1, circle)
        assert rep.reduces_to_four_vertex
        plain = cz.four_vertex_check(o1)
        assert rep.extrema == plain.extrema


def test_blaschke_proportional_degenerate():
    o = cz.OvalSupport(1.0, ((0.0, 0.0), (0.1, 0.0)))
    o2 = cz.OvalSupport(2.0, ((0.0, 0.0), (0.2, 0.0)))
    rep = cz.blaschke_ratio_check(o, o2)
    assert rep.passed and rep.degenerate


def test_random_oval_amplitude_contract():
    with pytest.raises(ValueError):
        cz.random_oval(3, 1.0)
    with pytest.raises(ValueError):
        cz.random_oval(3, -0.1)
    assert cz.random_oval(0, 0.5).is_circle
    assert cz.random_oval(3, 0.0).is_circle
    oval = cz.random_oval(5, 0.99, rng_seed=11)
    ts = np.linspace(0, 2 * np.pi, 4096)
    assert np.min(cz.support_func(oval)(ts)) > 0
    assert np.min(cz.radius_of_curvature(oval)(ts)) > 0


def test_oval_to_curve_convex():
    oval = cz.random_oval(3, 0.8, rng_seed=4)
    curve = cz.oval_to_curve(oval)
    assert curve.d == 2 and curve.dom.is_circle
    rep = cz.convexity_check(curve, trials=150)
    assert rep.convex
    # support evaluation: x(a) . (cos a, sin a) = h(a)
    ts = np.linspace(0, 2 * np.pi, 64)
    P = cz.curve_points(curve, ts)
    hvals = P[:, 0] * np.cos(ts) + P[:, 1] * np.sin(ts)
    assert np.allclose(hvals, cz.support_func(oval)(ts), atol=1e-12)


def test_oval_text_roundtrip():
    oval = cz.OvalSupport(1.5, ((0.01, -0.02), (0.0, 0.0), (0.03, 0.0)))
    back = cz.parse_oval(cz.format_oval(oval))
    assert back.h0 == oval.h0
    assert back.coeffs == oval.coeffs
    with pytest.raises(ValueError):
        cz.parse_oval("")
    with pytest.raises(ValueError):
        cz.parse_oval("1.0\n2 0.1\n")
