"""Ovals described by their support function, curvature-radius extrema,
and ratio comparisons between two ovals.

An oval with support function h(a) = h0 + sum(a_m cos ma + b_m sin ma)
has curvature radius R = h + h'' = h0 + sum((1 - m^2)(...)), which kills
the first harmonic: R is automatically orthogonal to cos and sin on the
circle.  Constants plus first harmonics form an order-3 system there, so
R - mean (and more generally the difference against a second oval's R)
must change sign at least 4 times, giving at least 4 curvature extrema.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from . import funcspace as fs
from .curves import CurveRd

_VALIDATE_GRID = 4096
ORTHO_TOL = 1e-10


@dataclass(frozen=True)
class OvalSupport:
    """Support function h0 + sum over m of a_m cos(ma) + b_m sin(ma).

    coeffs[m-1] = (a_m, b_m).  Both h and the curvature radius h + h''
    must be strictly positive; checked on a dense grid at construction.
    """

    h0: float
    coeffs: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "h0", float(self.h0))
        cf = tuple((float(a), float(b)) for a, b in self.coeffs)
        object.__setattr__(self, "coeffs", cf)
        if not np.isfinite(self.h0) or self.h0 <= 0:
            raise ValueError("h0 must be positive")
        ts = fs.circle().grid(_VALIDATE_GRID)
        if np.min(self._h(ts)) <= 0:
            raise ValueError("support function must stay positive")
        if np.min(self._R(ts)) <= 0:
            raise ValueError("oval must be strictly convex: h + h'' > 0")

    def _h(self, ts):
        out = np.full_like(np.asarray(ts, dtype=float), self.h0)
        for m, (a, b) in enumerate(self.coeffs, start=1):
            out += a * np.cos(m * ts) + b * np.sin(m * ts)
        return out

    def _dh(self, ts):
        ts = np.asarray(ts, dtype=float)
        out = np.zeros_like(ts)
        for m, (a, b) in enumerate(self.coeffs, start=1):
            out += m * (-a * np.sin(m * ts) + b * np.cos(m * ts))
        return out

    def _R(self, ts):
        out = np.full_like(np.asarray(ts, dtype=float), self.h0)
        for m, (a, b) in enumerate(self.coeffs, start=1):
            out += (1.0 - m * m) * (a * np.cos(m * ts) + b * np.sin(m * ts))
        return out

    @property
    def is_circle(self) -> bool:
        return all(a == 0.0 and b == 0.0 for a, b in self.coeffs)


def support_func(oval: OvalSupport) -> fs.Func1D:
    return fs.Func1D(oval._h, label="h")


def radius_of_curvature(oval: OvalSupport) -> fs.Func1D:
    """R = h + h'' as a function of the normal angle; strictly positive
    by the construction invariant."""
    return fs.Func1D(oval._R, label="R")


def verify_R_orthogonality(oval: OvalSupport,
                           quad: Optional[fs.QuadSpec] = None):
    """Residuals of R against the first harmonics; both are structurally
    zero whatever the coefficients, since h + h'' has no m=1 term."""
    dom = fs.circle()
    quad = quad or fs.default_quad(dom)
    R = radius_of_curvature(oval)
    rc = abs(fs.inner_product(R, fs.Func1D(np.cos, "cos"), None, dom, quad))
    rs = abs(fs.inner_product(R, fs.Func1D(np.sin, "sin"), None, dom, quad))
    return rc, rs


@dataclass(frozen=True)
class FourVertexReport:
    passed: bool
    extrema: int
    bound: int
    degenerate: bool = False


def four_vertex_check(oval: OvalSupport, grid_n: int = fs.DEFAULT_GRID_N,
                      tol_rel: float = fs.DEFAULT_TOL_REL) -> FourVertexReport:
    """The curvature radius of an oval attains at least 4 local extrema.
    A circle (constant R) is flagged degenerate and passes vacuously."""
    rep = fs.count_extrema(radius_of_curvature(oval), fs.circle(),
                           grid_n=grid_n, tol_rel=tol_rel)
    if rep.degenerate:
        return FourVertexReport(True, 0, 4, degenerate=True)
    return FourVertexReport(rep.count >= 4, rep.count, 4)


@dataclass(frozen=True)
class BlaschkeReport:
    passed: bool
    extrema: int
    bound: int
    degenerate: bool = False
    reduces_to_four_vertex: bool = False


def blaschke_ratio_check(o1: OvalSupport, o2: OvalSupport,
                         grid_n: int = fs.DEFAULT_GRID_N,
                         tol_rel: float = fs.DEFAULT_TOL_REL) -> BlaschkeReport:
    """The ratio of curvature radii of two ovals, matched by normal
    angle, attains at least 4 local extrema unless proportional.

    Against a circle the ratio is R1 over a constant, so the count
    coincides exactly with the plain curvature-extrema count of o1.
    """
    R1, R2 = o1._R, o2._R

    def ratio(ts):
        return R1(ts) / R2(ts)

    rep = fs.count_extrema(fs.Func1D(ratio, "R1/R2"), fs.circle(),
                           grid_n=grid_n, tol_rel=tol_rel)
    reduces = o2.is_circle
    if rep.degenerate:
        return BlaschkeReport(True, 0, 4, degenerate=True,
                              reduces_to_four_vertex=reduces)
    return BlaschkeReport(rep.count >= 4, rep.count, 4,
                          reduces_to_four_vertex=reduces)


def random_oval(harmonics: int, amplitude: float,
                rng_seed: int = 0) -> OvalSupport:
    """Random spectrum scaled so sum(m^2 ||(a_m, b_m)||) = amplitude;
    any amplitude below 1 guarantees both positivity constraints.
    Amplitude 0 gives the unit circle."""
    if harmonics < 0:
        raise ValueError("harmonics must be >= 0")
    if not 0.0 <= amplitude < 1.0:
        raise ValueError("amplitude must lie in [0, 1)")
    if harmonics == 0 or amplitude == 0.0:
        return OvalSupport(1.0)
    rng = fs.derived_rng(rng_seed, harmonics, 7)
    raw = rng.standard_normal((harmonics, 2))
    m = np.arange(1, harmonics + 1, dtype=float)
    total = float(np.sum(m * m * np.linalg.norm(raw, axis=1)))
    raw *= amplitude / total
    return OvalSupport(1.0, tuple((row[0], row[1]) for row in raw))


def oval_to_curve(oval: OvalSupport) -> CurveRd:
    """Boundary parametrized by the outward normal angle:
    x = h cos - h' sin, y = h sin + h' cos."""

    def ev(ts):
        ts = np.asarray(ts, dtype=float)
        h, dh = oval._h(ts), oval._dh(ts)
        c, s = np.cos(ts), np.sin(ts)
        return np.stack([h * c - dh * s, h * s + dh * c], axis=-1)

    return CurveRd(ev, 2, fs.circle(), label="oval")


def parse_oval(text: str) -> OvalSupport:
    """First data line h0, then `m a_m b_m` rows (missing m's are 0)."""
    h0 = None
    terms = {}
    for line in text.splitlines():
        t = line.strip()
        if not t or t.startswith("#"):
            continue
        parts = t.split()
        if h0 is None:
            if len(parts) != 1:
                raise ValueError("first data line must be h0 alone")
            h0 = float(parts[0])
            continue
        if len(parts) != 3:
            raise ValueError("harmonic lines must be `m a b`")
        m = int(parts[0])
        if m < 1:
            raise ValueError("harmonic index must be >= 1")
        terms[m] = (float(parts[1]), float(parts[2]))
    if h0 is None:
        raise ValueError("no h0 line")
    top = max(terms) if terms else 0
    coeffs = tuple(terms.get(m, (0.0, 0.0)) for m in range(1, top + 1))
    return OvalSupport(h0, coeffs)


def format_oval(oval: OvalSupport) -> str:
    lines = [f"{oval.h0:.17g}"]
    for m, (a, b) in enumerate(oval.coeffs, start=1):
        lines.append(f"{m} {a:.17g} {b:.17g}")
    return "\n".join(lines) + "\n"
