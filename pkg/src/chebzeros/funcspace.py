"""Domains, scalar functions, quadrature, and sign-change counting.

Every zero count in the package flows through this module, so the
counting convention is fixed here once: sample on a uniform grid, mark
samples whose magnitude is within a relative tolerance of the overall
maximum, collapse maximal runs of marked samples, and count transitions
between opposite strict signs.  Counts on a circle are cyclic, which
makes them even for any function that is not numerically zero.
Transition locations are sharpened by bisection between the bracketing
grid samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

INTERVAL = "interval"
CIRCLE = "circle"

GAUSS = "gauss"
TRAPEZOID = "trapezoid"

DEFAULT_GRID_N = 2048
DEFAULT_TOL_REL = 1e-9

# 60 halvings of a grid cell put the bracket far below 1e-10 of span
_BISECT_ITERS = 60


def derived_rng(seed, *keys):
    """Deterministic generator keyed by (seed, key, ...).

    Trials seeded as derived_rng(seed, trial_index) do not depend on
    execution order, so sequential and parallel sweeps see identical
    streams.
    """
    material = [int(seed) % (2 ** 63)] + [int(k) % (2 ** 63) for k in keys]
    return np.random.default_rng(material)


# ---------------------------------------------------------------------------
# domains


@dataclass(frozen=True)
class Domain:
    """A 1-D parameter domain: an open interval (a, b) or the circle R/2piZ.

    The circle is always parameterized over [0, 2pi); its endpoints are
    fixed and functions on it are treated as 2pi-periodic.
    """

    kind: str
    a: float = 0.0
    b: float = TWO_PI

    def __post_init__(self):
        if self.kind == INTERVAL:
            if not (math.isfinite(self.a) and math.isfinite(self.b)):
                raise ValueError("interval endpoints must be finite")
            if not self.a < self.b:
                raise ValueError(f"interval needs a < b, got ({self.a}, {self.b})")
        elif self.kind == CIRCLE:
            if self.a != 0.0 or self.b != TWO_PI:
                raise ValueError("circle domain is fixed to [0, 2pi)")
        else:
            raise ValueError(f"unknown domain kind {self.kind!r}")

    @staticmethod
    def interval(a: float, b: float) -> "Domain":
        return Domain(INTERVAL, float(a), float(b))

    @staticmethod
    def circle() -> "Domain":
        return Domain(CIRCLE)

    @property
    def is_circle(self) -> bool:
        return self.kind == CIRCLE

    @property
    def span(self) -> float:
        return self.b - self.a

    def wrap(self, t):
        """Map parameters to the canonical range (mod 2pi on the circle)."""
        if self.is_circle:
            return np.mod(t, TWO_PI)
        return t

    def all_inside(self, ts) -> bool:
        """True when every point lies strictly inside the domain."""
        ts = np.asarray(ts, dtype=float)
        if self.is_circle:
            return bool(np.all((ts >= 0.0) & (ts < TWO_PI)))
        return bool(np.all((ts > self.a) & (ts < self.b)))

    def grid(self, n: int) -> np.ndarray:
        """Uniform sample grid: cell centers on an interval, n equally
        spaced points starting at 0 on the circle (endpoint excluded)."""
        if n < 2:
            raise ValueError("grid needs at least 2 points")
        if self.is_circle:
            return np.arange(n) * (TWO_PI / n)
        h = self.span / n
        return self.a + h * (np.arange(n) + 0.5)


def interval(a: float, b: float) -> Domain:
    return Domain.interval(a, b)


def circle() -> Domain:
    return Domain.circle()


# ---------------------------------------------------------------------------
# functions


@dataclass(frozen=True)
class Func1D:
    """A real function of one real parameter.

    eval should accept an ndarray and return an ndarray of the same
    shape; scalar-only callables are tolerated through sample(), at the
    cost of a Python loop.  Values must be finite on the domain.
    """

    eval: Callable
    label: str = ""

    def __call__(self, t):
        return self.eval(t)


def sample(f: Func1D, ts) -> np.ndarray:
    """Evaluate f on an array of parameters, with a scalar fallback."""
    ts = np.asarray(ts, dtype=float)
    vals = None
    try:
        out = np.asarray(f.eval(ts), dtype=float)
        if out.shape == ts.shape:
            vals = out
    except Exception:
        vals = None
    if vals is None:
        flat = np.array([float(f.eval(t)) for t in ts.ravel()])
        vals = flat.reshape(ts.shape)
    if not np.all(np.isfinite(vals)):
        raise ValueError(f"function {f.label or '<anon>'} returned non-finite values")
    return vals


def constant(c: float, label: str = "") -> Func1D:
    c = float(c)
    return Func1D(lambda t, c=c: np.full_like(np.asarray(t, dtype=float), c),
                  label or f"{c:g}")


def scaled(f: Func1D, c: float) -> Func1D:
    c = float(c)
    return Func1D(lambda t: c * sample(f, t), f"{c:g}*{f.label}")


def product(f: Func1D, g: Func1D, label: str = "") -> Func1D:
    return Func1D(lambda t: sample(f, t) * sample(g, t),
                  label or f"({f.label})*({g.label})")


def abs_of(f: Func1D) -> Func1D:
    return Func1D(lambda t: np.abs(sample(f, t)), f"|{f.label}|")


def combination(funcs: Sequence[Func1D], coeffs, label: str = "") -> Func1D:
    """Linear combination sum_j coeffs[j] * funcs[j]."""
    coeffs = np.asarray(coeffs, dtype=float)
    if len(funcs) != coeffs.size:
        raise ValueError("combination needs one coefficient per function")
    funcs = tuple(funcs)

    def ev(t, funcs=funcs, coeffs=coeffs):
        t = np.asarray(t, dtype=float)
        acc = np.zeros(t.shape)
        for c, fj in zip(coeffs, funcs):
            if c != 0.0:
                acc += c * sample(fj, t)
        return acc

    return Func1D(ev, label or "combo")


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True)
class QuadSpec:
    """Quadrature choice: composite Gauss-Legendre panels on an interval,
    periodic trapezoid on the circle."""

    scheme: str
    panels: int
    nodes_per_panel: int

    def __post_init__(self):
        if self.scheme not in (GAUSS, TRAPEZOID):
            raise ValueError(f"unknown quadrature scheme {self.scheme!r}")
        if self.panels < 1 or self.nodes_per_panel < 1:
            raise ValueError("panels and nodes_per_panel must be positive")
        if self.panels * self.nodes_per_panel < 16:
            raise ValueError("need at least 16 quadrature nodes in total")

    @property
    def total_nodes(self) -> int:
        return self.panels * self.nodes_per_panel

    @staticmethod
    def gauss(panels: int = 32, nodes_per_panel: int = 16) -> "QuadSpec":
        return QuadSpec(GAUSS, panels, nodes_per_panel)

    @staticmethod
    def trapezoid(n: int = 1024) -> "QuadSpec":
        return QuadSpec(TRAPEZOID, 1, n)

    def validate_for(self, dom: Domain) -> None:
        # periodic trapezoid is spectrally accurate only on the circle;
        # Gauss panels assume a genuine interval
        if dom.is_circle and self.scheme != TRAPEZOID:
            raise ValueError("circle domains use the trapezoid scheme")
        if not dom.is_circle and self.scheme != GAUSS:
            raise ValueError("interval domains use the gauss scheme")


def default_quad(dom: Domain) -> QuadSpec:
    return QuadSpec.trapezoid() if dom.is_circle else QuadSpec.gauss()


@lru_cache(maxsize=16)
def _leggauss(k: int):
    return np.polynomial.legendre.leggauss(k)


def gauss_rule_on(lo: float, hi: float, panels: int, nodes_per_panel: int):
    """Composite Gauss-Legendre nodes and weights on [lo, hi]."""
    if hi <= lo:
        raise ValueError("empty integration range")
    x, w = _leggauss(nodes_per_panel)
    edges = np.linspace(lo, hi, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * np.diff(edges)
    ts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    ws = (half[:, None] * w[None, :]).ravel()
    return ts, ws


def quad_nodes(dom: Domain, quad: QuadSpec | None = None):
    """Nodes and weights of the quadrature rule over the whole domain."""
    if quad is None:
        quad = default_quad(dom)
    quad.validate_for(dom)
    if dom.is_circle:
        n = quad.total_nodes
        return np.arange(n) * (TWO_PI / n), np.full(n, TWO_PI / n)
    return gauss_rule_on(dom.a, dom.b, quad.panels, quad.nodes_per_panel)


def integrate(f: Func1D, dom: Domain, quad: QuadSpec | None = None) -> float:
    ts, ws = quad_nodes(dom, quad)
    return float(ws @ sample(f, ts))


def inner_product(f: Func1D, g: Func1D, rho: Func1D | None, dom: Domain,
                  quad: QuadSpec | None = None) -> float:
    """integral of f*g*rho over the domain (rho = None means weight 1)."""
    ts, ws = quad_nodes(dom, quad)
    vals = sample(f, ts) * sample(g, ts)
    if rho is not None:
        vals = vals * sample(rho, ts)
    return float(ws @ vals)


def _pieces_per_segment(seg_len: float, span: float, quad: QuadSpec) -> int:
    # keep node density comparable to the domain-level rule, at least 2 panels
    frac = max(seg_len / span, 1e-12)
    return max(2, int(math.ceil(quad.total_nodes * frac / 16.0)))


def segment_rule(dom: Domain, lo: float, hi: float, quad: QuadSpec | None = None):
    """Gauss nodes and weights on one segment of the domain.

    On the circle the segment may extend past 2pi; nodes are wrapped so
    periodic functions can be evaluated directly.
    """
    if quad is None:
        quad = default_quad(dom)
    panels = _pieces_per_segment(hi - lo, dom.span, quad)
    k = quad.nodes_per_panel if quad.scheme == GAUSS else 16
    ts, ws = gauss_rule_on(lo, hi, panels, max(k, 8))
    return dom.wrap(ts), ws


def integrate_with_breaks(f: Func1D, dom: Domain, breaks,
                          quad: QuadSpec | None = None) -> float:
    """Integrate f over the domain with Gauss panels split at the given
    interior break parameters.  Use when f has kinks or a step factor."""
    breaks = np.sort(np.asarray(breaks, dtype=float))
    if breaks.size == 0:
        return integrate(f, dom, quad)
    if not dom.all_inside(breaks):
        raise ValueError("breaks must lie strictly inside the domain")
    if dom.is_circle:
        edges = np.concatenate([breaks, [breaks[0] + TWO_PI]])
    else:
        edges = np.concatenate([[dom.a], breaks, [dom.b]])
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi - lo <= 1e-15 * dom.span:
            continue
        ts, ws = segment_rule(dom, lo, hi, quad)
        total += float(ws @ sample(f, ts))
    return total


# ---------------------------------------------------------------------------
# sign-change and extremum counting


@dataclass(frozen=True)
class SignChangeReport:
    """Count of strict sign transitions with their refined locations.

    locations is sorted increasing (representatives in [0, 2pi) on the
    circle) and has length == count.  degenerate flags inputs that were
    numerically zero (for sign counting) or numerically constant (for
    extremum counting); the count is 0 in that case.
    """

    count: int
    locations: np.ndarray
    degenerate: bool = False


def _check_count_args(grid_n: int, tol_rel: float) -> None:
    if grid_n < 64:
        raise ValueError("grid_n must be at least 64")
    if not (0.0 < tol_rel <= 1e-2):
        raise ValueError("tol_rel must lie in (0, 1e-2]")


def _sign_transitions(vals: np.ndarray, tol_rel: float, cyclic: bool):
    """Indices (i, j) of consecutive surviving samples with opposite sign.

    Samples with |v| <= tol_rel * max|v| are dropped first, which
    collapses each zero run to the single transition across it.
    """
    vmax = float(np.max(np.abs(vals))) if vals.size else 0.0
    if vmax == 0.0:
        return [], True
    keep = np.nonzero(np.abs(vals) > tol_rel * vmax)[0]
    if keep.size == 0:
        return [], True
    s = np.sign(vals[keep])
    flips = np.nonzero(s[:-1] != s[1:])[0]
    pairs = [(int(keep[k]), int(keep[k + 1])) for k in flips]
    if cyclic and keep.size >= 2 and s[-1] != s[0]:
        pairs.append((int(keep[-1]), int(keep[0])))
    return pairs, False


def _bisect_roots(fvals: Callable, los: np.ndarray, his: np.ndarray,
                  slos: np.ndarray) -> np.ndarray:
    """Vectorized bisection: each (lo, hi) brackets one sign transition,
    slos holds the sign at lo.  fvals maps an array of parameters to
    values."""
    los = los.copy()
    his = his.copy()
    for _ in range(_BISECT_ITERS):
        mids = 0.5 * (los + his)
        vm = fvals(mids)
        same = np.sign(vm) == slos
        los = np.where(same, mids, los)
        his = np.where(same, his, mids)
    return 0.5 * (los + his)


def count_sign_changes(f: Func1D, dom: Domain,
                       grid_n: int = DEFAULT_GRID_N,
                       tol_rel: float = DEFAULT_TOL_REL) -> SignChangeReport:
    """Count strict sign changes of f on the domain.

    Parameters
    ----------
    f, dom : the function and its domain.
    grid_n : uniform sample count (>= 64).
    tol_rel : relative tolerance below which a sample counts as zero.

    Zero runs collapse to one transition when the signs on both sides
    differ and to none when they agree, so tangential touches are not
    counted.  Circle counts are cyclic.  Locations are refined by
    bisection and reported sorted.
    """
    _check_count_args(grid_n, tol_rel)
    ts = dom.grid(grid_n)
    vals = sample(f, ts)
    pairs, degenerate = _sign_transitions(vals, tol_rel, dom.is_circle)
    if degenerate:
        return SignChangeReport(0, np.empty(0), True)
    if not pairs:
        return SignChangeReport(0, np.empty(0), False)

    ii = np.array([p[0] for p in pairs])
    jj = np.array([p[1] for p in pairs])
    los = ts[ii]
    his = ts[jj]
    wrapped = his <= los  # only the cyclic closing pair
    his = np.where(wrapped, his + TWO_PI, his)
    slos = np.sign(vals[ii])
    roots = _bisect_roots(lambda m: sample(f, dom.wrap(m)), los, his, slos)
    locs = np.sort(dom.wrap(roots))
    return SignChangeReport(len(pairs), locs, False)


def count_extrema(f: Func1D, dom: Domain,
                  grid_n: int = DEFAULT_GRID_N,
                  tol_rel: float = DEFAULT_TOL_REL) -> SignChangeReport:
    """Count local extrema of f as sign changes of a central-difference
    derivative.

    On an interval the two endpoints always count as extrema and appear
    in locations; on the circle the count is cyclic (hence even).  A
    numerically constant f (range within tol_rel of its scale) comes
    back degenerate with count 0.
    """
    _check_count_args(grid_n, tol_rel)
    ts = dom.grid(grid_n)
    vals = sample(f, ts)
    fscale = float(np.max(np.abs(vals))) if vals.size else 0.0
    if fscale == 0.0 or float(np.ptp(vals)) <= tol_rel * fscale:
        return SignChangeReport(0, np.empty(0), True)

    h = dom.span / grid_n
    if dom.is_circle:
        dv = (np.roll(vals, -1) - np.roll(vals, 1)) / (2.0 * h)
        dts = ts
    else:
        dv = (vals[2:] - vals[:-2]) / (2.0 * h)
        dts = ts[1:-1]
    pairs, degenerate = _sign_transitions(dv, tol_rel, dom.is_circle)
    if degenerate:
        if dom.is_circle:
            return SignChangeReport(0, np.empty(0), True)
        # monotone on the whole interval: just the endpoint extrema
        return SignChangeReport(2, np.array([dom.a, dom.b]), False)

    def dfun(m):
        return (sample(f, dom.wrap(m + h)) - sample(f, dom.wrap(m - h))) / (2.0 * h)

    if pairs:
        ii = np.array([p[0] for p in pairs])
        jj = np.array([p[1] for p in pairs])
        los, his = dts[ii], dts[jj]
        wrapped = his <= los
        his = np.where(wrapped, his + TWO_PI, his)
        roots = np.sort(dom.wrap(_bisect_roots(dfun, los, his, np.sign(dv[ii]))))
    else:
        roots = np.empty(0)
    if dom.is_circle:
        return SignChangeReport(len(pairs), roots, False)
    locs = np.concatenate([[dom.a], roots, [dom.b]])
    return SignChangeReport(len(pairs) + 2, locs, False)
