"""Curves in R^d: catalog, convexity via hyperplane slicing, restricted
polynomial systems, orthogonal synthesis, and center-of-mass corollaries.

A curve is convex when no hyperplane meets it in more than d points,
counting tangential touches by their perturbation multiplicity.  On such
a curve the restrictions of low-degree polynomials behave like a
Chebyshev system, which turns every construction from the 1-D modules
into a statement about slicing: orthogonal functions must cross many
hyperplanes, and products of secant hyperplanes realize the minimal
crossing patterns.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import funcspace as fs
from ._linalg import fix_leading_sign, smallest_direction
from .annihilator import default_annihilator
from .chebsys import (COUNTEREXAMPLE, NO_VIOLATION, ChebVerdict,
                      dimension_estimate, verify_chebyshev)
from .exceptions import NotChebyshevError
from .orthosynth import LOC_TOL, RESIDUAL_TOL, StepWeight, _step_edges, moments_on_edges

_MULT_SCALES = (1.0, 0.1, 0.01)
_DELTA_HALVINGS = 30


@dataclass(frozen=True)
class CurveRd:
    """Parametrized curve t -> x(t) in R^d.

    eval maps a 1-d parameter array to an (len, d) coordinate array.  A
    circle domain means the curve is closed; closed curves only make
    sense in even dimensions (an odd-dimensional one cannot cut every
    hyperplane an even number of times while staying within d), so an
    odd-d closed curve draws a warning.
    """

    eval: Callable
    d: int
    dom: fs.Domain
    label: str = ""

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("ambient dimension must be at least 2")
        if self.dom.is_circle and self.d % 2 == 1:
            warnings.warn("closed curves in odd dimension cannot be convex; "
                          "checks will report violations", stacklevel=3)

    def __call__(self, ts):
        return curve_points(self, ts)


def curve_points(curve: CurveRd, ts) -> np.ndarray:
    """Evaluate the curve on an array of parameters, (len, d) result."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    P = np.asarray(curve.eval(ts), dtype=float)
    if P.shape != (ts.size, curve.d):
        raise ValueError(f"curve eval returned shape {P.shape}, "
                         f"expected {(ts.size, curve.d)}")
    if not np.all(np.isfinite(P)):
        raise ValueError("curve eval produced non-finite coordinates")
    return P


def affine_image(curve: CurveRd, A, b=None) -> CurveRd:
    """The curve mapped through x -> A x + b.  A must be square and
    nonsingular, so convexity and the spanned function space survive."""
    A = np.asarray(A, dtype=float)
    d = curve.d
    if A.shape != (d, d):
        raise ValueError(f"A must be {d}x{d}")
    if abs(np.linalg.det(A)) <= 1e-12:
        raise ValueError("A must be nonsingular")
    off = np.zeros(d) if b is None else np.asarray(b, dtype=float)
    if off.shape != (d,):
        raise ValueError(f"b must have length {d}")

    def ev(ts, curve=curve, A=A, off=off):
        return curve_points(curve, ts) @ A.T + off

    return CurveRd(ev, d, curve.dom, label=f"affine({curve.label})")


# ---------------------------------------------------------------------------
# catalog


def moment_curve(d: int, a: float = -1.0, b: float = 1.0) -> CurveRd:
    """(t, t^2, ..., t^d): the basic convex curve on an interval."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    powers = np.arange(1, d + 1)
    return CurveRd(lambda ts: ts[:, None] ** powers[None, :], d,
                   fs.Domain.interval(a, b), f"moment:{d}")


def trig_curve(k: int) -> CurveRd:
    """(cos t, sin t, ..., cos kt, sin kt): closed convex curve in R^{2k}."""
    if k < 1:
        raise ValueError("need at least one harmonic")
    ms = np.arange(1, k + 1)

    def ev(ts):
        ang = ts[:, None] * ms[None, :]
        P = np.empty((ts.size, 2 * k))
        P[:, 0::2] = np.cos(ang)
        P[:, 1::2] = np.sin(ang)
        return P

    return CurveRd(ev, 2 * k, fs.Domain.circle(), f"trig:{k}")


def power_curve(alphas, a: float, b: float) -> CurveRd:
    """(t^a1, ..., t^ad) for increasing positive exponents, 0 < a < b."""
    al = np.asarray(alphas, dtype=float)
    if al.ndim != 1 or al.size < 2:
        raise ValueError("need at least two exponents")
    if np.any(al <= 0) or np.any(np.diff(al) <= 0):
        raise ValueError("exponents must be positive and strictly increasing")
    if not 0 < a < b:
        raise ValueError("power curves need 0 < a < b")
    return CurveRd(lambda ts: ts[:, None] ** al[None, :], al.size,
                   fs.Domain.interval(a, b), "power")


def exp_graph(a: float = -1.0, b: float = 1.0) -> CurveRd:
    return CurveRd(lambda ts: np.stack([ts, np.exp(ts)], axis=1), 2,
                   fs.Domain.interval(a, b), "expgraph")


def sine_graph(c: float = 6.0, a: float = 0.2, b: float | None = None) -> CurveRd:
    """(t, sin t + c): NOT convex once b - a > pi (an inflection fits
    inside), yet the homogeneous pair {t, sin t + c} stays Chebyshev of
    order 2 for large enough c.  The default window spans 1.4*pi."""
    if b is None:
        b = a + 1.4 * np.pi
    return CurveRd(lambda ts: np.stack([ts, np.sin(ts) + c], axis=1), 2,
                   fs.Domain.interval(a, b), "sinegraph")


def smoothed_polygon(m: int, r_frac: float = 0.1) -> CurveRd:
    """Regular m-gon (circumradius 1) with corners rounded by arcs of
    radius r_frac * apothem, parametrized by arc length over [0, 2pi).

    With corner radius r = r_frac * cos(pi/m) the tangency points cut
    each edge at fraction r_frac from its ends, so any r_frac in (0, 1)
    gives a valid C^1 convex closed curve.  Distances from the center
    range over [cos(pi/m), 1 - r_frac*(1 - cos(pi/m))]: circles of
    intermediate radius cross the boundary 2m times.
    """
    if m < 3:
        raise ValueError("need at least 3 sides")
    if not 0.0 < r_frac < 1.0:
        raise ValueError("corner fraction must lie in (0, 1)")
    apothem = np.cos(np.pi / m)
    r = r_frac * apothem
    theta = fs.TWO_PI * np.arange(m) / m
    V = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    C = (1.0 - r_frac) * V  # rounding-arc centers
    nxt = (np.arange(m) + 1) % m
    edge = V[nxt] - V
    # tangency fraction along each edge is r_frac itself
    A = V + r_frac * 0.5 * edge          # arc exit near V[i]
    B = V[nxt] - r_frac * 0.5 * edge     # arc entry near V[i+1]
    seg_len = (1.0 - r_frac) * float(np.linalg.norm(edge[0]))
    arc_len = r * fs.TWO_PI / m
    lens = np.empty(2 * m)
    lens[0::2] = seg_len
    lens[1::2] = arc_len
    t_edges = np.concatenate([[0.0], np.cumsum(lens)]) * (fs.TWO_PI / lens.sum())
    # arc at vertex j runs from B[j-1] to A[j], centered at C[j]
    start_vec = B[np.arange(m) - 1] - C
    phi0 = np.arctan2(start_vec[:, 1], start_vec[:, 0])
    sweep = fs.TWO_PI / m

    def ev(ts):
        t = np.mod(ts, fs.TWO_PI)
        idx = np.clip(np.searchsorted(t_edges, t, side="right") - 1, 0, 2 * m - 1)
        frac = (t - t_edges[idx]) / (t_edges[idx + 1] - t_edges[idx])
        out = np.empty((t.size, 2))
        seg = idx % 2 == 0
        i = idx // 2
        if np.any(seg):
            si, sf = i[seg], frac[seg]
            out[seg] = A[si] + sf[:, None] * (B[si] - A[si])
        if np.any(~seg):
            aj = (i[~seg] + 1) % m
            phi = phi0[aj] + frac[~seg] * sweep
            out[~seg] = C[aj] + r * np.stack([np.cos(phi), np.sin(phi)], axis=1)
        return out

    return CurveRd(ev, 2, fs.Domain.circle(), f"smoothedpolygon:{m}")


# ---------------------------------------------------------------------------
# restricted polynomial systems


def monomial_multi_indices(n: int, d: int, homogeneous_only: bool = False):
    """Exponent tuples with |alpha| <= n (or == n), ordered by degree then
    by descending leading exponents; C(n+d, d) of them in the full case."""
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 and d >= 1")
    degrees = [n] if homogeneous_only else range(n + 1)
    out = []
    for deg in degrees:
        out.extend(_compositions(deg, d))
    return out


def _compositions(total: int, slots: int):
    if slots == 1:
        return [(total,)]
    return [(first,) + rest
            for first in range(total, -1, -1)
            for rest in _compositions(total - first, slots - 1)]


def restrict_polynomials(curve: CurveRd, n: int,
                         homogeneous_only: bool = False):
    """Func1D restrictions t -> x(t)^alpha of all monomials of degree <= n
    (== n when homogeneous_only)."""
    funcs = []
    for alpha in monomial_multi_indices(n, curve.d, homogeneous_only):
        a = np.asarray(alpha, dtype=float)

        def ev(ts, _a=a):
            return np.prod(curve_points(curve, ts) ** _a[None, :], axis=1)

        funcs.append(fs.Func1D(ev, "x^" + "".join(map(str, alpha))))
    return funcs


# ---------------------------------------------------------------------------
# hyperplanes and convexity


@dataclass(frozen=True)
class Hyperplane:
    """Locus normal . x = offset with a unit, sign-canonical normal."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        w = np.asarray(self.normal, dtype=float)
        if w.ndim != 1 or w.size < 2:
            raise ValueError("normal must be a vector in R^d, d >= 2")
        nrm = float(np.linalg.norm(w))
        if nrm == 0.0 or not np.isfinite(nrm):
            raise ValueError("normal must be nonzero and finite")
        v = fix_leading_sign(np.concatenate([w, [float(self.offset)]]) / nrm)
        object.__setattr__(self, "normal", v[:-1])
        object.__setattr__(self, "offset", float(v[-1]))

    def value(self, x):
        return np.asarray(x, dtype=float) @ self.normal - self.offset

    def func_on(self, curve: CurveRd) -> fs.Func1D:
        return fs.Func1D(lambda ts: curve_points(curve, ts) @ self.normal
                         - self.offset, "slice")


def hyperplane_through(points) -> Hyperplane:
    """The hyperplane through d affinely independent points in R^d."""
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ValueError("need exactly d points in R^d")
    d = P.shape[1]
    v = smallest_direction(np.hstack([P, np.ones((d, 1))]))
    w, c = v[:d], -float(v[d])
    if np.linalg.norm(w) <= 1e-12:
        raise ValueError("points are affinely dependent")
    return Hyperplane(w, c)


@dataclass(frozen=True)
class IntersectionCount:
    """Crossing count of one hyperplane with one curve.

    simple_roots are the transversal sign-change parameters;
    count_with_multiplicity adds tangential touches, realized as the
    maximum crossing count under small parallel shifts of the plane.
    perturbation_used is the shift magnitude that attained the maximum
    (0 when the unshifted count did).  A curve lying inside the plane is
    degenerate and reports count = grid_n.
    """

    count_with_multiplicity: int
    simple_roots: np.ndarray
    perturbation_used: float
    degenerate: bool = False


def _grid_flip_count(vals: np.ndarray, cyclic: bool, tol_rel: float) -> int:
    pairs, degen = fs._sign_transitions(vals, tol_rel, cyclic)
    return 0 if degen else len(pairs)


def hyperplane_intersections(curve: CurveRd, hp: Hyperplane,
                             grid_n: int = fs.DEFAULT_GRID_N,
                             eps: float = 1e-3,
                             tol_rel: float = fs.DEFAULT_TOL_REL) -> IntersectionCount:
    """Count curve/hyperplane crossings with perturbation multiplicity.

    eps is the largest shift as a fraction of the range of the slice
    functional; shifts eps, eps/10, eps/100 of the range are tried on
    both sides and the maximal count is reported.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    F = hp.func_on(curve)
    base = fs.count_sign_changes(F, curve.dom, grid_n, tol_rel)
    if base.degenerate:
        return IntersectionCount(grid_n, np.empty(0), 0.0, True)
    vals = fs.sample(F, curve.dom.grid(grid_n))
    spread = float(np.ptp(vals))
    best, used = base.count, 0.0
    for scale in _MULT_SCALES:
        delta = eps * scale * spread
        if delta == 0.0:
            continue
        for sgn in (1.0, -1.0):
            c = _grid_flip_count(vals - sgn * delta, curve.dom.is_circle, tol_rel)
            if c > best:
                best, used = c, delta
    return IntersectionCount(best, base.locations, used, False)


@dataclass(frozen=True)
class ConvexityReport:
    status: str
    trials_run: int
    witness: Optional[Hyperplane] = None
    witness_count: Optional[IntersectionCount] = None

    @property
    def convex(self) -> bool:
        return self.status == NO_VIOLATION


def convexity_check(curve: CurveRd, trials: int = 500, rng_seed: int = 0,
                    grid_n: int = fs.DEFAULT_GRID_N,
                    tol_rel: float = fs.DEFAULT_TOL_REL) -> ConvexityReport:
    """Monte-Carlo falsification of convexity.

    Each trial slices with a random hyperplane (uniform normal, offset
    inside the projection range) and with a secant hyperplane through d
    sampled curve points; a slice crossing more than d times is a
    counterexample.  Grid sign flips never exceed the true crossing
    count of a continuous slice functional, so a genuinely convex curve
    cannot be flagged; absence of a witness is still only evidence.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    dom = curve.dom
    d = curve.d
    P = curve_points(curve, dom.grid(grid_n))
    cyc = dom.is_circle
    for trial in range(trials):
        rng = fs.derived_rng(rng_seed, trial, 1)
        w = rng.standard_normal(d)
        w /= np.linalg.norm(w)
        proj = P @ w
        lo, hi = float(np.min(proj)), float(np.max(proj))
        if hi > lo:
            off = lo + (hi - lo) * rng.uniform(0.02, 0.98)
            hit = _confirmed_violation(curve, Hyperplane(w, off), proj - off,
                                       cyc, tol_rel, grid_n)
            if hit is not None:
                return ConvexityReport(COUNTEREXAMPLE, trial + 1, *hit)
        idx = rng.choice(grid_n, size=d, replace=False)
        try:
            hp = hyperplane_through(P[idx])
        except ValueError:
            continue
        hit = _confirmed_violation(curve, hp, P @ hp.normal - hp.offset,
                                   cyc, tol_rel, grid_n)
        if hit is not None:
            return ConvexityReport(COUNTEREXAMPLE, trial + 1, *hit)
    return ConvexityReport(NO_VIOLATION, trials)


def _confirmed_violation(curve, hp, svals, cyclic, tol_rel, grid_n):
    # cheap screen on precomputed grid values (plus small shifts for
    # tangential doubling), then a full recount before reporting
    d = curve.d
    spread = float(np.ptp(svals))
    shifts = (0.0,) if spread == 0.0 else (0.0, 1e-4 * spread, -1e-4 * spread)
    if all(_grid_flip_count(svals - s, cyclic, tol_rel) <= d for s in shifts):
        return None
    full = hyperplane_intersections(curve, hp, grid_n, tol_rel=tol_rel)
    if full.degenerate or full.count_with_multiplicity > d:
        return hp, full
    return None


@dataclass(frozen=True)
class Theorem4Report:
    convexity: ConvexityReport
    chebyshev: ChebVerdict
    agree: bool
    dim: int


def theorem4_check(curve: CurveRd, trials: int = 500, rng_seed: int = 0,
                   grid_n: int = fs.DEFAULT_GRID_N,
                   tol_rel: float = fs.DEFAULT_TOL_REL) -> Theorem4Report:
    """Convexity of the curve and the Chebyshev property of its restricted
    affine functions stand or fall together; both probes run with a
    shared seed and the report says whether the verdicts agree."""
    funcs = restrict_polynomials(curve, 1)
    dim = dimension_estimate(funcs, curve.dom)
    if dim != curve.d + 1:
        raise ValueError(
            f"affine restrictions span dimension {dim}, not {curve.d + 1}: "
            "the curve lies inside a hyperplane")
    conv = convexity_check(curve, trials, rng_seed, grid_n, tol_rel)
    cheb = verify_chebyshev((funcs, curve.dom), trials, rng_seed, grid_n, tol_rel)
    agree = conv.convex == (cheb.status == NO_VIOLATION)
    return Theorem4Report(conv, cheb, agree, dim)


# ---------------------------------------------------------------------------
# orthogonal functions on curves


@dataclass(frozen=True)
class CurveSynthResult:
    F: fs.Func1D
    step: StepWeight
    points: np.ndarray
    dim: int
    residuals: np.ndarray
    sign_report: fs.SignChangeReport


def construct_orthogonal_on_curve(curve: CurveRd, n: int,
                                  pieces: int | None = None,
                                  quad: fs.QuadSpec | None = None,
                                  grid_n: int = fs.DEFAULT_GRID_N,
                                  tol_rel: float = fs.DEFAULT_TOL_REL) -> CurveSynthResult:
    """Build F on the parameter domain orthogonal (weight 1) to every
    restricted monomial of degree <= n.

    Two passes.  First a step function on `pieces` equal parameter arcs:
    the kernel of the piece-moment matrix says which arcs carry which
    sign.  The sign flips of that kernel step (midpoints of any zeroed
    gaps) become prescribed zeros, and the step on the refined pieces is
    refit together with a smooth annihilator factor so the result is
    continuous with honest crossings at the active points.
    """
    dom = curve.dom
    funcs = restrict_polynomials(curve, n)
    dim = dimension_estimate(funcs, dom)
    if pieces is None:
        pieces = dim + 1
    if pieces <= dim:
        raise ValueError(f"need more than {dim} pieces, got {pieces}")
    edges = np.linspace(0.0, fs.TWO_PI, pieces + 1) if dom.is_circle \
        else np.linspace(dom.a, dom.b, pieces + 1)
    M = moments_on_edges(funcs, fs.constant(1.0), dom, edges, quad)
    svals = np.linalg.svd(M, compute_uv=False)
    rank = int(np.sum(svals > 1e-10 * svals[0])) if svals[0] > 0 else 0
    if rank != dim:
        raise NotChebyshevError(
            f"piece moment matrix rank {rank} disagrees with span dimension {dim}")
    h = fix_leading_sign(smallest_direction(M))
    pts = _flip_points(h, edges, dom, tol_rel)
    if pts.size == 0:
        raise NotChebyshevError("kernel step has no sign flips to realize")
    g = default_annihilator(pts, dom)
    A = moments_on_edges(funcs, g, dom, _step_edges(dom, pts), quad)
    h2 = fix_leading_sign(smallest_direction(A))
    residuals = A @ h2
    if float(np.max(np.abs(residuals))) > RESIDUAL_TOL:
        raise NotChebyshevError("refined orthogonality residual above tolerance")
    step = StepWeight(pts, h2, dom)
    F = fs.product(g, step.as_func(), label="F")
    rep = fs.count_sign_changes(F, dom, grid_n, tol_rel)
    return CurveSynthResult(F, step, pts, dim, residuals, rep)


def _flip_points(h: np.ndarray, edges: np.ndarray, dom: fs.Domain,
                 tol_rel: float) -> np.ndarray:
    """Sign-flip boundaries of a step with heights h on the pieces cut by
    edges; a flip across a run of zeroed pieces lands on the run's
    midpoint."""
    pairs, degen = fs._sign_transitions(h, tol_rel, dom.is_circle)
    if degen:
        return np.empty(0)
    pts = []
    for i, j in pairs:
        lo = edges[i + 1]
        hi = edges[j] if edges[j] >= lo else edges[j] + fs.TWO_PI
        pts.append(0.5 * (lo + hi))
    pts = np.sort(np.mod(pts, fs.TWO_PI)) if dom.is_circle else np.sort(pts)
    return np.asarray(pts)


@dataclass(frozen=True)
class Theorem5Report:
    applicable: bool
    passed: bool
    sign_changes: int
    bound: int
    max_residual: float


def theorem5_verify(curve: CurveRd, n: int, f, quad: fs.QuadSpec | None = None,
                    tol: float = RESIDUAL_TOL,
                    grid_n: int = fs.DEFAULT_GRID_N,
                    tol_rel: float = fs.DEFAULT_TOL_REL) -> Theorem5Report:
    """Zero bound for functions orthogonal to all degree <= n restricted
    polynomials on a convex curve: at least n*d + 1 sign changes, n*d + 2
    when the curve is closed.  Not applicable when the residuals exceed
    tol or f is numerically zero."""
    if not isinstance(f, fs.Func1D):
        f = fs.Func1D(f, "f")
    dom = curve.dom
    rep = fs.count_sign_changes(f, dom, grid_n, tol_rel)
    residuals = [fs.integrate_with_breaks(fs.product(f, fj), dom, rep.locations, quad)
                 for fj in restrict_polynomials(curve, n)]
    max_res = float(np.max(np.abs(residuals)))
    bound = n * curve.d + (2 if dom.is_circle else 1)
    if rep.degenerate or max_res > tol:
        return Theorem5Report(False, False, rep.count, bound, max_res)
    return Theorem5Report(True, rep.count >= bound, rep.count, bound, max_res)


# ---------------------------------------------------------------------------
# products of secant hyperplanes


@dataclass(frozen=True)
class SupportProduct:
    """Product of hyperplane factors crossing the curve at prescribed
    parameters; poly maps exponent tuples to coefficients."""

    factors: tuple
    poly: dict
    delta: float
    points: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.factors)


def _linear_form_product(factors, d: int) -> dict:
    poly = {(0,) * d: 1.0}
    for hp in factors:
        terms = [((0,) * d, -hp.offset)]
        for j in range(d):
            if hp.normal[j] != 0.0:
                e = tuple(int(i == j) for i in range(d))
                terms.append((e, float(hp.normal[j])))
        acc = {}
        for alpha, ca in poly.items():
            for beta, cb in terms:
                gamma = tuple(a + b for a, b in zip(alpha, beta))
                acc[gamma] = acc.get(gamma, 0.0) + ca * cb
        poly = acc
    return poly


def polynomial_eval(poly: dict, X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    out = np.zeros(X.shape[0])
    for alpha, c in poly.items():
        out += c * np.prod(X ** np.asarray(alpha, dtype=float)[None, :], axis=1)
    return out


def polynomial_on_curve(poly: dict, curve: CurveRd) -> fs.Func1D:
    return fs.Func1D(lambda ts: polynomial_eval(poly, curve_points(curve, ts)),
                     "poly")


def _factor_product_func(curve: CurveRd, factors) -> fs.Func1D:
    def ev(ts):
        P = curve_points(curve, ts)
        out = np.ones(P.shape[0])
        for hp in factors:
            out *= P @ hp.normal - hp.offset
        return out

    return fs.Func1D(ev, "secant-product")


def support_product_polynomial(curve: CurveRd, zero_points,
                               group_size_d: int | None = None,
                               grid_n: int = fs.DEFAULT_GRID_N,
                               tol_rel: float = fs.DEFAULT_TOL_REL) -> SupportProduct:
    """Product of secant hyperplanes whose restriction to the curve
    changes sign exactly at the prescribed parameters.

    The points are grouped d at a time along the curve; each full group
    fixes one hyperplane factor.  A leftover group of l < d points is
    completed with d - l auxiliary curve points at spacing delta from an
    anchor: the left endpoint on an open curve (the extra crossings then
    sit below the first grid sample and leave the domain as delta -> 0),
    the group's own first point on a closed one (the anchor cluster then
    holds an odd number of crossings, so one net flip survives there).
    delta starts at 1e-2 of the span and halves until two consecutive
    grid sign patterns agree and the realized crossings match the
    prescription; on a closed curve with d - l >= 2 the hyperplane fit
    through the collapsing cluster can lose too much precision first, in
    which case this raises instead of returning a wrong pattern.
    """
    dom = curve.dom
    d = curve.d
    if group_size_d is None:
        group_size_d = d
    if group_size_d != d:
        raise ValueError("groups must have exactly d points to fix a hyperplane")
    pts = np.asarray(zero_points, dtype=float)
    if pts.ndim != 1 or pts.size == 0:
        raise ValueError("need at least one zero point")
    if pts.size > 1 and np.any(np.diff(pts) <= 0):
        raise ValueError("zero points must be strictly increasing")
    if not dom.all_inside(pts):
        raise ValueError("zero points must lie inside the domain")
    q = pts.size
    nfull, l = divmod(q, d)
    full_factors = [hyperplane_through(curve_points(curve, pts[i * d:(i + 1) * d]))
                    for i in range(nfull)]

    if l == 0:
        F = _factor_product_func(curve, full_factors)
        rep = fs.count_sign_changes(F, dom, grid_n, tol_rel)
        _require_pattern(rep, pts)
        return SupportProduct(tuple(full_factors),
                              _linear_form_product(full_factors, d), 0.0, pts)

    short = pts[nfull * d:]
    anchor = float(short[0]) if dom.is_circle else dom.a
    delta = 1e-2 * dom.span
    prev_pattern = None
    for _ in range(_DELTA_HALVINGS + 1):
        aux = dom.wrap(anchor + delta * np.arange(1, d - l + 1))
        try:
            last = hyperplane_through(
                curve_points(curve, np.concatenate([short, aux])))
        except ValueError:
            delta *= 0.5
            prev_pattern = None
            continue
        factors = full_factors + [last]
        F = _factor_product_func(curve, factors)
        vals = fs.sample(F, dom.grid(grid_n))
        vmax = float(np.max(np.abs(vals)))
        pattern = np.sign(np.where(np.abs(vals) > tol_rel * vmax, vals, 0.0)
                          ).tobytes() if vmax > 0 else b""
        rep = fs.count_sign_changes(F, dom, grid_n, tol_rel)
        ok = (not rep.degenerate and rep.count == q
              and float(np.max(np.abs(rep.locations - pts))) <= LOC_TOL)
        if ok and pattern == prev_pattern:
            return SupportProduct(tuple(factors),
                                  _linear_form_product(factors, d), delta, pts)
        prev_pattern = pattern if ok else None
        delta *= 0.5
    raise NotChebyshevError(
        "auxiliary cluster never stabilized on the prescribed sign pattern")


def _require_pattern(rep: fs.SignChangeReport, pts: np.ndarray):
    if rep.degenerate or rep.count != pts.size or \
            float(np.max(np.abs(rep.locations - pts))) > LOC_TOL:
        raise NotChebyshevError(
            "secant product does not change sign exactly at the prescribed points")


# ---------------------------------------------------------------------------
# centers of mass


def arc_speed(curve: CurveRd, ts, h: float | None = None) -> np.ndarray:
    """|x'(t)| by central differences (one-sided at interval endpoints)."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if h is None:
        h = 1e-6 * curve.dom.span
    tp, tm = ts + h, ts - h
    if not curve.dom.is_circle:
        tp = np.minimum(tp, curve.dom.b)
        tm = np.maximum(tm, curve.dom.a)
    diff = curve_points(curve, tp) - curve_points(curve, tm)
    return np.linalg.norm(diff, axis=1) / (tp - tm)


def center_of_mass(curve: CurveRd, rho: fs.Func1D | None = None,
                   quad: fs.QuadSpec | None = None):
    """Mass-weighted mean point with respect to arc length; rho = None
    means the uniform density.  Returns (point, mass); the mass must be
    positive."""
    ts, ws = fs.quad_nodes(curve.dom, quad)
    dens = ws * arc_speed(curve, ts)
    if rho is not None:
        dens = dens * fs.sample(rho, ts)
    mass = float(np.sum(dens))
    if mass <= 1e-12 * float(np.sum(np.abs(dens)) + 1e-300):
        raise ValueError("total mass is not positive; centroid undefined")
    point = curve_points(curve, ts).T @ dens / mass
    return point, mass


@dataclass(frozen=True)
class Prop1Report:
    applicable: bool
    passed: bool
    extrema: int
    bound: int
    center_gap: float
    degenerate: bool = False


def _diameter(P: np.ndarray) -> float:
    return float(np.linalg.norm(np.ptp(P, axis=0)))


def proposition1_check(curve: CurveRd, f: fs.Func1D,
                       quad: fs.QuadSpec | None = None, tol: float = 1e-8,
                       grid_n: int = fs.DEFAULT_GRID_N,
                       tol_rel: float = fs.DEFAULT_TOL_REL) -> Prop1Report:
    """A positive density whose center of mass sits at the uniform center
    must oscillate: at least d + 2 extrema (endpoints included on an
    open curve).  Center mismatch makes the check not applicable; a
    numerically constant density is flagged degenerate, not failed."""
    dom = curve.dom
    if float(np.min(fs.sample(f, dom.grid(grid_n)))) <= 0.0:
        raise ValueError("density must be strictly positive")
    c_u, _ = center_of_mass(curve, None, quad)
    c_f, _ = center_of_mass(curve, f, quad)
    diam = _diameter(curve_points(curve, dom.grid(grid_n)))
    gap = float(np.linalg.norm(c_f - c_u)) / max(diam, 1e-300)
    bound = curve.d + 2
    if gap > tol:
        return Prop1Report(False, False, -1, bound, gap)
    rep = fs.count_extrema(f, dom, grid_n, tol_rel)
    if rep.degenerate:
        return Prop1Report(True, True, 0, bound, gap, True)
    return Prop1Report(True, rep.count >= bound, rep.count, bound, gap)


@dataclass(frozen=True)
class Prop1RelativeReport:
    applicable: bool
    passed: bool
    diff_sign_changes: int
    diff_bound: int
    ratio_extrema: int
    ratio_bound: int
    center_gap: float
    degenerate: bool = False


def proposition1_relative(curve: CurveRd, f: fs.Func1D, g: fs.Func1D,
                          quad: fs.QuadSpec | None = None, tol: float = 1e-8,
                          grid_n: int = fs.DEFAULT_GRID_N,
                          tol_rel: float = fs.DEFAULT_TOL_REL) -> Prop1RelativeReport:
    """Two positive densities with a common center of mass: after matching
    total masses their difference changes sign at least d + 1 times
    (d + 2 on a closed curve) and their ratio has at least d + 2 extrema.
    Proportional densities are flagged degenerate."""
    dom = curve.dom
    ts = dom.grid(grid_n)
    fv, gv = fs.sample(f, ts), fs.sample(g, ts)
    if float(np.min(fv)) <= 0.0 or float(np.min(gv)) <= 0.0:
        raise ValueError("densities must be strictly positive")
    c_f, mf = center_of_mass(curve, f, quad)
    c_g, mg = center_of_mass(curve, g, quad)
    diam = _diameter(curve_points(curve, ts))
    gap = float(np.linalg.norm(c_f - c_g)) / max(diam, 1e-300)
    diff_bound = curve.d + (2 if dom.is_circle else 1)
    ratio_bound = curve.d + 2
    if gap > tol:
        return Prop1RelativeReport(False, False, -1, diff_bound, -1,
                                   ratio_bound, gap)
    scale = mf / mg
    dvals = fv - scale * gv
    if float(np.max(np.abs(dvals))) <= 1e-9 * float(np.max(np.abs(fv))):
        return Prop1RelativeReport(True, True, 0, diff_bound, 0, ratio_bound,
                                   gap, True)
    diff = fs.Func1D(lambda t: fs.sample(f, t) - scale * fs.sample(g, t), "f-g")
    ratio = fs.Func1D(lambda t: fs.sample(f, t) / fs.sample(g, t), "f/g")
    drep = fs.count_sign_changes(diff, dom, grid_n, tol_rel)
    rrep = fs.count_extrema(ratio, dom, grid_n, tol_rel)
    passed = (drep.count >= diff_bound) and \
        (rrep.degenerate or rrep.count >= ratio_bound)
    return Prop1RelativeReport(True, passed, drep.count, diff_bound,
                               rrep.count, ratio_bound, gap)
