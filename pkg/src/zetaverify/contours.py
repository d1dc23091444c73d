"""Argument-principle zero counting over circles and midpoint rectangles.

Each contour integral (1/2pi i) * integral of xi'/xi is computed twice:

* phase tracking (primary): accumulate the continuous change of arg(xi)
  along the contour, subdividing any step whose wrapped phase jump exceeds
  pi/2, and divide by 2pi;
* direct quadrature (check): composite Gauss-Legendre of xi'/xi per edge.

A result is accepted only if the quadrature value is within 0.25 of an
integer, its imaginary part is below 0.25, and both methods agree on the
integer.  Winding counts are robust to moderate evaluation error; the
quadrature route validates the analytic log-derivative.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .special import NearZeroOfXi, XiEvaluator
from .zeros import CriticalZero

TWO_PI = 2.0 * math.pi

# every accepted winding in a process is appended here for audit;
# long-running callers should clear it between runs
WINDING_LOG: list["WindingResult"] = []


class ContourError(Exception):
    pass


class ContourTooCloseToZero(ContourError):
    pass


class NonIntegerResult(ContourError):
    pass


class MethodDisagreement(ContourError):
    pass


class NonMonotoneCounts(ContourError):
    """Shrinking-circle count increased with j: a nearby zero was missed."""


class NoValidPerturbation(ContourError):
    pass


class StabilizationFailure(ContourError):
    pass


@dataclass(frozen=True)
class CircleContour:
    center: complex
    radius: float
    j: int


@dataclass
class RectangleContour:
    bottom: float
    top: float
    left_re: float = 0.0
    right_re: float = 1.0
    perturbations: list = field(default_factory=list)


@dataclass(frozen=True)
class WindingResult:
    raw: complex
    count: int
    distance: float
    phase_winding: float

    @property
    def phase_count(self) -> int:
        return round(self.phase_winding)


class _Edge:
    """One contour piece: parametrized point map plus a length scale."""

    def __init__(self, point, length: float):
        self.point = point  # u in [0, 1] -> complex
        self.length = length


def _rect_edges(rect: RectangleContour) -> list[_Edge]:
    bl = complex(rect.left_re, rect.bottom)
    br = complex(rect.right_re, rect.bottom)
    tr = complex(rect.right_re, rect.top)
    tl = complex(rect.left_re, rect.top)
    corners = [bl, br, tr, tl, bl]  # counterclockwise
    return [
        _Edge((lambda a, b: (lambda u: a + u * (b - a)))(a, b), abs(b - a))
        for a, b in zip(corners[:-1], corners[1:])
    ]


def _circle_edges(c: CircleContour, pieces: int = 4) -> list[_Edge]:
    arc = TWO_PI / pieces

    def make(phi0):
        return lambda u: c.center + c.radius * cmath.exp(1j * (phi0 + u * arc))

    return [_Edge(make(k * arc), c.radius * arc) for k in range(pieces)]


def _contour_edges(contour) -> list[_Edge]:
    if isinstance(contour, CircleContour):
        return _circle_edges(contour)
    if isinstance(contour, RectangleContour):
        return _rect_edges(contour)
    raise TypeError(f"unsupported contour {type(contour)!r}")


def _wrap(phi: float) -> float:
    return (phi + math.pi) % TWO_PI - math.pi


def _phase_track_edge(edge: _Edge, ev: XiEvaluator, max_depth: int = 30) -> float:
    """Continuous change of arg(xi) along one edge, in radians."""

    def phase_at(u: float) -> float:
        z = edge.point(u)
        if ev.scaled_mag(z) < ev.xi_floor:
            raise ContourTooCloseToZero(
                f"|xi| (scaled) below floor {ev.xi_floor:g} on contour at {z}"
            )
        return ev.log_xi(z).imag

    n0 = max(4, math.ceil(edge.length / 0.1))
    us = [k / n0 for k in range(n0 + 1)]
    vals = [phase_at(u) for u in us]
    total = 0.0
    # stack of (u_lo, phi_lo, u_hi, phi_hi, depth)
    stack = list(
        zip(us[-2::-1], vals[-2::-1], us[:0:-1], vals[:0:-1], [0] * n0)
    )
    while stack:
        u0, p0, u1, p1, depth = stack.pop()
        d = _wrap(p1 - p0)
        if abs(d) <= 0.5 * math.pi:
            total += d
            continue
        if depth >= max_depth:
            raise NonIntegerResult(
                f"phase step {d:.3f} rad not resolved after {max_depth} subdivisions"
            )
        um = 0.5 * (u0 + u1)
        pm = phase_at(um)
        stack.append((um, pm, u1, p1, depth + 1))
        stack.append((u0, p0, um, pm, depth + 1))
    return total


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl_nodes(n: int):
    if n not in _GL_CACHE:
        x, w = np.polynomial.legendre.leggauss(n)
        _GL_CACHE[n] = (0.5 * (x + 1.0), 0.5 * w)  # mapped to [0, 1]
    return _GL_CACHE[n]


def _quadrature_edge(edge: _Edge, ev: XiEvaluator, nodes: int, panels: int) -> complex:
    """integral of xi'/xi dz over one edge by composite Gauss-Legendre."""
    x, w = _gl_nodes(nodes)
    total = 0.0 + 0.0j
    h = 1.0 / panels
    eps = 1e-7  # derivative of the point map by central differences in u
    for p in range(panels):
        for xk, wk in zip(x, w):
            u = (p + xk) * h
            z = edge.point(u)
            dz = (edge.point(u + eps) - edge.point(u - eps)) / (2.0 * eps)
            try:
                total += wk * h * ev.logderiv(z) * dz
            except NearZeroOfXi as exc:
                raise ContourTooCloseToZero(str(exc)) from exc
    return total


def integrate_logderiv(
    contour,
    ev: XiEvaluator,
    quad_nodes: int = 12,
    orientation: int = 1,
    max_rounds: int = 3,
) -> WindingResult:
    """Accepted winding count of xi around the contour (positive orientation
    unless orientation = -1), cross-validated between phase tracking and
    quadrature."""
    edges = _contour_edges(contour)
    winding = sum(_phase_track_edge(e, ev) for e in edges) / TWO_PI
    raw = None
    for round_no in range(max_rounds):
        scale = 2 ** round_no
        raw = sum(
            _quadrature_edge(e, ev, quad_nodes, max(2, math.ceil(e.length / 0.25)) * scale)
            for e in edges
        ) / (2j * math.pi)
        count = round(raw.real)
        if abs(raw - count) < 0.25:
            break
    else:
        raise NonIntegerResult(
            f"quadrature winding {raw} not within 0.25 of an integer"
        )
    raw = complex(raw)
    if orientation == -1:
        winding, raw, count = -winding, -raw, -count
    distance = abs(raw - count)
    if abs(raw.imag) >= 0.25:
        raise NonIntegerResult(f"quadrature winding {raw} has |Im| >= 0.25")
    if round(winding) != count or abs(winding - count) >= 0.25:
        raise MethodDisagreement(
            f"phase tracking gives {winding:.6f}, quadrature gives {raw}"
        )
    result = WindingResult(raw=raw, count=count, distance=distance, phase_winding=winding)
    WINDING_LOG.append(result)
    return result


def _neighbor_gap(n: int, zeros: list[CriticalZero]) -> float:
    gamma = zeros[n - 1].ordinate
    prev = zeros[n - 2].ordinate if n >= 2 else 1.0
    gaps = [gamma - prev]
    if n < len(zeros):
        gaps.append(zeros[n].ordinate - gamma)
    return min(gaps)


def shrinking_circle_counts(
    n: int,
    zeros: list[CriticalZero],
    ev: XiEvaluator,
    quad_nodes: int = 12,
    max_steps: int = 12,
) -> tuple[int, list[int], int]:
    """Counts over circles of radius 1/j for j = j0, j0+1, ... until two
    consecutive values agree; returns (stable count, count sequence, j0).

    j0 keeps the radius below half the gap to the nearest other enumerated
    zero and below 0.2, so the circle stays clear both of neighbors and of
    any hypothetical off-line zero (|Re - 1/2| >= 1/4).
    """
    gamma = zeros[n - 1].ordinate
    gap = _neighbor_gap(n, zeros)
    j0 = max(5, math.floor(1.0 / (0.45 * gap)) + 1)
    counts = []
    for j in range(j0, j0 + max_steps):
        res = integrate_logderiv(
            CircleContour(center=complex(0.5, gamma), radius=1.0 / j, j=j),
            ev,
            quad_nodes,
        )
        if counts and res.count > counts[-1]:
            raise NonMonotoneCounts(
                f"circle count rose {counts[-1]} -> {res.count} at j = {j} "
                f"around index {n}; a nearby zero was missed, rescan"
            )
        counts.append(res.count)
        if len(counts) >= 2 and counts[-1] == counts[-2]:
            return counts[-1], counts, j0
    raise StabilizationFailure(
        f"circle counts {counts} did not stabilize around index {n}"
    )


def multiplicity(
    n: int,
    zeros: list[CriticalZero],
    ev: XiEvaluator,
    quad_nodes: int = 12,
) -> int:
    """Zero order l_n as the stabilized shrinking-circle winding count."""
    value, _, _ = shrinking_circle_counts(n, zeros, ev, quad_nodes)
    if value < 1:
        raise ContourError(
            f"stabilized circle count {value} at index {n} is not positive"
        )
    return value


def _ordinate(zeros: list[CriticalZero], k: int) -> float:
    """gamma_k with the synthetic origin gamma_0 = 1."""
    return 1.0 if k == 0 else zeros[k - 1].ordinate


def _safe_level(
    level: float,
    lo: float,
    hi: float,
    other_re: float,
    ev: XiEvaluator,
    samples: int = 33,
) -> float:
    """Move a horizontal contour level within (lo, hi) until the magnitude
    floor holds along it; downward first (matching the downward indentation
    convention), then upward.  Returns the adjusted level."""

    def ok(lv: float) -> bool:
        for x in np.linspace(0.0, other_re, samples):
            if ev.scaled_mag(complex(x, lv)) < ev.xi_floor:
                return False
        return True

    if ok(level):
        return level
    step = (hi - lo) / 16.0
    for k in range(1, 9):
        for cand in (level - k * step, level + k * step):
            if lo + step / 2 < cand < hi - step / 2 and ok(cand):
                return cand
    raise NoValidPerturbation(
        f"no safe horizontal level near {level} within ({lo}, {hi})"
    )


def build_rectangle(
    n: int,
    zeros: list[CriticalZero],
    ev: XiEvaluator,
) -> RectangleContour:
    """Unit-width rectangle between the midpoints delta_n and delta_{n+1}
    of consecutive ordinates (synthetic gamma_0 = 1 below the first zero),
    with horizontal levels perturbed off any near-zero of xi."""
    if n < 1 or n + 1 > len(zeros):
        raise ValueError(f"rectangle {n} needs enumerated indices up to {n + 1}")
    g_prev, g_n, g_next = (_ordinate(zeros, k) for k in (n - 1, n, n + 1))
    bottom = 0.5 * (g_n + g_prev)
    top = 0.5 * (g_next + g_n)
    rect = RectangleContour(bottom=bottom, top=top)
    try:
        adj_bottom = _safe_level(bottom, g_prev, g_n, rect.right_re, ev)
        adj_top = _safe_level(top, g_n, g_next, rect.right_re, ev)
    except NoValidPerturbation:
        # one escalation: an 8x smaller floor, then give up with diagnostics
        relaxed = XiEvaluator(ev.acc, ev.xi_floor / 8.0, ev.injected_zeros)
        adj_bottom = _safe_level(bottom, g_prev, g_n, rect.right_re, relaxed)
        adj_top = _safe_level(top, g_n, g_next, rect.right_re, relaxed)
    if adj_bottom != bottom:
        rect.perturbations.append(("bottom", bottom, adj_bottom))
        rect.bottom = adj_bottom
    if adj_top != top:
        rect.perturbations.append(("top", top, adj_top))
        rect.top = adj_top
    return rect


def rectangle_count(
    n: int,
    zeros: list[CriticalZero],
    ev: XiEvaluator,
    quad_nodes: int = 12,
) -> int:
    """M(n): all zeros of zeta, on or off the line, strictly between the
    rectangle's bottom and top levels, counted with multiplicity."""
    rect = build_rectangle(n, zeros, ev)
    return integrate_logderiv(rect, ev, quad_nodes).count


def count_strip(
    t_hi: float,
    ev: XiEvaluator,
    t_lo: float = 1.0,
    quad_nodes: int = 12,
) -> int:
    """Total zero count with multiplicity for ordinates in (t_lo, t_hi),
    over the full-strip rectangle [0,1] x [t_lo, t_hi].  The top level is
    perturbed within +-0.25 if it lands too close to a zero."""
    if t_hi <= t_lo:
        raise ValueError("t_hi must exceed t_lo")
    top = t_hi
    for k in range(11):
        cand = t_hi + (-1) ** k * 0.05 * ((k + 1) // 2)
        if all(
            ev.scaled_mag(complex(x, cand)) >= ev.xi_floor
            for x in np.linspace(0.0, 1.0, 33)
        ):
            top = cand
            break
    else:
        raise ContourTooCloseToZero(f"no safe top level within 0.25 of {t_hi}")
    rect = RectangleContour(bottom=t_lo, top=top)
    if top != t_hi:
        rect.perturbations.append(("top", t_hi, top))
    return integrate_logderiv(rect, ev, quad_nodes).count
