"""Strip evaluation of zeta, log-gamma, digamma, the completed function xi,
and the logarithmic derivative xi'/xi.

The analytic-continuation engine is Euler-Maclaurin summation, which is
uniformly accurate on and off the critical line for 0 <= Re(s) <= 1 at the
heights this tool targets (|Im s| up to a few hundred).  zeta'(s) is obtained
by term-by-term differentiation of the same sum, never by numerical
differencing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import digamma as _scipy_digamma
from scipy.special import loggamma as _scipy_loggamma

LOG_PI = math.log(math.pi)
EULER_GAMMA = 0.5772156649015329
# first generalized Stieltjes constant, for the (s-1)*zeta(s) expansion at s=1
_STIELTJES_1 = -0.07281584548367673

# B_{2k} for k = 1..13; index 0 unused
_BERNOULLI_2K = [
    None,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
]


class SpecialFunctionError(Exception):
    """Base class for strip-evaluation failures."""


class PoleAt1(SpecialFunctionError):
    pass


class RegionUnsupported(SpecialFunctionError):
    pass


class AccuracyNotMet(SpecialFunctionError):
    pass


class PoleAtNonPositiveInteger(SpecialFunctionError):
    pass


class NearZeroOfXi(SpecialFunctionError):
    """The evaluation point is too close to a zero of xi for xi'/xi."""


@dataclass(frozen=True)
class EvalAccuracy:
    """Truncation policy for the Euler-Maclaurin sum.

    em_terms is a lower bound on the cutoff N; the effective cutoff also
    scales with |Im s| so accuracy stays uniform in height.
    """

    em_terms: int = 50
    em_order: int = 8
    abs_tol: float = 1e-10

    def __post_init__(self):
        if self.em_terms < 10:
            raise ValueError("em_terms must be >= 10")
        if not 0 <= self.em_order <= 12:
            raise ValueError("em_order must be in [0, 12]")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")

    def cutoff(self, s: complex) -> int:
        return max(self.em_terms, math.ceil(2.0 * abs(s.imag)))

    def tightened(self) -> "EvalAccuracy":
        return EvalAccuracy(
            em_terms=2 * self.em_terms,
            em_order=min(self.em_order + 2, 12),
            abs_tol=self.abs_tol,
        )


DEFAULT_ACCURACY = EvalAccuracy()


def _check_finite(z: complex, what: str) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise SpecialFunctionError(f"non-finite value escaping {what}: {z!r}")
    return z


def _em_zeta_raw(s: complex, n_cut: int, order: int):
    """One Euler-Maclaurin pass: returns (zeta, zeta', error estimate)."""
    n = np.arange(1, n_cut, dtype=float)
    logn = np.log(n)
    terms = np.exp(-s * logn)
    val = terms.sum()
    dval = -(logn * terms).sum()

    log_nc = math.log(n_cut)
    nc_pow = cmath.exp(-s * log_nc)  # N^{-s}
    sm1 = s - 1.0
    tail = n_cut * nc_pow / sm1  # N^{1-s}/(s-1)
    val += tail + 0.5 * nc_pow
    dval += tail * (-log_nc - 1.0 / sm1) - 0.5 * log_nc * nc_pow

    # Bernoulli corrections: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k}
    rising = s
    drising = 1.0 + 0j  # d/ds of the rising factorial, by the product rule
    fact = 2.0
    scale = nc_pow / n_cut  # N^{-s-1}
    nc2 = 1.0 / (n_cut * n_cut)
    err = 0.0
    for k in range(1, order + 2):
        coef = _BERNOULLI_2K[k] / fact
        term = coef * rising * scale
        if k <= order:
            val += term
            dval += coef * scale * (drising - log_nc * rising)
        else:
            err = abs(term)
            break
        a = s + (2 * k - 1)
        b = s + 2 * k
        drising = drising * a * b + rising * (a + b)
        rising *= a * b
        fact *= (2 * k + 1) * (2 * k + 2)
        scale *= nc2
    return val, dval, err


def zeta_with_deriv(s: complex, acc: EvalAccuracy = DEFAULT_ACCURACY):
    """(zeta(s), zeta'(s)) by Euler-Maclaurin, for Re(s) > -1, s != 1.

    Escalates the cutoff a few times if the internal truncation estimate
    misses abs_tol, then raises AccuracyNotMet.
    """
    s = complex(s)
    if abs(s - 1.0) < 1e-12:
        raise PoleAt1(f"zeta pole at s = 1 (got {s})")
    if s.real <= -1.0:
        raise RegionUnsupported(f"Re(s) = {s.real} <= -1 not supported")
    n_cut = acc.cutoff(s)
    for _ in range(4):
        val, dval, err = _em_zeta_raw(s, n_cut, acc.em_order)
        if err <= acc.abs_tol:
            return _check_finite(val, "zeta"), _check_finite(dval, "zeta'"), err
        n_cut *= 2
    raise AccuracyNotMet(
        f"zeta truncation estimate {err:.3e} > abs_tol {acc.abs_tol:.3e} at s={s}"
    )


def zeta(s: complex, acc: EvalAccuracy = DEFAULT_ACCURACY) -> complex:
    """zeta(s) for Re(s) > -1, s != 1."""
    return zeta_with_deriv(s, acc)[0]


def _is_nonpositive_integer(s: complex) -> bool:
    return (
        abs(s.imag) < 1e-12
        and s.real <= 1e-12
        and abs(s.real - round(s.real)) < 1e-12
    )


def log_gamma(s: complex) -> complex:
    """Principal-branch log Gamma (continuous off the negative real axis)."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleAtNonPositiveInteger(f"log_gamma pole at s = {s}")
    return _check_finite(complex(_scipy_loggamma(s)), "log_gamma")


def digamma(s: complex) -> complex:
    """psi(s) = Gamma'(s)/Gamma(s)."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleAtNonPositiveInteger(f"digamma pole at s = {s}")
    return _check_finite(complex(_scipy_digamma(s)), "digamma")


def _sm1_zeta(s: complex, acc: EvalAccuracy) -> complex:
    """(s-1)*zeta(s), limit-safe at s = 1."""
    if abs(s - 1.0) < 1e-6:
        u = s - 1.0
        return 1.0 + EULER_GAMMA * u - _STIELTJES_1 * u * u
    return (s - 1.0) * zeta(s, acc)


def xi(s: complex, acc: EvalAccuracy = DEFAULT_ACCURACY) -> complex:
    """Completed function 0.5*s*(s-1)*pi^(-s/2)*Gamma(s/2)*zeta(s).

    Entire; the zeta pole at s = 1 is cancelled via a limit-safe
    (s-1)*zeta(s) product.  The Gamma pole at s = 0 is handled by the
    s <-> 1-s symmetry (only within 1e-6 of that single point).
    """
    s = complex(s)
    if abs(s) < 1e-6:
        s = 1.0 - s
    pref = 0.5 * s * cmath.exp(log_gamma(0.5 * s) - 0.5 * s * LOG_PI)
    return _check_finite(pref * _sm1_zeta(s, acc), "xi")


def log_xi(s: complex, acc: EvalAccuracy = DEFAULT_ACCURACY) -> complex:
    """A branch of log xi(s), exact up to a multiple of 2*pi*i per point.

    Kept in log form because |xi| underflows any fixed absolute scale as
    Im(s) grows (the Gamma factor decays like exp(-pi*t/4)); phase tracking
    and magnitude guards both work on this representation.
    """
    s = complex(s)
    if abs(s) < 1e-6:
        s = 1.0 - s
    return (
        math.log(0.5)
        + cmath.log(s)
        + log_gamma(0.5 * s)
        - 0.5 * s * LOG_PI
        + cmath.log(_sm1_zeta(s, acc))
    )


def xi_scaled_mag(s: complex, acc: EvalAccuracy = DEFAULT_ACCURACY) -> float:
    """|xi(s)| divided by its zero-free Gamma/pi/polynomial envelope.

    Equals |zeta(s)| away from s = 1 (and the cancellation-corrected
    product near it), so a fixed floor on this quantity detects proximity
    to nontrivial zeros uniformly in height.
    """
    return abs(_sm1_zeta(complex(s), acc) / (complex(s) - 1.0)) if abs(
        complex(s) - 1.0
    ) >= 1e-6 else abs(_sm1_zeta(complex(s), acc)) * 1e6


def xi_logderiv(
    s: complex,
    acc: EvalAccuracy = DEFAULT_ACCURACY,
    floor: float = 1e-8,
) -> complex:
    """xi'(s)/xi(s) = 1/s + 1/(s-1) - log(pi)/2 + psi(s/2)/2 + zeta'(s)/zeta(s).

    Raises NearZeroOfXi when the scaled magnitude drops below `floor`,
    which signals that a contour must be indented away from this point.
    """
    s = complex(s)
    z, dz, _ = zeta_with_deriv(s, acc)
    if xi_scaled_mag(s, acc) < floor:
        raise NearZeroOfXi(f"|xi| (scaled) below floor {floor:g} at s = {s}")
    return (
        1.0 / s
        + 1.0 / (s - 1.0)
        - 0.5 * LOG_PI
        + 0.5 * digamma(0.5 * s)
        + dz / z
    )


class XiEvaluator:
    """xi evaluation context for contour work.

    Bundles the accuracy policy, the magnitude floor, and an optional list
    of synthetic planted zeros (a test fixture: each rho multiplies xi by
    (s - rho), so the contour machinery sees one extra zero per rho).
    """

    def __init__(self, acc: EvalAccuracy | None = None, xi_floor: float = 1e-8,
                 injected_zeros=()):
        self.acc = acc if acc is not None else DEFAULT_ACCURACY
        self.xi_floor = xi_floor
        self.injected_zeros = tuple(complex(r) for r in injected_zeros)

    def xi(self, s: complex) -> complex:
        v = xi(s, self.acc)
        for rho in self.injected_zeros:
            v *= s - rho
        return v

    def log_xi(self, s: complex) -> complex:
        w = log_xi(s, self.acc)
        for rho in self.injected_zeros:
            w += cmath.log(s - rho)
        return w

    def logderiv(self, s: complex) -> complex:
        v = xi_logderiv(s, self.acc, floor=self.xi_floor)
        for rho in self.injected_zeros:
            v += 1.0 / (s - rho)
        return v

    def scaled_mag(self, s: complex) -> float:
        m = xi_scaled_mag(s, self.acc)
        for rho in self.injected_zeros:
            m *= abs(s - rho)
        return m
