"""Real-valued Riemann-Siegel functions theta(t) and Z(t).

Two routes each, cross-checked against one another:

* theta_asymptotic / z_main_sum follow the classical asymptotic phase and
  the finite main sum with its O(t^(-1/4)) remainder;
* theta_exact / z_reference go through log Gamma and zeta directly and are
  the authoritative values used for zero refinement.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .special import DEFAULT_ACCURACY, EvalAccuracy, log_gamma, zeta

T_MIN = 2.0

# frozen calibration of the main-sum remainder |Z - main_sum| <= C * t^(-1/4)
Z_REMAINDER_CONST = 3.0


class SiegelError(Exception):
    pass


class DomainTooSmall(SiegelError):
    pass


class RealnessViolation(SiegelError):
    """e^{i theta} zeta(1/2+it) came out with a non-negligible imaginary part."""


@dataclass(frozen=True)
class ZEvaluation:
    t: float
    value: float
    err_bound: float


def theta_exact(t: float) -> float:
    """theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi, continuous branch."""
    if t <= 0:
        raise DomainTooSmall(f"theta_exact needs t > 0, got {t}")
    return log_gamma(0.25 + 0.5j * t).imag - 0.5 * t * math.log(math.pi)


def theta_asymptotic(t: float) -> float:
    """Asymptotic phase (t/2) log(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760 t^3).

    The two correction terms make this route usable from t ~ 10 up; below
    that, theta_exact is the one to trust.
    """
    if t < T_MIN:
        raise DomainTooSmall(f"theta_asymptotic needs t >= {T_MIN}, got {t}")
    return (
        0.5 * t * math.log(t / (2.0 * math.pi))
        - 0.5 * t
        - math.pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t ** 3)
    )


def z_reference(t: float, acc: EvalAccuracy = DEFAULT_ACCURACY) -> ZEvaluation:
    """Z(t) = Re(e^{i theta(t)} zeta(1/2 + it)); the rotated product must be real.

    A residual imaginary part above 1e-6 means the theta branch or the zeta
    accuracy is broken, and is raised rather than returned.
    """
    if t < T_MIN:
        raise DomainTooSmall(f"z_reference needs t >= {T_MIN}, got {t}")
    w = cmath.exp(1j * theta_exact(t)) * zeta(0.5 + 1j * t, acc)
    if abs(w.imag) > 1e-6:
        raise RealnessViolation(f"Im(e^(i theta) zeta) = {w.imag:.3e} at t = {t}")
    return ZEvaluation(t=t, value=w.real, err_bound=acc.abs_tol + abs(w.imag))


def z_main_sum(t: float) -> ZEvaluation:
    """Finite main sum 2 sum_{n <= sqrt(t/2pi)} cos(theta(t) - t log n)/sqrt(n).

    err_bound carries the calibrated remainder C * t^(-1/4).  An empty sum
    (t below 2*pi) yields value 0 with the bound still reported.
    """
    if t < T_MIN:
        raise DomainTooSmall(f"z_main_sum needs t >= {T_MIN}, got {t}")
    cut = int(math.sqrt(t / (2.0 * math.pi)))
    theta = theta_exact(t)
    total = 0.0
    for n in range(1, cut + 1):
        total += math.cos(theta - t * math.log(n)) / math.sqrt(n)
    return ZEvaluation(t=t, value=2.0 * total, err_bound=Z_REMAINDER_CONST * t ** -0.25)


def z_main_sum_terms(t: float) -> int:
    """Number of terms in the main sum, floor(sqrt(t/2pi))."""
    return int(math.sqrt(t / (2.0 * math.pi)))
