"""Strictly increasing enumeration of critical-line zero ordinates.

Sign-change scanning of Z(t) at a fraction of the local mean zero gap,
followed by bisection refinement.  Scanning alone can miss close pairs or
even-order zeros; the contour cross-check in the decider is the
authoritative completeness detector, and enumerate_zeros additionally
rescans at doubled oversampling and refuses to return if the counts differ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .siegel import T_MIN, z_reference
from .special import DEFAULT_ACCURACY, EvalAccuracy


class EnumerationError(Exception):
    pass


class UnstableScan(EnumerationError):
    """Doubling the oversampling changed the zero count; raise the rate."""


class SignLost(EnumerationError):
    pass


class CapTooSmall(EnumerationError):
    pass


@dataclass(frozen=True)
class ZeroBracket:
    lo: float
    hi: float
    sign_lo: int
    sign_hi: int


@dataclass
class CriticalZero:
    index: int
    ordinate: float
    width: float
    multiplicity: int | None = None


def scan_step(t: float, oversample: int) -> float:
    """Mean zero gap 2pi/log(t/2pi) divided by the oversampling factor.

    Clamped to [1e-3, 1]; below t ~ 2pi the gap formula degenerates and the
    upper clamp takes over (the first zero is far above anyway).
    """
    denom = max(math.log(t / (2.0 * math.pi)), 0.5)
    return min(1.0, max(1e-3, 2.0 * math.pi / denom / oversample))


def _zsign(t: float, acc: EvalAccuracy, nudge: float = 1e-9) -> tuple[float, int]:
    v = z_reference(t, acc).value
    if v == 0.0:
        # landed exactly on a zero at float resolution; nudge off it
        v = z_reference(t + nudge, acc).value
        if v == 0.0:
            raise SignLost(f"Z vanishes at t = {t} and t = {t + nudge}")
    return v, (1 if v > 0 else -1)


def scan_brackets(
    t_lo: float,
    t_hi: float,
    oversample: int = 8,
    acc: EvalAccuracy = DEFAULT_ACCURACY,
) -> list[ZeroBracket]:
    """Sign-change brackets of Z on [t_lo, t_hi], in increasing order."""
    if not (T_MIN <= t_lo < t_hi):
        raise ValueError(f"need {T_MIN} <= t_lo < t_hi, got [{t_lo}, {t_hi}]")
    if oversample < 4:
        raise ValueError("oversample must be >= 4")
    brackets = []
    t = t_lo
    _, sign = _zsign(t, acc)
    while t < t_hi:
        t_next = min(t + scan_step(t, oversample), t_hi)
        _, sign_next = _zsign(t_next, acc)
        if sign_next != sign:
            brackets.append(
                ZeroBracket(lo=t, hi=t_next, sign_lo=sign, sign_hi=sign_next)
            )
        t, sign = t_next, sign_next
    return brackets


def refine_zero(
    bracket: ZeroBracket,
    tol: float = 1e-9,
    acc: EvalAccuracy = DEFAULT_ACCURACY,
) -> CriticalZero:
    """Bisect the bracket down to width <= tol; ordinate is the midpoint."""
    if tol < 1e-12:
        raise ValueError("tol must be >= 1e-12")
    lo, hi = bracket.lo, bracket.hi
    sign_lo = bracket.sign_lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        v = z_reference(mid, acc).value
        if v == 0.0:
            mid += tol / 10.0
            v = z_reference(mid, acc).value
            if v == 0.0:
                raise SignLost(f"Z vanishes at bracket midpoint {mid}")
        if (1 if v > 0 else -1) == sign_lo:
            lo = mid
        else:
            hi = mid
    return CriticalZero(index=0, ordinate=0.5 * (lo + hi), width=hi - lo)


def enumerate_zeros(
    t_max: float,
    tol: float = 1e-9,
    oversample: int = 8,
    acc: EvalAccuracy = DEFAULT_ACCURACY,
) -> list[CriticalZero]:
    """Zeros with ordinate in (T_MIN, t_max], indexed 1..k, strictly increasing."""
    if t_max <= T_MIN:
        raise ValueError(f"t_max must exceed {T_MIN}")
    brackets = scan_brackets(T_MIN, t_max, oversample, acc)
    recheck = scan_brackets(T_MIN, t_max, 2 * oversample, acc)
    if len(brackets) != len(recheck):
        raise UnstableScan(
            f"bracket count changed under oversample doubling "
            f"({len(brackets)} vs {len(recheck)}) on [{T_MIN}, {t_max}]"
        )
    zeros = []
    prev = None
    for i, b in enumerate(brackets, start=1):
        z = refine_zero(b, tol, acc)
        z.index = i
        if prev is not None and z.ordinate - prev <= 10.0 * tol:
            raise EnumerationError(
                f"ordinates not strictly increasing at index {i}: "
                f"{prev} -> {z.ordinate}"
            )
        prev = z.ordinate
        zeros.append(z)
    return zeros


def decide_interval(
    a: float,
    b: float,
    t_cap: float,
    tol: float = 1e-9,
    oversample: int = 8,
    acc: EvalAccuracy = DEFAULT_ACCURACY,
) -> bool:
    """Does some critical-line zero ordinate lie in [a, b]?

    Decided by enumerating in increasing order until the enumeration passes
    b; membership allows the final bracket width as slack on both ends.
    """
    if not (0 < a <= b):
        raise ValueError("need 0 < a <= b")
    if b > t_cap:
        raise CapTooSmall(f"b = {b} exceeds enumeration cap {t_cap}")
    hi = min(max(b + 1.0, T_MIN + 1.0), max(t_cap, T_MIN + 1.0))
    for z in enumerate_zeros(hi, tol, oversample, acc):
        if z.ordinate > b + z.width:
            break
        if z.ordinate >= a - z.width:
            return True
    return False
