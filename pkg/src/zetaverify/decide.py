"""Per-rectangle verification records and the decision fold g(n).

g starts at 0 and, scanning rectangles in order, keeps its previous value
while the rectangle count M(n) matches the circle multiplicity l_n, and
jumps to n on a mismatch.  A nonzero value therefore names a rectangle
holding a zero the critical line cannot account for.  Numerical failure is
a third status, never conflated with a mismatch: "couldn't verify" and
"found a counterexample candidate" are different verdicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .contours import ContourError, multiplicity, rectangle_count
from .special import SpecialFunctionError, XiEvaluator
from .zeros import CriticalZero, enumerate_zeros

STATUS_OK = "ok"
STATUS_OFF_LINE = "off_line_suspected"
STATUS_FAILURE = "numerical_failure"

VERDICT_VERIFIED = "verified_in_range"
VERDICT_DISCREPANCY = "discrepancy_found"
VERDICT_INCOMPLETE = "incomplete"


class DeciderError(Exception):
    pass


class EnumerationTooShort(DeciderError):
    pass


class RunIncomplete(DeciderError):
    pass


@dataclass
class VerificationRecord:
    n: int
    M: int | None
    l: int | None
    g: int
    status: str
    diagnostics: list[str] = field(default_factory=list)


@dataclass
class VerificationRun:
    n_max: int
    records: list[VerificationRecord]
    verdict: str


def g_step(n: int, g_prev: int, M: int, l: int) -> int:
    """One step of the decision fold: g_prev while M = l, else n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return g_prev if M == l else n


def estimate_height_for_count(k: int) -> float:
    """Height T with roughly k zeros below it (zero-counting asymptotic),
    padded; used only to size the automatic enumeration."""
    t = 20.0
    while t * (math.log(t / (2 * math.pi)) - 1) / (2 * math.pi) + 0.875 < k + 2:
        t *= 1.3
    return t


def zeros_for_range(
    n_max: int,
    tol: float = 1e-9,
    oversample: int = 8,
    acc=None,
) -> list[CriticalZero]:
    """Enumerate at least n_max + 1 zeros (the top midpoint needs one past
    the range)."""
    from .special import DEFAULT_ACCURACY

    acc = acc or DEFAULT_ACCURACY
    t_max = estimate_height_for_count(n_max + 1)
    for _ in range(6):
        zs = enumerate_zeros(t_max, tol, oversample, acc)
        if len(zs) >= n_max + 1:
            return zs
        t_max *= 1.5
    raise EnumerationTooShort(
        f"could not enumerate {n_max + 1} zeros up to height {t_max}"
    )


def verify_range(
    n_max: int,
    zeros: list[CriticalZero] | None = None,
    ev: XiEvaluator | None = None,
    quad_nodes: int = 12,
) -> VerificationRun:
    """Rectangles 1..n_max: compute l_n, M(n), fold g, and render a verdict.

    verified_in_range iff every record is ok (equivalently g stays 0);
    any numerical failure makes the run incomplete rather than suspect.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    ev = ev or XiEvaluator()
    if n_max == 0:
        return VerificationRun(n_max=0, records=[], verdict=VERDICT_VERIFIED)
    if zeros is None:
        zeros = zeros_for_range(n_max)
    if len(zeros) < n_max + 1:
        raise EnumerationTooShort(
            f"need {n_max + 1} enumerated zeros, have {len(zeros)}"
        )
    records = []
    g = 0
    failed = False
    for n in range(1, n_max + 1):
        diags = []
        M = l = None
        try:
            l = multiplicity(n, zeros, ev, quad_nodes)
            zeros[n - 1].multiplicity = l
            M = rectangle_count(n, zeros, ev, quad_nodes)
        except (ContourError, SpecialFunctionError) as exc:
            diags.append(f"{type(exc).__name__}: {exc}")
            records.append(
                VerificationRecord(n=n, M=M, l=l, g=g, status=STATUS_FAILURE,
                                   diagnostics=diags)
            )
            failed = True
            continue
        g = g_step(n, g, M, l)
        status = STATUS_OK if M == l else STATUS_OFF_LINE
        if status == STATUS_OFF_LINE:
            diags.append(f"count mismatch: M({n}) = {M} but l_{n} = {l}")
        records.append(
            VerificationRecord(n=n, M=M, l=l, g=g, status=status,
                               diagnostics=diags)
        )
    if failed:
        verdict = VERDICT_INCOMPLETE
    elif all(r.status == STATUS_OK for r in records):
        verdict = VERDICT_VERIFIED
    else:
        verdict = VERDICT_DISCREPANCY
    return VerificationRun(n_max=n_max, records=records, verdict=verdict)


def off_line_index_set(run: VerificationRun) -> set[int]:
    """Nonzero values attained by g: the indices of suspect rectangles."""
    if any(r.status == STATUS_FAILURE for r in run.records):
        raise RunIncomplete("run has numerical failures; index set undefined")
    return {r.g for r in run.records} - {0}
