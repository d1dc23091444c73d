"""Critical-line zero enumeration and argument-principle verification for
the Riemann zeta function, at double-precision desk scale."""

from .config import RunConfig
from .contours import (
    CircleContour,
    RectangleContour,
    WindingResult,
    count_strip,
    integrate_logderiv,
    multiplicity,
    rectangle_count,
)
from .decide import VerificationRecord, VerificationRun, g_step, off_line_index_set, verify_range
from .siegel import theta_asymptotic, theta_exact, z_main_sum, z_reference
from .special import EvalAccuracy, XiEvaluator, digamma, log_gamma, xi, xi_logderiv, zeta
from .zeros import CriticalZero, ZeroBracket, decide_interval, enumerate_zeros, refine_zero, scan_brackets

__version__ = "0.1.0"
