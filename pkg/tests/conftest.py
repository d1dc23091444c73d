import numpy as np
import pytest

from zetaverify.siegel import z_reference
from zetaverify.special import EvalAccuracy, XiEvaluator
from zetaverify.zeros import enumerate_zeros

# tight settings for oracle work, independent of the defaults under test
ORACLE_ACC = EvalAccuracy(em_terms=200, em_order=10, abs_tol=1e-12)


def grid_sign_changes(t_lo, t_hi, step, acc=ORACLE_ACC):
    """Fine-grid sign-change intervals of Z; the scanning oracle."""
    ts = np.arange(t_lo, t_hi, step)
    vals = np.array([z_reference(float(t), acc).value for t in ts])
    sgn = np.sign(vals)
    idx = np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]
    return [(float(ts[i]), float(ts[i + 1])) for i in idx]


def grid_zero_ordinates(t_lo, t_hi, step, acc=ORACLE_ACC):
    """Zero ordinates by grid bracketing plus plain bisection."""
    roots = []
    for lo, hi in grid_sign_changes(t_lo, t_hi, step, acc):
        positive_lo = z_reference(lo, acc).value > 0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if (z_reference(mid, acc).value > 0) == positive_lo:
                lo = mid
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    return roots


@pytest.fixture(scope="session")
def oracle_zeros_30():
    """Grid-oracle ordinates on [2, 30] at step 1e-3."""
    return grid_zero_ordinates(2.0, 30.0, 1e-3)


@pytest.fixture(scope="session")
def oracle_zeros_100():
    """Grid-oracle ordinates on [2, 100]; min gap there is > 1, so 0.02 is safe."""
    return grid_zero_ordinates(2.0, 100.0, 0.02)


@pytest.fixture(scope="session")
def zeros_150():
    """One shared enumeration covering the first 51 zeros."""
    zs = enumerate_zeros(150.0, tol=1e-9)
    assert len(zs) >= 51
    return zs


@pytest.fixture(scope="session")
def evaluator():
    return XiEvaluator()
