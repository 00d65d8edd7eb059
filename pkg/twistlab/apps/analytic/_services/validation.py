from typing import Optional

from twistlab.apps.analytic._services.lseries import lseries_numeric
from twistlab.apps.analytic._services.periods import agm_periods
from twistlab.apps.analytic.models import CrossValidation
from twistlab.apps.curves.models import CurveModel
from twistlab.apps.curves.services import make_twist, twist_model
from twistlab.utils.logger import TwistLogger
from twistlab.utils.precision import working_context

logger = TwistLogger(__name__)

ZERO_FLOOR = 1e-12


def cross_validate(curve: CurveModel, M: Optional[int] = None, tolerance: float = 1e-6) -> CrossValidation:
    """Compare exact L^alg times the least real period against the series value."""
    # lvalues depends on this app for periods
    from twistlab.apps.lvalues.services import lalg, lalg_twist

    if M is None:
        target = curve
        exact = lalg(curve).value
    else:
        target = twist_model(curve, M)
        exact = lalg_twist(curve, make_twist(curve, M)).value
    periods = agm_periods(target)
    ctx = working_context(periods.precision)
    exact_value = ctx.mpf(exact.numerator) / exact.denominator * ctx.mpf(periods.omega_plus)
    if target.root_number == -1:
        numeric = ctx.mpf(0)
    else:
        numeric = ctx.mpf(lseries_numeric(target, precision=periods.precision).value)
    if abs(numeric) < ZERO_FLOOR and abs(exact_value) < ZERO_FLOOR:
        discrepancy = 0.0
    else:
        discrepancy = float(abs(exact_value - numeric) / max(abs(numeric), ctx.mpf(ZERO_FLOOR)))
    result = CrossValidation(
        label=curve.name, M=M, exact=exact_value, numeric=numeric,
        discrepancy=discrepancy, tolerance=tolerance, passed=discrepancy < tolerance,
    )
    if result.passed:
        logger.debug(str(result))
    else:
        logger.error(str(result))
    return result
