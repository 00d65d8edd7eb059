"""
Real and imaginary periods of the Neron differential by the AGM.

Conventions: for disc > 0 the period lattice is [Omega+, i Omega-]; for
disc < 0 it is [Omega+, (Omega+ + i Omega-)/2]. Both periods are positive.
"""

from functools import lru_cache
from typing import Optional

from twistlab.apps.analytic.models import PeriodData
from twistlab.apps.curves.models import CurveModel
from twistlab.utils.config import setting
from twistlab.utils.logger import TwistLogger
from twistlab.utils.precision import working_context

logger = TwistLogger(__name__)


def two_division_roots(ctx, curve: CurveModel):
    """Roots of 4x^3 + b2 x^2 + 2 b4 x + b6 in ``ctx``; real ones first, descending."""
    inv = curve.invariants
    roots = ctx.polyroots([4, inv['b2'], 2 * inv['b4'], inv['b6']], maxsteps=200, extraprec=2 * ctx.prec)
    real = sorted((ctx.re(r) for r in roots if abs(ctx.im(r)) < ctx.mpf(10) ** (-ctx.dps // 2)), reverse=True)
    return real, roots


@lru_cache(maxsize=512)
def agm_periods(curve: CurveModel, precision: Optional[int] = None) -> PeriodData:
    dps = precision or setting('PRECISION')
    ctx = working_context(dps)
    real, roots = two_division_roots(ctx, curve)
    if curve.disc > 0:
        e1, e2, e3 = real
        omega_plus = ctx.pi / ctx.agm(ctx.sqrt(e1 - e3), ctx.sqrt(e1 - e2))
        omega_minus = ctx.pi / ctx.agm(ctx.sqrt(e1 - e3), ctx.sqrt(e2 - e3))
    else:
        inv = curve.invariants
        e1 = real[0]
        a = 3 * e1 + ctx.mpf(inv['b2']) / 4
        b = ctx.sqrt(3 * e1 * e1 + ctx.mpf(inv['b2']) / 2 * e1 + ctx.mpf(inv['b4']) / 2)
        omega_plus = 2 * ctx.pi / ctx.agm(2 * ctx.sqrt(b), ctx.sqrt(2 * b + a))
        omega_minus = 2 * ctx.pi / ctx.agm(2 * ctx.sqrt(b), ctx.sqrt(2 * b - a))
    data = PeriodData(omega_plus=omega_plus, omega_minus=omega_minus,
                      lattice_type=curve.lattice_type, precision=dps)
    logger.debug(f"{curve.name}: Omega+ = {ctx.nstr(data.omega_plus, 15)}, "
                 f"Omega- = {ctx.nstr(data.omega_minus, 15)}")
    return data


def least_real_period(curve: CurveModel, precision: Optional[int] = None):
    return agm_periods(curve, precision).omega_plus
