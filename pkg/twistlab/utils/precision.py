"""
Per-call mpmath contexts.

mpmath keeps its working precision on the global ``mp`` object, and
``workdps``, ``polyroots`` and most special functions change it while they
run. Scans evaluate curves on several threads at once, so numeric code never
touches ``mp`` directly: each computation builds its own context here and
keeps it to itself.
"""

from typing import Optional

from mpmath.ctx_mp import MPContext

from twistlab.utils.config import setting


def working_context(precision: Optional[int] = None):
    """A fresh mpmath context at ``precision`` decimal digits (default PRECISION)."""
    ctx = MPContext()
    ctx.dps = precision or setting('PRECISION')
    return ctx
