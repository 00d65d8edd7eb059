# Public operations of the analytic app.

from ._services.periods import agm_periods, least_real_period
from ._services.lseries import lseries_numeric, an_table, period_integral, required_terms, tail_bound
from ._services.validation import cross_validate
