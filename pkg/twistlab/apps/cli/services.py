# Public operations of the cli app.

from ._services.primes import parse_predicate, prime_list
from ._services.scan import scan_curves, family_moduli, run_scan, summarize
from ._services.command import TwistLabCommand, csv_rows
