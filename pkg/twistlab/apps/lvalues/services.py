# Public operations of the lvalues app.

from ._services.central import (
    lalg, lalg_twist, sum_triple, period_bridge, chi_sum, half_range_sum, hecke_relation_sum,
    modular_data, x_pair, signed_modulus,
)
from ._services.theorems import (
    verify_theorem, check_lemma, root_number_twist, tamagawa_ord2_twist, twist_report,
    identity_holds, THEOREM_IDS, LEMMA_IDS,
)
