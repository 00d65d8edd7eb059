# Public operations of the descent app.

from ._services.neumann_setzer import (
    ns_curves, ns_parameters, splits_in_Qp, classify_twist, on_curve, isogeny_apply, add_points,
    search_points,
)
from ._services.local import is_square_in_Qv, homogeneous_quartic, places, local_points_oracle, soluble_everywhere
from ._services.selmer import (
    q2m_generators, q2m_elements, selmer_phi, selmer_phihat, selmer_by_oracle, is_group, root_number_ns,
    selmer2,
)
from ._services.bsd import (
    tamagawa_ns, aq_ns, qualifying_primes, lalg_denominator_check, verify_thm_A, conjecture_scan,
)
