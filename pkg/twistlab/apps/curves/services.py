# Public operations of the curves app.

from ._services.weierstrass import minimalize, curve_from_label, parse_curve, conductor_from_model
from ._services.reduction import a_p, N_q, count_points, local_two_torsion_order, prime_class, count_qadic_roots
from ._services.two_division import two_division_data, is_inert_in_F
from ._services.twists import twist_model, make_twist, twisted_root_number
from ._services.torsion import torsion_order, torsion_points
