# Public operations of the modsym app.

from ._services.p1 import P1Normalizer, p1_count
from ._services.space import build_space, genus_x0, cusp_count, cusps_equivalent, boundary_of, vector_of
from ._services.hecke import hecke_eigen, hecke_matrix, star_matrix, heilbronn, integral_cycles
from ._services.symbols import symbol, period_pair, manin_path, path_symbols
from .cache import get_space, get_eigen, modsym_cache
