"""
Persistent cache of modular symbol spaces and eigen data.

Entries live in the 'modsym' Django cache (file based, pickled values):

    modsym:v<FORMAT_VERSION>:space:<N>                ModSymSpace
    modsym:v<FORMAT_VERSION>:eigen:<N>:<a1,...,a6>:<pmax>  EigenData

Bumping FORMAT_VERSION orphans every older entry. An entry that fails to
load or has the wrong shape is discarded and rebuilt.
"""

from typing import Optional

from django.conf import settings
from django.core.cache import BaseCache, caches
from django.core.cache.backends.filebased import FileBasedCache

from twistlab.apps.curves.models import CurveModel
from twistlab.apps.modsym._services.hecke import hecke_eigen
from twistlab.apps.modsym._services.space import build_space
from twistlab.apps.modsym.models import EigenData, ModSymSpace
from twistlab.utils.config import setting
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)

FORMAT_VERSION = 1


def modsym_cache(cache_dir: Optional[str] = None) -> BaseCache:
    cache_dir = cache_dir or setting('CACHE_DIR')
    if str(cache_dir) == str(settings.CACHES['modsym']['LOCATION']):
        return caches['modsym']
    return FileBasedCache(cache_dir, {'TIMEOUT': None, 'OPTIONS': {'MAX_ENTRIES': 2000}})


def space_key(N: int) -> str:
    return f"modsym:v{FORMAT_VERSION}:space:{N}"


def eigen_key(N: int, curve: CurveModel, pmax: int) -> str:
    coeffs = ",".join(str(a) for a in curve.coefficients)
    return f"modsym:v{FORMAT_VERSION}:eigen:{N}:{coeffs}:{pmax}"


def _read(cache: BaseCache, key: str, expected: type):
    try:
        value = cache.get(key)
    except Exception as exc:
        logger.warning(f"unreadable cache entry {key}: {exc}; rebuilding")
        cache.delete(key)
        return None
    if value is not None and not isinstance(value, expected):
        logger.warning(f"cache entry {key} holds {type(value).__name__}; rebuilding")
        cache.delete(key)
        return None
    return value


def get_space(N: int, cache: Optional[BaseCache] = None) -> ModSymSpace:
    cache = cache or modsym_cache()
    key = space_key(N)
    space = _read(cache, key, ModSymSpace)
    if space is None:
        space = build_space(N)
        cache.set(key, space, None)
    return space


def get_eigen(curve: CurveModel, pmax: Optional[int] = None,
              cache: Optional[BaseCache] = None) -> EigenData:
    cache = cache or modsym_cache()
    pmax = pmax or setting('HECKE_PMAX')
    key = eigen_key(curve.conductor, curve, pmax)
    eig = _read(cache, key, EigenData)
    if eig is None:
        eig = hecke_eigen(get_space(curve.conductor, cache), curve, pmax)
        cache.set(key, eig, None)
    return eig
