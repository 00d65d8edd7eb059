"""
Runtime configuration.

Values come from, in order of precedence: an explicit command flag, the
optional key-value config file, then ``settings.TWISTLAB``.
"""

from pathlib import Path
from typing import Any, Dict, Optional

from django.conf import settings
from dotenv import dotenv_values

from twistlab.utils.exceptions import PreconditionError

CASTS = {
    'cache_dir': str,
    'precision': int,
    'parallelism': int,
    'hecke_pmax': int,
    'max_level': int,
    'point_count_bound': int,
    'bridge_tolerance': float,
    'numeric_tolerance': float,
}


def load_config_file(path: Optional[str]) -> Dict[str, Any]:
    if not path:
        return {}
    if not Path(path).is_file():
        raise PreconditionError(f"config file not found: {path}")
    values = {}
    for key, raw in dotenv_values(path).items():
        name = key.strip().lower()
        if name not in CASTS:
            raise PreconditionError(f"unknown config key '{key}' in {path}")
        try:
            values[name] = CASTS[name](raw)
        except (TypeError, ValueError) as exc:
            raise PreconditionError(f"bad value for '{key}' in {path}: {raw!r}") from exc
    return values


class RuntimeConfig:
    def __init__(self, config_file: Optional[str] = None, **flags: Any) -> None:
        path = config_file or settings.TWISTLAB.get('CONFIG_FILE')
        self._file = load_config_file(path)
        self._flags = {k: v for k, v in flags.items() if v is not None}

    def get(self, name: str) -> Any:
        if name in self._flags:
            return self._flags[name]
        if name in self._file:
            return self._file[name]
        return settings.TWISTLAB[name.upper()]

    @property
    def cache_dir(self) -> str:
        return self.get('cache_dir')

    @property
    def precision(self) -> int:
        return self.get('precision')

    @property
    def parallelism(self) -> int:
        return max(1, self.get('parallelism'))

    @property
    def hecke_pmax(self) -> int:
        return self.get('hecke_pmax')

    def as_settings(self) -> Dict[str, Any]:
        """settings.TWISTLAB with the file and flag values folded in."""
        resolved = dict(settings.TWISTLAB)
        for name in CASTS:
            resolved[name.upper()] = self.get(name)
        resolved['PARALLELISM'] = self.parallelism
        return resolved


def setting(name: str) -> Any:
    """Shortcut for services that only need the settings layer."""
    return settings.TWISTLAB[name.upper()]
