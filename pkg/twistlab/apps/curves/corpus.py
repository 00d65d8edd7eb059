"""
Bundled curve table (twistlab/apps/curves/data/curves.txt).

Columns: label, a1..a6, conductor, optimal flag, root number, and the
theorem families the curve illustrates ('-' for none).
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from twistlab.utils.exceptions import CurveNotFoundError

CORPUS_PATH = Path(__file__).resolve().parent / 'data' / 'curves.txt'

ALIASES = {
    'x0(11)': '11a1',
    'x0(17)': '17a1',
    'x0(21)': '21a1',
}


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    coefficients: Tuple[int, int, int, int, int]
    conductor: int
    optimal: bool
    root_number: int
    families: Tuple[str, ...]


@lru_cache(maxsize=1)
def _load() -> Dict[str, CorpusEntry]:
    entries = {}
    for line in CORPUS_PATH.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split()
        label = parts[0].lower()
        families = () if parts[9] == '-' else tuple(parts[9].split(','))
        entries[label] = CorpusEntry(
            label=label,
            coefficients=tuple(int(a) for a in parts[1:6]),
            conductor=int(parts[6]),
            optimal=parts[7] == '1',
            root_number=int(parts[8]),
            families=families,
        )
    return entries


def normalize_label(label: str) -> str:
    key = label.strip().lower()
    key = ALIASES.get(key, key)
    if re.fullmatch(r'\d+[a-z]+', key):
        key += '1'
    return key


def lookup(label: str) -> CorpusEntry:
    key = normalize_label(label)
    try:
        return _load()[key]
    except KeyError:
        raise CurveNotFoundError(f"unknown curve label '{label}'") from None


def by_coefficients(coefficients: Tuple[int, ...]) -> Optional[CorpusEntry]:
    for entry in _load().values():
        if entry.coefficients == tuple(coefficients):
            return entry
    return None


def family(theorem_id: str) -> List[CorpusEntry]:
    return [entry for entry in _load().values() if theorem_id in entry.families]


def all_entries() -> List[CorpusEntry]:
    return list(_load().values())
