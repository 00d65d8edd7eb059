"""
Shared plumbing for the twistlab management commands: runtime config flags,
record output, and the exit code contract

    0  every conclusion verified
    2  some hypothesis unmet (skipped)
    3  a verified theorem's conclusion failed
    1  any other error
"""

import csv
from typing import Any, Dict, Iterable, List, Type

from django.core.management.base import BaseCommand, CommandError
from django.test.utils import override_settings
from rest_framework import serializers

from twistlab.apps.cli.models import EXIT_FAILURE, EXIT_VIOLATED, FORMATS
from twistlab.utils.config import RuntimeConfig
from twistlab.utils.exceptions import TheoremViolation, TwistLabError
from twistlab.utils.logger import TwistLogger
from twistlab.utils.serializers import render_line, validated

logger = TwistLogger(__name__)


class TwistLabCommand(BaseCommand):
    """Subclasses implement run(**options) and return an exit code."""

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        group = parser.add_argument_group('twistlab')
        group.add_argument('--config', help="key-value config file (overrides TWISTLAB_CONFIG)")
        group.add_argument('--cache-dir', help="modular symbols cache directory")
        group.add_argument('--precision', type=int, help="decimal digits for numeric work")
        group.add_argument('--parallelism', type=int, help="worker threads for scans")
        group.add_argument('--format', choices=FORMATS, default='json', help="record format")
        return parser

    def handle(self, *args, **options):
        config = RuntimeConfig(
            options.get('config'),
            cache_dir=options.get('cache_dir'),
            precision=options.get('precision'),
            parallelism=options.get('parallelism'),
        )
        self.config = config
        self.output = options.get('format', 'json')
        self._csv = None
        try:
            with override_settings(TWISTLAB=config.as_settings()):
                code = self.run(*args, **options)
        except TheoremViolation as exc:
            raise CommandError(f"theorem violated: {exc}", returncode=EXIT_VIOLATED)
        except TwistLabError as exc:
            logger.error(str(exc))
            raise CommandError(str(exc), returncode=EXIT_FAILURE)
        if code:
            raise CommandError(f"finished with exit code {code}", returncode=code)

    def run(self, *args, **options) -> int:
        raise NotImplementedError('subclasses of TwistLabCommand must provide a run() method')

    def emit(self, serializer_class: Type[serializers.Serializer], record: Dict[str, Any]) -> None:
        """Validate one record and write it as a JSON line or a CSV row."""
        if self.output == 'json':
            self.stdout.write(render_line(serializer_class, record))
            return
        row = {key: _flat(value) for key, value in validated(serializer_class, record).items()}
        if self._csv is None or self._csv.fieldnames != list(row):
            self._csv = csv.DictWriter(self.stdout, fieldnames=list(row), lineterminator='\n')
            self._csv.writeheader()
        self._csv.writerow(row)


def _flat(value: Any) -> Any:
    if isinstance(value, dict):
        return ";".join(f"{k}:{_flat(v)}" for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return " ".join(str(_flat(v)) for v in value)
    return value


def csv_rows(stdout, fieldnames: List[str], rows: Iterable[Dict[str, Any]]) -> None:
    writer = csv.DictWriter(stdout, fieldnames=fieldnames, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
