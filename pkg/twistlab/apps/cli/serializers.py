from typing import Any, Dict, Optional

from rest_framework import serializers

from twistlab.apps.cli.models import ScanSummary
from twistlab.apps.curves.models import CurveModel, TwoDivisionData
from twistlab.apps.lvalues.models import AlgLValue
from twistlab.utils.arith import format_ord, format_rational
from twistlab.utils.serializers import OrdField, RationalField, RecordSerializer


class CurveInfoSerializer(RecordSerializer):
    curve = serializers.CharField()
    coefficients = serializers.ListField(child=serializers.IntegerField(), min_length=5, max_length=5)
    disc = serializers.IntegerField()
    conductor = serializers.IntegerField(min_value=1)
    root_number = serializers.ChoiceField(choices=[-1, 1], allow_null=True)
    torsion_order = serializers.IntegerField(min_value=1)
    two_division_cubic = serializers.ListField(child=serializers.IntegerField(), min_length=4, max_length=4)
    two_division_irreducible = serializers.BooleanField()
    field_disc = serializers.IntegerField(allow_null=True)
    lalg = RationalField(allow_null=True)
    ord2 = OrdField(allow_null=True)
    an = serializers.ListField(child=serializers.IntegerField(), required=False)


class ScanSummarySerializer(RecordSerializer):
    theorem_id = serializers.CharField()
    curves = serializers.ListField(child=serializers.CharField())
    total = serializers.IntegerField(min_value=0)
    hypotheses_met = serializers.IntegerField(min_value=0)
    conclusions_held = serializers.IntegerField(min_value=0)
    violations = serializers.ListField(child=serializers.CharField())
    exit_code = serializers.IntegerField()

    def validate(self, attrs):
        if not attrs['conclusions_held'] <= attrs['hypotheses_met'] <= attrs['total']:
            raise serializers.ValidationError("summary counts are not nested")
        return attrs


class PrimeListSerializer(RecordSerializer):
    curve = serializers.CharField()
    predicate = serializers.CharField()
    bound = serializers.IntegerField(min_value=2)
    primes = serializers.ListField(child=serializers.IntegerField(min_value=3))


def curve_info_record(curve: CurveModel, torsion: int, two_division: TwoDivisionData,
                      value: Optional[AlgLValue], an: Optional[tuple] = None) -> Dict[str, Any]:
    record = {
        'record': 'info',
        'curve': curve.name,
        'coefficients': list(curve.coefficients),
        'disc': curve.disc,
        'conductor': curve.conductor,
        'root_number': curve.root_number,
        'torsion_order': torsion,
        'two_division_cubic': list(two_division.cubic),
        'two_division_irreducible': two_division.is_irreducible,
        'field_disc': two_division.field_disc,
        'lalg': format_rational(value.value) if value is not None else None,
        'ord2': format_ord(value.ord2) if value is not None else None,
    }
    if an is not None:
        record['an'] = list(an[1:])
    return record


def summary_record(summary: ScanSummary) -> Dict[str, Any]:
    return {
        'record': 'summary',
        'theorem_id': summary.theorem_id,
        'curves': list(summary.curves),
        'total': summary.total,
        'hypotheses_met': summary.hypotheses_met,
        'conclusions_held': summary.conclusions_held,
        'violations': list(summary.violations),
        'exit_code': summary.exit_code,
    }
