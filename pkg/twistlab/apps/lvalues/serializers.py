from typing import Any, Dict

from rest_framework import serializers

from twistlab.apps.lvalues.models import AlgLValue, TwistReport
from twistlab.utils.arith import format_ord, format_rational
from twistlab.utils.serializers import OrdField, RationalField, RecordSerializer


class VerdictSerializer(serializers.Serializer):
    hypotheses_met = serializers.BooleanField()
    conclusion_holds = serializers.BooleanField(allow_null=True)
    status = serializers.ChoiceField(choices=['verified', 'violated', 'hypotheses-unmet'])
    expected = serializers.CharField()
    reasons = serializers.ListField(child=serializers.CharField(), required=False)


class TwistReportSerializer(RecordSerializer):
    curve = serializers.CharField()
    M = serializers.IntegerField()
    factorization = serializers.ListField(child=serializers.IntegerField(min_value=3))
    lalg = RationalField()
    ord2 = OrdField()
    root_number = serializers.ChoiceField(choices=[-1, 1])
    tamagawa_ord2 = serializers.IntegerField(min_value=0)
    S_prime = RationalField()
    S_chi = RationalField()
    half_range_sum = RationalField()
    verdicts = serializers.DictField(child=VerdictSerializer())

    def validate(self, attrs):
        if attrs['root_number'] == -1 and attrs['lalg'] != "0/1":
            raise serializers.ValidationError("root number -1 with a non-zero L-value")
        return attrs


class LValueSerializer(RecordSerializer):
    curve = serializers.CharField()
    lalg = RationalField()
    ord2 = OrdField()
    auxiliary_prime = serializers.IntegerField(allow_null=True)
    check = serializers.CharField(required=False, allow_blank=True)


def report_record(report: TwistReport) -> Dict[str, Any]:
    return {
        'record': 'twist',
        'curve': report.curve.name,
        'M': report.twist.M,
        'factorization': list(report.twist.primes),
        'lalg': format_rational(report.lalg.value),
        'ord2': format_ord(report.lalg.ord2),
        'root_number': report.root_number,
        'tamagawa_ord2': report.tamagawa_ord2,
        'S_prime': format_rational(report.sums.S_prime.x_plus),
        'S_chi': format_rational(report.sums.S_chi.x_plus if report.twist.M > 0 else report.sums.S_chi.x_minus),
        'half_range_sum': format_rational(report.half_range_sum),
        'verdicts': {
            tid: {
                'hypotheses_met': v.hypotheses_met,
                'conclusion_holds': v.conclusion_holds,
                'status': v.status,
                'expected': v.expected,
                'reasons': list(v.reasons),
            }
            for tid, v in report.theorem_verdicts.items()
        },
    }


def lvalue_record(label: str, value: AlgLValue, check: str = "") -> Dict[str, Any]:
    return {
        'record': 'lalg',
        'curve': label,
        'lalg': format_rational(value.value),
        'ord2': format_ord(value.ord2),
        'auxiliary_prime': value.auxiliary_prime,
        'check': check,
    }
