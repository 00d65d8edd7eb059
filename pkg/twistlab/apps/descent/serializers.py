import dataclasses
from typing import Any, Dict

from rest_framework import serializers

from twistlab.apps.descent.models import KINDS, AqVerdict, BSDLedger, ConjectureRow, DenominatorCheck, SelmerDescriptor
from twistlab.utils.arith import format_ord, format_rational
from twistlab.utils.serializers import OrdField, RationalField, RecordSerializer


def _power_of_two(value: int) -> None:
    if value < 1 or value & (value - 1):
        raise serializers.ValidationError(f"{value} is not a power of 2")


class SelmerDescriptorSerializer(RecordSerializer):
    p = serializers.IntegerField()
    M = serializers.IntegerField()
    kind = serializers.ChoiceField(choices=list(KINDS))
    elements = serializers.ListField(child=serializers.IntegerField())
    order = serializers.IntegerField(allow_null=True, validators=[_power_of_two])
    bounds = serializers.ListField(child=serializers.IntegerField(validators=[_power_of_two]),
                                   min_length=2, max_length=2)

    def validate(self, attrs):
        low, high = attrs['bounds']
        if low > high:
            raise serializers.ValidationError(f"bounds {low} > {high}")
        if attrs['order'] is not None and not low <= attrs['order'] <= high:
            raise serializers.ValidationError(f"order {attrs['order']} outside [{low}, {high}]")
        return attrs


class BSDLedgerSerializer(RecordSerializer):
    p = serializers.IntegerField()
    M = serializers.IntegerField()
    lalg_ord2 = serializers.IntegerField()
    tamagawa = serializers.DictField(child=serializers.IntegerField(min_value=1))
    tamagawa_ord2_total = serializers.IntegerField(min_value=0)
    torsion_order = serializers.IntegerField(min_value=1)
    sha2_prediction = serializers.IntegerField()
    descent_sha2 = serializers.IntegerField(allow_null=True)
    rank_zero = serializers.BooleanField()
    passed = serializers.BooleanField()
    cited = serializers.ListField(child=serializers.CharField())


class ConjectureRowSerializer(RecordSerializer):
    p = serializers.IntegerField()
    r = serializers.IntegerField(min_value=1)
    M = serializers.IntegerField()
    primes = serializers.ListField(child=serializers.IntegerField(min_value=3))
    ord2_S_chi = OrdField()
    ord2_S_prime = OrdField()
    ord2_lalg = OrdField()
    hypothesis = serializers.BooleanField()
    conclusion = serializers.BooleanField()


def selmer_record(p: int, descriptor: SelmerDescriptor) -> Dict[str, Any]:
    return {
        'record': 'selmer',
        'p': p,
        'M': descriptor.M,
        'kind': descriptor.kind,
        'elements': list(descriptor.elements),
        'order': descriptor.order,
        'bounds': list(descriptor.bounds),
    }


def ledger_record(ledger: BSDLedger) -> Dict[str, Any]:
    return {
        'record': 'bsd',
        'p': ledger.p,
        'M': ledger.M,
        'lalg_ord2': ledger.lalg_ord2,
        # JSON object keys are strings
        'tamagawa': {str(q): c for q, c in sorted(ledger.tamagawa.items())},
        'tamagawa_ord2_total': ledger.tamagawa_ord2_total,
        'torsion_order': ledger.torsion_order,
        'sha2_prediction': ledger.sha2_prediction,
        'descent_sha2': ledger.descent_sha2,
        'rank_zero': ledger.rank_zero,
        'passed': ledger.passed,
        'cited': list(ledger.cited),
    }


def conjecture_record(p: int, r: int, row: ConjectureRow) -> Dict[str, Any]:
    return {
        'record': 'conjecture',
        'p': p,
        'r': r,
        'M': row.M,
        'primes': list(row.primes),
        'ord2_S_chi': format_ord(row.ord2_S_chi),
        'ord2_S_prime': format_ord(row.ord2_S_prime),
        'ord2_lalg': format_ord(row.ord2_lalg),
        'hypothesis': row.hypothesis,
        'conclusion': row.conclusion,
    }


class AqVerdictSerializer(RecordSerializer):
    p = serializers.IntegerField()
    q = serializers.IntegerField(min_value=2)
    a_q = serializers.IntegerField()
    predicted = serializers.CharField()
    holds = serializers.BooleanField()


class DenominatorCheckSerializer(RecordSerializer):
    p = serializers.IntegerField()
    lalg = RationalField()
    a_2 = serializers.IntegerField()
    x_plus_half = RationalField()
    x_minus_half = RationalField()
    passed = serializers.BooleanField()


def aq_record(verdict: AqVerdict) -> Dict[str, Any]:
    return {'record': 'aq', **dataclasses.asdict(verdict)}


def denominator_record(check: DenominatorCheck) -> Dict[str, Any]:
    return {
        'record': 'denominator',
        'p': check.p,
        'lalg': format_rational(check.lalg),
        'a_2': check.a_2,
        'x_plus_half': format_rational(check.x_plus_half),
        'x_minus_half': format_rational(check.x_minus_half),
        'passed': check.passed,
    }
