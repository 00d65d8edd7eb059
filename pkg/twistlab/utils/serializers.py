"""
Record serialization shared by the report-producing apps.

Records are plain dicts validated by a DRF serializer and rendered as one
JSON line each. Rationals travel as "num/den", infinite 2-adic orders as
"inf".
"""

import math
from fractions import Fraction
from typing import Any, Dict, Type

from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

SCHEMA_VERSION = 1


class RationalField(serializers.Field):
    def to_representation(self, value) -> str:
        value = Fraction(value)
        return f"{value.numerator}/{value.denominator}"

    def to_internal_value(self, data) -> str:
        try:
            value = Fraction(str(data))
        except (ValueError, ZeroDivisionError):
            raise serializers.ValidationError(f"not a rational: {data!r}")
        return f"{value.numerator}/{value.denominator}"


class OrdField(serializers.Field):
    def to_representation(self, value):
        return "inf" if value == math.inf or value == "inf" else int(value)

    def to_internal_value(self, data):
        if data == "inf" or data == math.inf:
            return "inf"
        try:
            return int(data)
        except (TypeError, ValueError):
            raise serializers.ValidationError(f"not an order: {data!r}")


class RecordSerializer(serializers.Serializer):
    schema_version = serializers.IntegerField(default=SCHEMA_VERSION)
    record = serializers.CharField()


def validated(serializer_class: Type[serializers.Serializer], data: Dict[str, Any]) -> Dict[str, Any]:
    """Run the record through its serializer and return the validated dict."""
    payload = {'schema_version': SCHEMA_VERSION, **data}
    serializer = serializer_class(data=payload)
    serializer.is_valid(raise_exception=True)
    return dict(serializer.validated_data)


def render_line(serializer_class: Type[serializers.Serializer], data: Dict[str, Any]) -> str:
    return JSONRenderer().render(validated(serializer_class, data)).decode('utf-8')
