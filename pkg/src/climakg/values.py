"""Tagged property values stored on nodes and relationships.

Values are variant-strict: Text("5") is never equal to Int(5), and
Bool(True) is never equal to Int(1).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

RawValue = Union[str, int, float, bool, tuple]


class ValueKind(enum.Enum):
    TEXT = "text"
    INT = "int"
    REAL = "real"
    BOOL = "bool"
    TEXT_LIST = "text_list"


@dataclass(frozen=True)
class PropertyValue:
    kind: ValueKind
    value: RawValue

    @staticmethod
    def text(value: str) -> "PropertyValue":
        if not isinstance(value, str):
            raise TypeError(f"text value must be str, got {type(value).__name__}")
        return PropertyValue(ValueKind.TEXT, value)

    @staticmethod
    def integer(value: int) -> "PropertyValue":
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"integer value must be int, got {type(value).__name__}")
        return PropertyValue(ValueKind.INT, value)

    @staticmethod
    def real(value: float) -> "PropertyValue":
        return PropertyValue(ValueKind.REAL, float(value))

    @staticmethod
    def boolean(value: bool) -> "PropertyValue":
        if not isinstance(value, bool):
            raise TypeError(f"boolean value must be bool, got {type(value).__name__}")
        return PropertyValue(ValueKind.BOOL, value)

    @staticmethod
    def text_list(items) -> "PropertyValue":
        items = tuple(items)
        for item in items:
            if not isinstance(item, str):
                raise TypeError("text_list elements must all be str")
        return PropertyValue(ValueKind.TEXT_LIST, items)

    def to_json(self):
        """Native JSON representation (list for TEXT_LIST, scalar otherwise)."""
        if self.kind is ValueKind.TEXT_LIST:
            return list(self.value)
        return self.value

    @staticmethod
    def from_json(raw) -> "PropertyValue":
        """Map a JSON-decoded scalar or string list onto a tagged value."""
        if isinstance(raw, bool):
            return PropertyValue.boolean(raw)
        if isinstance(raw, int):
            return PropertyValue.integer(raw)
        if isinstance(raw, float):
            return PropertyValue.real(raw)
        if isinstance(raw, str):
            return PropertyValue.text(raw)
        if isinstance(raw, (list, tuple)):
            return PropertyValue.text_list(raw)
        raise ValueError(f"unsupported property value: {raw!r}")

    def __repr__(self) -> str:  # compact, used in error messages
        return f"{self.kind.value}({self.value!r})"
