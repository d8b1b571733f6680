"""
Valuations étendues : un entier naturel ou TOP.

TOP représente la valuation d'un élément nul à la précision de travail. Il
est strictement plus grand que tout entier et absorbe l'addition. Les
entiers restent des `int` Python ordinaires, ce qui garde les comparaisons
mixtes (int, Fraction, TOP) bien définies.
"""
from fractions import Fraction
from typing import Iterable, Union


class _Top:
    """Valeur TOP (singleton)."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TOP"

    __str__ = __repr__

    def __reduce__(self):
        return (_Top, ())

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("TOP")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if other == 0:
            raise ValueError("TOP·0 n'est pas défini")
        return self

    __rmul__ = __mul__


TOP = _Top()

ExtVal = Union[int, _Top]
Number = Union[int, Fraction, _Top]


def is_top(value) -> bool:
    return value is TOP


def ext_min(values: Iterable[ExtVal]) -> ExtVal:
    """Minimum d'une famille de valuations ; TOP si la famille est vide."""
    result: ExtVal = TOP
    for value in values:
        if value < result:
            result = value
    return result


def ext_to_json(value: Number):
    if value is TOP:
        return "TOP"
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    return int(value)


def ext_from_json(raw) -> ExtVal:
    if raw == "TOP":
        return TOP
    return int(raw)


def cap(value: ExtVal, bound: int) -> int:
    """Remplace TOP (et toute valeur au-delà) par `bound`."""
    return bound if value is TOP or value > bound else int(value)
