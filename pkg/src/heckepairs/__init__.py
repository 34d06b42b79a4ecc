"""Quadratic Hecke characters, their L-functions and arithmetically equivalent pairs."""

from .quadfield import QuadField, QuadInt, make_field, is_principal, class_number
from .ideals import PrimePlace, IntegralIdeal, primes_above, factor_principal

__all__ = [
    "QuadField",
    "QuadInt",
    "make_field",
    "is_principal",
    "class_number",
    "PrimePlace",
    "IntegralIdeal",
    "primes_above",
    "factor_principal",
]
