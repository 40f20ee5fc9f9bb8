"""Exact rationals, p-adic valuations and the Ostrowski family of absolute values.

Everything here is exact: rationals are :class:`fractions.Fraction` and the
archimedean absolute value of a rational is again a rational, so the product
formula is checked as an equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import factorint, isprime as _isprime

from .errors import InputError

Rat = Fraction


class _Infinity:
    """The archimedean place."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return "INF"


INF = _Infinity()

Place = Union[int, _Infinity]


def rat(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, (int, str)):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"not a rational: {x!r}")


def is_prime(n: int) -> bool:
    return isinstance(n, int) and n > 1 and bool(_isprime(n))


@lru_cache(maxsize=65536)
def factor_int(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``|n|`` as sorted ``(p, e)`` pairs."""
    if n == 0:
        raise InputError("cannot factor zero")
    return tuple(sorted(factorint(abs(n)).items()))


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factor_int(n))


def radical(n: int) -> int:
    r = 1
    for p in prime_divisors(n):
        r *= p
    return r


def primes_upto(bound: int) -> list[int]:
    return [p for p in range(2, bound + 1) if is_prime(p)]


def _check_prime(p) -> None:
    if not is_prime(p):
        raise InputError(f"{p!r} is not a prime")


def vp(p: int, x) -> int:
    """Exponent of ``p`` in the nonzero rational ``x``."""
    _check_prime(p)
    x = rat(x)
    if x == 0:
        raise InputError("valuation undefined at zero")
    e = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        e += 1
    while den % p == 0:
        den //= p
        e -= 1
    return e


def abs_at(place: Place, x) -> Fraction:
    """``|x|_p = p^(-v_p(x))`` at a prime, the usual absolute value at INF."""
    x = rat(x)
    if place is INF:
        return abs(x)
    _check_prime(place)
    if x == 0:
        return Fraction(0)
    return Fraction(place) ** (-vp(place, x))


@dataclass(frozen=True)
class ProductFormulaReport:
    x: Fraction
    factors: dict[int, Fraction]
    product: Fraction
    archimedean: Fraction

    @property
    def holds(self) -> bool:
        return self.product == 1 / self.archimedean


def product_formula_check(x) -> ProductFormulaReport:
    """Multiply ``|x|_p`` over the primes dividing numerator and denominator."""
    x = rat(x)
    if x == 0:
        raise InputError("product formula needs a nonzero rational")
    primes = sorted(set(prime_divisors(x.numerator)) | set(prime_divisors(x.denominator)))
    factors = {p: abs_at(p, x) for p in primes}
    product = Fraction(1)
    for f in factors.values():
        product *= f
    return ProductFormulaReport(x, factors, product, abs_at(INF, x))


def format_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
