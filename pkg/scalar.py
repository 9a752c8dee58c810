"""
Núcleo escalar: los dos regímenes numéricos del laboratorio.

- racional exacto: ``int`` / ``fractions.Fraction`` (enteros sin límite)
- flotante grande: ``mpmath.mpf`` / ``mpmath.mpc`` con dígitos decimales explícitos
"""
import math
import os
from contextlib import contextmanager
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

import mpmath
from dotenv import load_dotenv

from errors import ArgumentError, DomainError

load_dotenv()

# 60 dígitos dejan >20 dígitos de guarda para niveles 1e-18 sobre coeficientes ~20!
DEFAULT_DIGITS = int(os.getenv("POLYCOND_DIGITS", "60"))
mpmath.mp.dps = DEFAULT_DIGITS

Scalar = Union[int, Fraction, mpmath.mpf]
ComplexScalar = mpmath.mpc

_EXACT_TYPES = (int, Fraction)
_LOG10_2 = math.log10(2)


class Regime(str, Enum):
    EXACT = "exact-rational"
    BIG_FLOAT = "big-float"


def resolve_digits(digits: Optional[int] = None) -> int:
    """Precisión pedida o, sin ella, la vigente en mpmath (DEFAULT_DIGITS al arrancar)."""
    if digits is None:
        return mpmath.mp.dps
    if digits < 2:
        raise ArgumentError(f"Precisión inválida: {digits} dígitos")
    return int(digits)


@contextmanager
def working_digits(digits: Optional[int] = None) -> Iterator[int]:
    """Fija la precisión de mpmath dentro del bloque."""
    d = resolve_digits(digits)
    with mpmath.workdps(d):
        yield d


def regime_of(s) -> Regime:
    if isinstance(s, bool):
        raise ArgumentError("bool no es un escalar")
    if isinstance(s, _EXACT_TYPES):
        return Regime.EXACT
    if isinstance(s, (mpmath.mpf, mpmath.mpc)):
        return Regime.BIG_FLOAT
    raise ArgumentError(f"Tipo de escalar no soportado: {type(s).__name__}")


def is_exact(*values) -> bool:
    return all(isinstance(v, _EXACT_TYPES) for v in values)


def exact(value) -> Fraction:
    """Convierte int, str ("3/5", "0.25") o float a racional exacto."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        raise ArgumentError("Un flotante grande no se convierte a racional implícitamente")
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise ArgumentError(f"No es un racional válido: {value!r}") from e


def to_big_float(s, digits: Optional[int] = None) -> mpmath.mpf:
    """Redondea un escalar a flotante grande con ``digits`` dígitos."""
    with working_digits(digits):
        if isinstance(s, Fraction):
            return mpmath.mpf(s.numerator) / s.denominator
        if isinstance(s, str):
            return mpmath.mpf(exact(s).numerator) / exact(s).denominator
        return mpmath.mpf(s) if not isinstance(s, mpmath.mpc) else s


def big_complex(re, im=0, digits: Optional[int] = None) -> mpmath.mpc:
    with working_digits(digits):
        return mpmath.mpc(to_big_float(re, digits), to_big_float(im, digits))


def promote(values: Iterable, digits: Optional[int] = None) -> tuple:
    """Si algún valor es flotante, pasa todos al régimen flotante.

    Sin ``digits`` se usa la precisión vigente de mpmath. Mezclar Fraction con
    mpf directamente degrada a double, por eso todo cruce de regímenes pasa por aquí.
    """
    values = tuple(values)
    if is_exact(*values):
        return values
    d = digits if digits is not None else mpmath.mp.dps
    return tuple(v if isinstance(v, (mpmath.mpf, mpmath.mpc)) else to_big_float(v, d) for v in values)


def align(x, values: Iterable) -> tuple:
    """(x, values) en un mismo régimen, a la precisión vigente."""
    promoted = promote((x, *values))
    return promoted[0], promoted[1:]


def conj(s):
    if isinstance(s, mpmath.mpc):
        return mpmath.conj(s)
    return s


def _log10_int(n: int) -> float:
    # Cuenta de bits + mantisa de 64 bits: nunca se convierte el entero completo
    n = abs(n)
    shift = max(0, n.bit_length() - 64)
    return math.log10(n >> shift) + shift * _LOG10_2


def log10_abs(s) -> float:
    """log10(|s|) en rango double aunque |s| desborde el rango de máquina."""
    if s == 0:
        raise DomainError("log10_abs(0) no está definido")
    if isinstance(s, bool):
        raise ArgumentError("bool no es un escalar")
    if isinstance(s, int):
        return _log10_int(s)
    if isinstance(s, Fraction):
        return _log10_int(s.numerator) - _log10_int(s.denominator)
    if isinstance(s, (mpmath.mpf, mpmath.mpc)):
        with mpmath.workdps(30):
            return float(mpmath.log10(abs(s)))
    if isinstance(s, float):
        return math.log10(abs(s))
    raise ArgumentError(f"Tipo de escalar no soportado: {type(s).__name__}")


def log10_or_floor(s, floor: float = float("-inf")) -> float:
    """Como log10_abs pero devuelve ``floor`` para el cero."""
    return floor if s == 0 else log10_abs(s)


def to_float(s) -> float:
    """Conversión para mostrar; puede desbordar a inf en valores gigantes."""
    if isinstance(s, Fraction):
        try:
            return s.numerator / s.denominator
        except OverflowError:
            return math.inf if s > 0 else -math.inf
    return float(s)
