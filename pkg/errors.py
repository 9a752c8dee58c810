"""Jerarquía de errores de polycond.

Los códigos de salida de la CLI se derivan de estas clases:
ArgumentError -> 2, PrecisionError -> 3, cualquier otro PolycondError -> 1.
"""
from typing import Optional


class PolycondError(Exception):
    """Raíz de todos los errores propios del laboratorio."""

    exit_code = 1


class ArgumentError(PolycondError, ValueError):
    """Tamaños, rangos o índices inválidos."""

    exit_code = 2


class DomainError(PolycondError, ValueError):
    """Operación fuera de su dominio (log de cero, condición en un cero)."""


class DegenerateInputError(PolycondError, ValueError):
    """Nodos repetidos o casi repetidos, pesos todos nulos, B_w(z) = 0."""


class UnsupportedBasisError(PolycondError, TypeError):
    """La operación no está definida para esta base."""


class ModelViolationError(PolycondError, ValueError):
    """Alguna perturbación relativa excede a epsilon."""


class SingularityError(PolycondError, ArithmeticError):
    """Raíz múltiple: p'(r) = 0."""


class OutputError(PolycondError, OSError):
    """No se pudo escribir el archivo de salida."""


class PrecisionError(PolycondError):
    """La precisión de trabajo no alcanza para el nivel epsilon pedido."""

    exit_code = 3

    def __init__(self, message: str, digits_needed: Optional[int] = None):
        super().__init__(message)
        self.digits_needed = digits_needed

    @property
    def advice(self) -> str:
        if self.digits_needed is None:
            return "Aumenta --precision o POLYCOND_DIGITS."
        return f"Usa --precision {self.digits_needed} (o POLYCOND_DIGITS={self.digits_needed})."
