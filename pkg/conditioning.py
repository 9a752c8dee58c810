"""
Medidas de condicionamiento: B(x), C(x), A(r), B(r)/|p'(r)| y la cota de Lebesgue.

Modelo de perturbación: p + Δp = sum c_k (1 + δ_k) phi_k con |δ_k| <= ε;
los coeficientes nulos no se perturban.
"""
import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import repeat
from typing import Optional, Sequence

import mpmath

from bases import BasisKind, NodeSet, basis_magnitudes, basis_values, lagrange_basis_values
from errors import ArgumentError, DomainError, ModelViolationError, SingularityError
from polynomial import Polynomial, derivative_eval, evaluate
from scalar import Scalar, align, exact, is_exact, log10_or_floor, promote, to_big_float, working_digits

logger = logging.getLogger("polycond.conditioning")

# 2001 muestras resuelven los picos de C20 en Lagrange y mantienen el caso exacto en segundos
DEFAULT_SAMPLES = int(os.getenv("POLYCOND_SAMPLES", "2001"))
DEFAULT_WORKERS = int(os.getenv("POLYCOND_WORKERS", "1"))


@dataclass(frozen=True)
class ConditionCurve:
    """Abscisas crecientes con log10 B(x); los ceros quedan como -inf."""

    abscissae: tuple
    values_log10: tuple
    label: str = ""

    def __post_init__(self):
        if len(self.abscissae) != len(self.values_log10):
            raise ArgumentError("Abscisas y valores con longitudes distintas")
        xs = promote(self.abscissae)
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ArgumentError(f"Abscisas no crecientes en la curva {self.label!r}")

    def __len__(self) -> int:
        return len(self.abscissae)

    @property
    def zero_flags(self) -> tuple:
        return tuple(v == float("-inf") for v in self.values_log10)

    @property
    def max_log10(self) -> float:
        return max(self.values_log10, default=float("-inf"))

    @property
    def argmax(self):
        """Primera abscisa donde se alcanza el máximo."""
        if not self.values_log10:
            return None
        best = self.max_log10
        return self.abscissae[self.values_log10.index(best)]


@dataclass(frozen=True)
class PerturbationModel:
    epsilon: Scalar
    deltas: Optional[tuple] = None

    def __post_init__(self):
        if self.epsilon < 0:
            raise ArgumentError(f"epsilon negativo: {self.epsilon}")
        if self.deltas is not None:
            eps, deltas = align(self.epsilon, self.deltas)
            for k, d in enumerate(deltas):
                if abs(d) > eps:
                    raise ModelViolationError(f"|δ_{k}| = {abs(d)} excede ε = {eps}")

    def effective_deltas(self, coeffs: Sequence) -> tuple:
        """δ_k fijado a 0 donde c_k = 0."""
        if self.deltas is None:
            raise ArgumentError("El modelo no trae perturbaciones δ_k")
        if len(self.deltas) != len(coeffs):
            raise ArgumentError(f"{len(self.deltas)} perturbaciones para {len(coeffs)} coeficientes")
        return tuple(0 if c == 0 else d for c, d in zip(coeffs, self.deltas))

    @classmethod
    def sharp(cls, p: Polynomial, x, epsilon) -> "PerturbationModel":
        """δ_k = ε sign(c_k phi_k(x)): el caso donde la desigualdad triangular es igualdad."""
        x, coeffs = align(x, p.coeffs)
        phis = promote(basis_values(p.basis, x))
        deltas = []
        for c, phi in zip(coeffs, phis):
            term = c * phi
            deltas.append(epsilon if term > 0 else -epsilon if term < 0 else 0)
        return cls(epsilon, tuple(deltas))

    @classmethod
    def random(cls, size: int, epsilon, rng: random.Random, resolution: int = 10 ** 6) -> "PerturbationModel":
        """δ_k racionales uniformes en [-ε, ε] (exactos si ε lo es)."""
        deltas = tuple(epsilon * Fraction(rng.randint(-resolution, resolution), resolution) for _ in range(size))
        return cls(epsilon, deltas)


def condition_B(p: Polynomial, x, weights: Optional[Sequence] = None) -> Scalar:
    """B(x) = sum |c_k| |phi_k(x)| (o sum w_k |phi_k(x)| con pesos explícitos)."""
    mags = basis_magnitudes(p.basis, x)
    ws = tuple(weights) if weights is not None else tuple(abs(c) for c in p.coeffs)
    if len(ws) != len(mags):
        raise ArgumentError(f"{len(ws)} pesos para una base de tamaño {len(mags)}")
    values = promote(ws + mags)
    n = len(ws)
    total = 0
    for w, m in zip(values[:n], values[n:]):
        if w != 0:
            total += w * m
    return total


def perturbed_eval_delta(p: Polynomial, x, model: PerturbationModel) -> Scalar:
    """Δp(x) = sum c_k δ_k phi_k(x), exacto en el régimen racional."""
    deltas = model.effective_deltas(p.coeffs)
    phis = basis_values(p.basis, x)
    n = len(deltas)
    values = promote(p.coeffs + deltas + tuple(phis))
    coeffs, deltas, phis = values[:n], values[n:2 * n], values[2 * n:]
    total = 0
    for c, d, phi in zip(coeffs, deltas, phis):
        total += c * d * phi
    return total


def perturbed_polynomial(p: Polynomial, model: PerturbationModel) -> Polynomial:
    """p + Δp en la misma base; ya no conserva raíces."""
    deltas = model.effective_deltas(p.coeffs)
    values = promote(p.coeffs + deltas)
    n = len(deltas)
    coeffs = tuple(c * (1 + d) for c, d in zip(values[:n], values[n:]))
    return Polynomial(p.basis, coeffs, label=f"{p.label}+Δ" if p.label else "")


def evaluation_condition_C(f_value, f_deriv, x) -> Scalar:
    """C = |x f'(x) / f(x)|: error relativo en la entrada -> error relativo en la salida."""
    if f_value == 0:
        raise DomainError("La condición C no está definida en un cero de f")
    f_value, (f_deriv, x) = align(f_value, (f_deriv, x))
    if is_exact(f_value, f_deriv, x):
        return abs(exact(x) * f_deriv / exact(f_value))
    return abs(x * f_deriv / f_value)


def _root_derivative(p: Polynomial, r) -> Scalar:
    if p.roots is not None:
        x, roots = align(r, p.roots)
        if x not in roots:
            raise ArgumentError(f"{r} no es una raíz guardada de {p.label or 'p'}")
    elif p.is_exact and is_exact(r) and evaluate(p, r) != 0:
        raise ArgumentError(f"{r} no es una raíz de {p.label or 'p'}")
    d = derivative_eval(p, r)
    if d == 0:
        raise SingularityError(f"Raíz múltiple en {r}: p'(r) = 0")
    return d


def root_condition_A(p: Polynomial, r) -> Scalar:
    """A(r) = |r B(r) / p'(r)|, condición mixta relativa/absoluta de una raíz simple."""
    d = _root_derivative(p, r)
    r, (b, d) = align(r, (condition_B(p, r), d))
    return abs(r) * b / abs(d)


def root_condition_absolute(p: Polynomial, r) -> Scalar:
    """B(r) / |p'(r)|: cota de primer orden de |Δr| por unidad de ε."""
    d = _root_derivative(p, r)
    b, d = promote((condition_B(p, r), d))
    return b / abs(d)


def coefficient_sensitivity(p: Polynomial, r, k: int) -> Scalar:
    """|c_k phi_k(r) / p'(r)|: desplazamiento de r por unidad de δ_k en un solo coeficiente."""
    if not 0 <= k < len(p.coeffs):
        raise ArgumentError(f"Índice de coeficiente fuera de rango: {k}")
    d = _root_derivative(p, r)
    phi = basis_values(p.basis, r)[k]
    c, phi, d = promote((p.coeffs[k], phi, d))
    return abs(c * phi) / abs(d)


@dataclass(frozen=True)
class RootCondition:
    root: Scalar
    relative: Scalar
    absolute: Scalar

    @property
    def log10_relative(self) -> float:
        return log10_or_floor(self.relative)

    @property
    def log10_absolute(self) -> float:
        return log10_or_floor(self.absolute)


def root_conditions(p: Polynomial) -> tuple:
    """A(r) y B(r)/|p'(r)| en cada raíz guardada, en el orden de ``p.roots``."""
    if p.roots is None:
        raise ArgumentError(f"{p.label or 'el polinomio'} no guarda sus raíces")
    return tuple(
        RootCondition(r, root_condition_A(p, r), root_condition_absolute(p, r)) for r in p.roots
    )


def lebesgue_function(nodes: NodeSet, x) -> Scalar:
    """L(x) = sum |l_k(x)|."""
    total = 0
    for value in lagrange_basis_values(nodes, x):
        total += abs(value)
    return total


def lebesgue_bound(p: Polynomial, x) -> tuple:
    """(B(x), L(x) max|c_k|) para un polinomio en base de Lagrange."""
    if p.basis.kind is not BasisKind.LAGRANGE:
        raise ArgumentError("La cota de Lebesgue se aplica a la base de Lagrange")
    b = condition_B(p, x)
    bound_values = promote((lebesgue_function(p.basis.nodes, x), *(abs(c) for c in p.coeffs)))
    return b, bound_values[0] * max(bound_values[1:])


def lebesgue_bound_holds(p: Polynomial, x) -> bool:
    b, bound = lebesgue_bound(p, x)
    if is_exact(b, bound):
        return b <= bound
    b, bound = promote((b, bound))
    return b <= bound * (1 + mpmath.mpf(10) ** (-mpmath.mp.dps + 5))


def sample_points(a, b, samples: int) -> tuple:
    """``samples`` abscisas racionales equiespaciadas en [a, b], extremos incluidos."""
    if samples < 2:
        raise ArgumentError(f"Se necesitan al menos 2 muestras, no {samples}")
    a, b = exact(a), exact(b)
    if a >= b:
        raise ArgumentError(f"Intervalo vacío: [{a}, {b}]")
    return tuple(a + (b - a) * Fraction(i, samples - 1) for i in range(samples))


def _curve_value(p: Polynomial, x, digits: Optional[int]) -> float:
    if p.is_exact:
        return log10_or_floor(condition_B(p, x))
    with working_digits(digits):
        return log10_or_floor(condition_B(p, to_big_float(x)))


def condition_curve(
    p: Polynomial,
    interval: tuple,
    samples: Optional[int] = None,
    label: Optional[str] = None,
    workers: Optional[int] = None,
    digits: Optional[int] = None,
) -> ConditionCurve:
    """B(x) en ``samples`` puntos racionales de ``interval``, guardado como log10."""
    samples = DEFAULT_SAMPLES if samples is None else samples
    workers = DEFAULT_WORKERS if workers is None else workers
    if workers < 1:
        raise ArgumentError(f"Se necesita al menos un proceso, no {workers}")
    xs = sample_points(interval[0], interval[1], samples)
    label = label if label is not None else p.label
    logger.debug(f"📈 Curva {label}: {samples} muestras en [{xs[0]}, {xs[-1]}] ({'exacta' if p.is_exact else 'flotante'})")
    if workers > 1:
        # map conserva el orden: el resultado no depende del reparto entre procesos
        chunk = max(1, samples // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = tuple(pool.map(_curve_value, repeat(p), xs, repeat(digits), chunksize=chunk))
    else:
        values = tuple(_curve_value(p, x, digits) for x in xs)
    return ConditionCurve(xs, values, label)


def perturbed_root(p: Polynomial, r, model: PerturbationModel, radius=None, digits: Optional[int] = None):
    """Raíz de p + Δp cercana a r, por bisección en alta precisión.

    ``radius`` por defecto es media distancia a la raíz guardada más próxima.
    """
    if radius is None:
        if p.roots is None or len(p.roots) < 2:
            raise ArgumentError("Sin raíces vecinas hay que indicar radius")
        x, roots = align(r, p.roots)
        radius = min(abs(x - other) for other in roots if other != x) / 2
    q = perturbed_polynomial(p, model)
    with working_digits(digits) as d:
        lo, hi = to_big_float(r, d) - to_big_float(radius, d), to_big_float(r, d) + to_big_float(radius, d)
        return mpmath.findroot(lambda t: evaluate(q, t), (lo, hi), solver="bisect", maxsteps=4 * d + 100)


def pseudozero_relative_bound(p: Polynomial, r, epsilon) -> Scalar:
    """A(r) ε: cota de primer orden de |Δr|/|r| para perturbaciones con |δ_k| <= ε."""
    a = root_condition_A(p, r)
    a, (epsilon,) = align(a, (epsilon,))
    return a * epsilon
