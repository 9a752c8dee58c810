"""
Conjuntos de ε-pseudoceros con pesos: {z : |p(z)| <= B_w(z) ε}.

El indicador |p(z)|/B_w(z) se evalúa en una malla compleja a precisión alta
y los contornos de cada nivel se extraen con contourpy (marching squares).
"""
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import repeat
from typing import Optional, Sequence

import mpmath
import numpy as np
from contourpy import LineType, contour_generator

from bases import BasisKind, basis_magnitudes, basis_values
from conditioning import DEFAULT_WORKERS
from errors import ArgumentError, DegenerateInputError, PrecisionError
from polynomial import Polynomial, evaluate, evaluate_product_form
from scalar import big_complex, conj, exact, log10_abs, log10_or_floor, promote, resolve_digits, to_big_float, to_float, working_digits

logger = logging.getLogger("polycond.pseudozeros")


def parse_grid(text: str) -> tuple:
    try:
        nx, ny = (int(v) for v in text.lower().split("x"))
    except ValueError as e:
        raise ArgumentError(f"Malla inválida: {text!r} (formato NXxNY)") from e
    return nx, ny


DEFAULT_GRID = parse_grid(os.getenv("POLYCOND_GRID", "512x512"))
MIN_GRID = 16


@dataclass(frozen=True)
class WeightVector:
    """w_k >= 0, no todos nulos. Lo normal es w_k = |c_k|."""

    weights: tuple

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise ArgumentError("Los pesos deben ser no negativos")
        if not any(w > 0 for w in self.weights):
            raise DegenerateInputError("Todos los pesos son nulos")

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)


def default_weights(p: Polynomial) -> WeightVector:
    return WeightVector(tuple(abs(c) for c in p.coeffs))


def _weights_for(p: Polynomial, w: Optional[WeightVector]) -> tuple:
    w = w if w is not None else default_weights(p)
    if len(w) != len(p.coeffs):
        raise ArgumentError(f"{len(w)} pesos para {len(p.coeffs)} coeficientes")
    return w.weights


def _value_at(p: Polynomial, z):
    # La forma producto no sufre la cancelación de los coeficientes expandidos
    if p.roots is not None and p.basis.kind is BasisKind.MONOMIAL:
        return evaluate_product_form(p, z)
    return evaluate(p, z)


def _weighted_B(weights: tuple, mags: tuple):
    values = promote(weights + mags)
    n = len(weights)
    total = 0
    for w, m in zip(values[:n], values[n:]):
        if w != 0:
            total += w * m
    return total


def indicator(p: Polynomial, z, w: Optional[WeightVector] = None):
    """|p(z)| / B_w(z); z está en Λ_ε si y sólo si el indicador es <= ε."""
    weights = _weights_for(p, w)
    b = _weighted_B(weights, basis_magnitudes(p.basis, z))
    if b == 0:
        raise DegenerateInputError(f"B_w(z) = 0 en z = {z}")
    value, b = promote((abs(_value_at(p, z)), b))
    return value / b


def witness_perturbation(p: Polynomial, z, w: Optional[WeightVector] = None) -> tuple:
    """Δc con (p + Δp)(z) = 0 y |Δc_k| = w_k |p(z)|/B_w(z).

    Δc_k = -p(z) w_k conj(phi_k(z)) / (|phi_k(z)| B_w(z)), y 0 donde phi_k(z) = 0.
    """
    weights = _weights_for(p, w)
    phis = basis_values(p.basis, z)
    n = len(weights)
    values = promote((_value_at(p, z),) + weights + tuple(phis))
    pz, weights, phis = values[0], values[1:n + 1], values[n + 1:]
    b = _weighted_B(weights, tuple(abs(phi) for phi in phis))
    if b == 0:
        raise DegenerateInputError(f"B_w(z) = 0 en z = {z}")
    deltas = []
    for wk, phi in zip(weights, phis):
        if phi == 0 or wk == 0:
            deltas.append(0)
        else:
            deltas.append(-pz * wk * conj(phi) / (abs(phi) * b))
    return tuple(deltas)


def default_pseudozero_digits(p: Polynomial, levels: Sequence) -> int:
    """max(60, 20 + ceil(-log10 min nivel) + ceil(log10 max|c_k|))."""
    if not levels:
        raise ArgumentError("Se necesita al menos un nivel")
    biggest = max(abs(c) for c in p.coeffs)
    scale = math.ceil(log10_abs(biggest)) if biggest != 0 else 0
    return max(60, 20 + math.ceil(-log10_abs(min(levels))) + max(0, scale))


def pseudozero_level(p: Polynomial, z, w: Optional[WeightVector] = None, digits: Optional[int] = None) -> float:
    """log10 del menor ε con z en Λ_ε (-inf en un cero exacto)."""
    with working_digits(max(60, mpmath.mp.dps) if digits is None else digits):
        return log10_or_floor(indicator(p, z, w))


@dataclass
class PseudozeroField:
    """log10 del indicador en una malla ny x nx (fila j = parte imaginaria j-ésima)."""

    region: tuple
    resolution: tuple
    values_log10: np.ndarray
    levels: tuple
    contours: dict = field(default_factory=dict)
    interior: Optional[np.ndarray] = None
    digits: int = 0
    label: str = ""

    def __post_init__(self):
        nx, ny = self.resolution
        if self.values_log10.shape != (ny, nx):
            raise ArgumentError(f"Malla {self.values_log10.shape} no coincide con la resolución {nx}x{ny}")

    @property
    def re_axis(self) -> np.ndarray:
        re0, re1, _, _ = self.region
        return np.linspace(float(re0), float(re1), self.resolution[0])

    @property
    def im_axis(self) -> np.ndarray:
        _, _, im0, im1 = self.region
        return np.linspace(float(im0), float(im1), self.resolution[1])


def interior_mask(pz_field: PseudozeroField, level) -> np.ndarray:
    """Puntos de la malla con indicador <= level."""
    return pz_field.values_log10 <= log10_abs(level)


def _level_text(level) -> str:
    value = to_float(level)
    return format(value, ".3g") if value != 0 else f"1e{log10_abs(level):.1f}"


def _check_region(region: Sequence) -> tuple:
    if len(region) != 4:
        raise ArgumentError("La región es (re0, re1, im0, im1)")
    re0, re1, im0, im1 = (exact(v) for v in region)
    if re0 >= re1 or im0 >= im1:
        raise ArgumentError(f"Región vacía: {region}")
    return re0, re1, im0, im1


def _check_levels(levels: Sequence) -> tuple:
    levels = tuple(exact(v) if isinstance(v, (int, str, float)) else v for v in levels)
    if not levels:
        raise ArgumentError("Se necesita al menos un nivel")
    if any(v <= 0 for v in levels):
        raise ArgumentError("Los niveles deben ser positivos")
    if any(b >= a for a, b in zip(levels, levels[1:])):
        raise ArgumentError("Los niveles deben ir en orden estrictamente decreciente")
    return levels


def _row_values(p: Polynomial, im, res: tuple, weights: tuple, digits: int) -> list:
    floor = float(-digits)
    row = []
    with working_digits(digits):
        fast = p.basis.kind is BasisKind.MONOMIAL
        abs_weights = tuple(to_big_float(wk, digits) for wk in weights) if fast else None
        for re in res:
            z = big_complex(re, im, digits)
            if fast:
                # B_w(z) sólo depende de |z| en la base monomial
                r = abs(z)
                b = 0
                for wk in reversed(abs_weights):
                    b = b * r + wk
            else:
                b = _weighted_B(weights, basis_magnitudes(p.basis, z))
            if b == 0:
                raise DegenerateInputError(f"B_w(z) = 0 en z = {z}")
            value = abs(_value_at(p, z))
            row.append(floor if value == 0 else max(floor, float(mpmath.log10(value / b))))
    return row


def pseudozero_field(
    p: Polynomial,
    region: Sequence,
    levels: Sequence,
    resolution: Optional[tuple] = None,
    w: Optional[WeightVector] = None,
    digits: Optional[int] = None,
    workers: Optional[int] = None,
) -> PseudozeroField:
    """Malla de log10(|p|/B_w) con contornos por nivel y máscara interior del nivel menor."""
    re0, re1, im0, im1 = _check_region(region)
    levels = _check_levels(levels)
    nx, ny = DEFAULT_GRID if resolution is None else resolution
    if nx < MIN_GRID or ny < MIN_GRID:
        raise ArgumentError(f"Resolución mínima {MIN_GRID}x{MIN_GRID}, pedida {nx}x{ny}")
    digits = default_pseudozero_digits(p, levels) if digits is None else resolve_digits(digits)
    if log10_abs(min(levels)) < -digits + 10:
        needed = default_pseudozero_digits(p, levels)
        raise PrecisionError(
            f"Nivel {_level_text(min(levels))} por debajo del suelo 1e{-digits + 10} con {digits} dígitos",
            digits_needed=max(needed, math.ceil(-log10_abs(min(levels))) + 10),
        )
    weights = _weights_for(p, w)
    workers = DEFAULT_WORKERS if workers is None else workers
    if workers < 1:
        raise ArgumentError(f"Se necesita al menos un proceso, no {workers}")

    res = tuple(re0 + (re1 - re0) * Fraction(i, nx - 1) for i in range(nx))
    ims = tuple(im0 + (im1 - im0) * Fraction(j, ny - 1) for j in range(ny))
    # Coeficientes reales y región simétrica: la fila conjugada es un espejo exacto
    mirrored = im0 == -im1 and not any(isinstance(c, mpmath.mpc) for c in p.coeffs)
    todo = [j for j in range(ny) if not (mirrored and ims[j] < 0)]
    logger.info(f"🔍 Pseudoceros {p.label or 'p'}: malla {nx}x{ny}, {digits} dígitos, {len(todo)} filas")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_values, repeat(p), (ims[j] for j in todo), repeat(res),
                                 repeat(weights), repeat(digits)))
    else:
        rows = [_row_values(p, ims[j], res, weights, digits) for j in todo]

    values = np.empty((ny, nx), dtype=float)
    for j, row in zip(todo, rows):
        values[j, :] = row
    if mirrored:
        for j in range(ny):
            if ims[j] < 0:
                values[j, :] = values[ny - 1 - j, :]

    pz_field = PseudozeroField((re0, re1, im0, im1), (nx, ny), values, levels, digits=digits, label=p.label)
    generator = contour_generator(
        x=pz_field.re_axis, y=pz_field.im_axis, z=values, name="serial", line_type=LineType.Separate
    )
    for level in levels:
        pz_field.contours[level] = tuple(generator.lines(log10_abs(level)))
    pz_field.interior = interior_mask(pz_field, levels[-1])
    logger.info(f"✅ Pseudoceros {p.label or 'p'}: {sum(len(c) for c in pz_field.contours.values())} polilíneas")
    return pz_field
