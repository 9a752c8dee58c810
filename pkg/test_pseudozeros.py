"""
Pruebas de pseudoceros: indicador, perturbación testigo, mallas y contornos
"""
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from bases import BasisSpec, custom_nodes
from conditioning import PerturbationModel, condition_B, perturbed_polynomial
from errors import ArgumentError, DegenerateInputError, PrecisionError
from polynomial import Polynomial, evaluate, from_roots_monomial, named_polynomial, to_lagrange
from pseudozeros import (
    WeightVector,
    default_pseudozero_digits,
    default_weights,
    indicator,
    interior_mask,
    pseudozero_field,
    pseudozero_level,
    witness_perturbation,
)
from scalar import big_complex, to_big_float, working_digits

X2_MINUS_1 = from_roots_monomial([1, -1])


def test_indicator_small_example():
    assert indicator(X2_MINUS_1, Fraction(11, 10)) == Fraction(21, 221)
    assert indicator(X2_MINUS_1, 1) == 0


def test_degenerate_weights():
    with pytest.raises(DegenerateInputError):
        WeightVector((0, 0, 0))
    with pytest.raises(ArgumentError):
        WeightVector((1, -1))
    with pytest.raises(DegenerateInputError):
        # B_w(0) = 0 si sólo pesa el término x^2
        indicator(X2_MINUS_1, 0, WeightVector((0, 0, 1)))


def test_witness_small_example():
    z = Fraction(11, 10)
    deltas = witness_perturbation(X2_MINUS_1, z)
    value = indicator(X2_MINUS_1, z)
    assert abs(deltas[0]) == value
    assert deltas[1] == 0
    assert abs(deltas[2]) == value
    assert sum((c + d) * z ** k for k, (c, d) in enumerate(zip(X2_MINUS_1.coeffs, deltas))) == 0


def test_witness_at_root_is_zero():
    p = named_polynomial("wilkinson5")
    assert all(d == 0 for d in witness_perturbation(p, 3))


def _residual(p: Polynomial, z, deltas):
    total = 0
    for k, (c, d) in enumerate(zip(p.coeffs, deltas)):
        total += (mpmath.mpf(c.numerator) / c.denominator + d) * z ** k
    return total


@pytest.mark.parametrize("name,box", [
    ("wilkinson20", (-1, 25, -8, 8)),
    ("c20", (-1.5, 1.5, -1.5, 1.5)),
    ("s20", (-2, 4, -3, 3)),
])
def test_witness_soundness(name, box):
    p = named_polynomial(name)
    rng = random.Random(0)
    weights = default_weights(p)
    with working_digits(80):
        tol = mpmath.mpf(10) ** (-80 + 8)
        for _ in range(200):
            z = big_complex(rng.uniform(box[0], box[1]), rng.uniform(box[2], box[3]))
            deltas = witness_perturbation(p, z)
            value = indicator(p, z)
            b = condition_B(p, z)
            assert abs(_residual(p, z, deltas)) <= tol * b
            ratios = [abs(d) / to_big_float(w) for d, w in zip(deltas, weights) if w != 0]
            assert max(ratios) <= value * (1 + mpmath.mpf(10) ** -10)
            assert mpmath.almosteq(max(ratios), value, rel_eps=mpmath.mpf(10) ** -10)


def test_s20_level_between_outer_contours():
    level = pseudozero_level(named_polynomial("s20"), big_complex(3, Fraction(-3, 2)))
    assert -6 < level < -4


def test_default_digits_grow_with_level_and_coefficients():
    w20 = named_polynomial("wilkinson20")
    # max|c_k| de W20 es el coeficiente de x^2, ~1.38e19: ceil(log10) = 20
    assert default_pseudozero_digits(w20, [Fraction(1, 10 ** 18)]) == 60
    # 20 + 30 + 20
    assert default_pseudozero_digits(w20, [Fraction(1, 10 ** 30)]) == 70
    assert default_pseudozero_digits(X2_MINUS_1, [Fraction(1, 10)]) == 60


def test_field_argument_checks():
    p = named_polynomial("c5")
    with pytest.raises(ArgumentError):
        pseudozero_field(p, (-1, 1, -1, 1), ["1e-2"], resolution=(8, 8))
    with pytest.raises(ArgumentError):
        pseudozero_field(p, (-1, 1, -1, 1), ["1e-4", "1e-2"], resolution=(16, 16))
    with pytest.raises(ArgumentError):
        pseudozero_field(p, (1, -1, -1, 1), ["1e-2"], resolution=(16, 16))
    with pytest.raises(PrecisionError) as info:
        pseudozero_field(p, (-1, 1, -1, 1), ["1e-60"], resolution=(16, 16), digits=40)
    assert info.value.digits_needed >= 70
    assert "--precision" in info.value.advice
    assert "Nivel 1e-60 " in str(info.value)
    with pytest.raises(ArgumentError):
        pseudozero_field(p, (-1, 1, -1, 1), ["1e-2"], resolution=(16, 16), workers=0)
    with pytest.raises(ArgumentError):
        pseudozero_field(p, (-1, 1, -1, 1), ["1e-2"], resolution=(16, 16), digits=1)


def test_field_is_conjugate_symmetric_and_nested():
    p = named_polynomial("c8")
    levels = ["1e-1", "1e-2", "1e-4"]
    pz = pseudozero_field(p, (-1.5, 1.5, -1.5, 1.5), levels, resolution=(33, 33))
    assert pz.values_log10.shape == (33, 33)
    assert np.array_equal(pz.values_log10, pz.values_log10[::-1, :])
    masks = [interior_mask(pz, Fraction(level)) for level in levels]
    for outer, inner in zip(masks, masks[1:]):
        assert np.all(outer[inner])
    assert np.array_equal(pz.interior, masks[-1])
    assert all(len(pz.contours[Fraction(level)]) >= 1 for level in levels[:2])


def test_lagrange_field_matches_direct_formula():
    c = named_polynomial("c6")
    nodes = tuple(Fraction(k, 6) for k in range(7))
    q = to_lagrange(c, custom_nodes(nodes))
    pz = pseudozero_field(q, (-1, 2, -1, 1), ["1e-3"], resolution=(16, 16))
    assert pz.values_log10.shape == (16, 16)
    assert np.all(np.isfinite(pz.values_log10))
    with working_digits(pz.digits):
        for j in (0, 5, 10, 15):
            for i in (0, 3, 8, 15):
                z = big_complex(-1 + Fraction(3 * i, 15), -1 + Fraction(2 * j, 15))
                # l_k(z) = prod_{m != k} (z - x_m) / (x_k - x_m), sin forma baricéntrica
                ells = []
                for k, xk in enumerate(nodes):
                    ell = mpmath.mpf(1)
                    for m, xm in enumerate(nodes):
                        if m != k:
                            ell *= (z - to_big_float(xm)) / to_big_float(xk - xm)
                    ells.append(ell)
                ys = [to_big_float(y) for y in q.coeffs]
                value = abs(mpmath.fsum(y * ell for y, ell in zip(ys, ells)))
                b = mpmath.fsum(abs(y) * abs(ell) for y, ell in zip(ys, ells))
                assert pz.values_log10[j, i] == pytest.approx(float(mpmath.log10(value / b)), abs=1e-9)


def test_contour_vertices_track_the_level():
    p = named_polynomial("wilkinson5")
    level = Fraction(1, 10 ** 3)
    pz = pseudozero_field(p, (0, 6, -1, 1), [level], resolution=(121, 41))
    target = float(mpmath.log10(mpmath.mpf(level.numerator) / level.denominator))
    step = max(np.abs(np.diff(pz.values_log10, axis=0)).max(), np.abs(np.diff(pz.values_log10, axis=1)).max())
    for line in pz.contours[level]:
        for re, im in line[:: max(1, len(line) // 10)]:
            value = pseudozero_level(p, big_complex(re, im))
            assert abs(value - target) <= step


@seed(0)
@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_perturbed_roots_are_pseudozeros(rng_seed):
    """Raíces de p + Δp con |δ_k| <= ε están en Λ_ε."""
    p = named_polynomial("wilkinson6")
    eps = Fraction(1, 10 ** 6)
    rng = random.Random(rng_seed)
    for _ in range(100):
        model = PerturbationModel.random(len(p.coeffs), eps, rng)
        q = perturbed_polynomial(p, model)
        with working_digits(60):
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(q.coeffs)]
            for z in mpmath.polyroots(coeffs, maxsteps=200, extraprec=200):
                assert indicator(p, z) <= to_big_float(eps) * (1 + mpmath.mpf(10) ** -20)


def test_parallel_field_matches_serial():
    p = named_polynomial("c5")
    levels = ["1e-2", "1e-4"]
    serial = pseudozero_field(p, (-1, 1, -1, 1), levels, resolution=(20, 17), workers=1)
    parallel = pseudozero_field(p, (-1, 1, -1, 1), levels, resolution=(20, 17), workers=2)
    assert np.array_equal(serial.values_log10, parallel.values_log10)
    assert np.array_equal(serial.interior, parallel.interior)
    for level in serial.levels:
        assert len(serial.contours[level]) == len(parallel.contours[level])
        for a, b in zip(serial.contours[level], parallel.contours[level]):
            assert np.array_equal(a, b)
