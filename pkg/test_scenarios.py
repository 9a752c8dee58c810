"""
Pruebas de escenarios: resúmenes recalculables y afirmaciones cuantitativas
"""
import math
from fractions import Fraction

import pytest

from errors import ArgumentError
from scalar import log10_abs
from scenarios import (
    SCENARIOS,
    bernstein_comparison,
    condition_query,
    improvement_log10,
    pseudozero_scenario,
    run_scenario,
    runge_chebyshev,
    runge_equispaced,
    wilkinson_first,
    wilkinson_scaled,
    wilkinson_second,
    witness_query,
)

LOG10_2 = math.log10(2)


def test_wilkinson_first_summary():
    report = wilkinson_first(20, samples=201)
    assert report.summary["argmax_root"] == 15
    assert report.summary["argmax_root_single_coefficient"] == 16
    assert 15 <= report.summary["max_log10_A"] <= 17
    # Cada estadística se recalcula desde las curvas del propio informe
    assert report.summary["max_log10_A"] == report.curve("A(r)").max_log10
    assert report.summary["argmax_root"] == report.curve("A(r)").argmax
    assert report.summary["max_log10_B"] == report.curve("B(x)").max_log10


def test_wilkinson_growth():
    assert wilkinson_first(30, samples=11).summary["max_log10_A"] > 21
    assert wilkinson_first(40, samples=11).summary["max_log10_A"] > wilkinson_first(30, samples=11).summary["max_log10_A"]


def test_wilkinson_scaled_symmetric():
    report = wilkinson_scaled(20, "symmetric", samples=101)
    assert 2 <= report.summary["max_log10_A"] <= 4
    assert report.summary["zero_coefficients"] == 10


def test_wilkinson_scaled_zero_two_shift():
    unscaled = wilkinson_first(20, samples=11).summary["max_log10_A"]
    scaled = wilkinson_scaled(20, "zero-two", samples=11).summary["max_log10_A"]
    assert unscaled - scaled == pytest.approx(2 * math.log10(Fraction(21, 2)), abs=1e-9)


def test_wilkinson_scaled_zero_two_B_gap():
    # B(x) = prod(x + r_j) crece en [0, N]: el máximo está en el extremo derecho
    unscaled = wilkinson_first(20, samples=11).summary["max_log10_B"]
    scaled = wilkinson_scaled(20, "zero-two", samples=11).summary["max_log10_B"]
    assert unscaled == pytest.approx(log10_abs(Fraction(math.factorial(40), math.factorial(20))), abs=1e-9)
    exact_scaled = Fraction(2, 21) ** 20 * Fraction(math.factorial(41), math.factorial(21))
    assert scaled == pytest.approx(log10_abs(exact_scaled), abs=1e-9)
    assert unscaled - scaled == pytest.approx(20.13, abs=0.01)


@pytest.mark.slow
def test_wilkinson_scaled_symmetric_degree_60():
    small = wilkinson_scaled(20, "symmetric", samples=11).summary["max_log10_A"]
    large = wilkinson_scaled(60, "symmetric", samples=11).summary["max_log10_A"]
    assert 12 <= large <= 14
    assert large > small + 5


def test_runge_equispaced_small_near_center_and_large_near_ends():
    report = runge_equispaced([21, 34], samples=201)
    for label in ("n=21", "n=34"):
        assert report.summary["central_min_log10_B"][label] < LOG10_2
        assert abs(report.summary["argmax_x"][label]) > 0.75
        assert report.summary["max_log10_B"][label] == report.curve(label).max_log10


def test_runge_chebyshev_stays_small():
    report = runge_chebyshev([5, 8, 13], samples=201)
    assert report.summary["overall_max_log10_B"] <= math.log10(2.5)


def test_runge_chebyshev_two_nodes():
    report = runge_chebyshev([1], samples=21)
    # y = 1/26 en ambos extremos y |l_0| + |l_1| = 1 dentro de [-1, 1]
    for value in report.curve("n=1").values_log10:
        assert value == pytest.approx(math.log10(1 / 26), abs=1e-12)


@pytest.mark.slow
def test_runge_improvement_at_degree_89():
    degrees = [5, 8, 13, 21, 34, 55, 89]
    equi = runge_equispaced(degrees, samples=2001)
    cheb = runge_chebyshev(degrees, samples=2001)
    assert equi.curve("n=89").max_log10 == pytest.approx(23.914, abs=0.05)
    assert improvement_log10(equi, cheb, 89) == pytest.approx(23.54, abs=0.05)
    assert cheb.summary["overall_max_log10_B"] <= math.log10(2.5)


def test_wilkinson_second_without_fields():
    report = wilkinson_second(20, samples=101, with_fields=False)
    c_mono = report.curve("c20 monomial")
    assert math.log10(2.3) <= c_mono.max_log10 <= math.log10(2.5)
    assert c_mono.argmax == 1
    assert report.summary["c_monomial_B_at_one"] == pytest.approx(c_mono.max_log10, abs=1e-12)
    assert report.summary["s20_x19_coefficient"] == str(-(19 + Fraction(1, 2 ** 20)))
    assert report.summary["lebesgue_bound_holds"] is True
    assert -6 < report.summary["s_level_at_3-1.5i"] < -4
    assert report.fields == []


def test_bernstein_never_worse_than_monomial_on_unit_interval():
    report = bernstein_comparison(6, samples=51)
    assert len(report.curves) == 6
    for name in ("c6", "s6"):
        mono = report.curve(f"{name} monomial")
        bern = report.curve(f"{name} bernstein")
        for m, b in zip(mono.values_log10, bern.values_log10):
            assert b <= m + 1e-12


def test_pseudozero_scenario_defaults():
    report = pseudozero_scenario("c8", resolution=(32, 32))
    assert report.summary["digits"] == 60
    assert len(report.fields) == 1
    assert set(report.summary["contour_polylines"]) == {str(Fraction(1, 10 ** k)) for k in (1, 2, 3, 4, 6, 8)}


@pytest.mark.slow
def test_s20_masks_strictly_nested():
    report = pseudozero_scenario("s20", resolution=(256, 256))
    pz = report.fields[0]
    from pseudozeros import interior_mask

    masks = [interior_mask(pz, level) for level in pz.levels]
    for outer, inner in zip(masks, masks[1:]):
        assert outer[inner].all()
        assert outer.sum() > inner.sum()
    assert masks[-1].any()


def test_condition_and_witness_queries():
    cond = condition_query("wilkinson20", 15)
    assert cond.summary["log10_A"] == pytest.approx(16.055, abs=0.01)
    wit = witness_query("s20", 3, Fraction(-3, 2))
    assert -6 < wit.summary["log10_indicator"] < -4
    assert wit.summary["log10_relative_residual"] < -50


def test_run_scenario_validation():
    assert {"runge-equi", "runge-cheb", "wilkinson", "wilkinson-scaled", "second",
            "pseudozeros", "condition", "witness", "bernstein"} <= set(SCENARIOS)
    with pytest.raises(ArgumentError):
        run_scenario("nope")
    with pytest.raises(ArgumentError):
        run_scenario("wilkinson", {"degree": 20})
    report = run_scenario("wilkinson", {"n": 6, "samples": 11, "workers": None})
    assert report.name == "wilkinson"


def test_condition_query_random_bound_is_seeded():
    first = condition_query("c8", Fraction(1, 3), draws=200, seed=3)
    assert first.summary["bound_holds"] is True
    assert 0 < first.summary["max_perturbation_ratio"] <= 1
    again = condition_query("c8", Fraction(1, 3), draws=200, seed=3)
    assert again.summary["max_perturbation_ratio"] == first.summary["max_perturbation_ratio"]
    other = condition_query("c8", Fraction(1, 3), draws=200, seed=4)
    assert other.summary["max_perturbation_ratio"] != first.summary["max_perturbation_ratio"]
    with pytest.raises(ArgumentError):
        condition_query("c8", Fraction(1, 3), draws=-1)
