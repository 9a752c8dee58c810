"""
Escenarios ejecutables: cada uno produce curvas, campos de pseudoceros y un
resumen de estadísticas recalculables a partir de esos mismos datos.
"""
import inspect
import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from bases import chebyshev_nodes, custom_nodes, equispaced_nodes
from conditioning import (
    ConditionCurve,
    PerturbationModel,
    coefficient_sensitivity,
    condition_B,
    condition_curve,
    lebesgue_bound_holds,
    perturbed_eval_delta,
    root_conditions,
)
from errors import ArgumentError
from polynomial import (
    Polynomial,
    from_roots_monomial,
    interpolate_lagrange,
    named_polynomial,
    runge_function,
    scaled_wilkinson_roots,
    to_bernstein,
    to_lagrange,
    wilkinson_roots,
)
from pseudozeros import indicator, pseudozero_field, pseudozero_level, witness_perturbation
from scalar import big_complex, exact, log10_or_floor, promote, to_float, working_digits

logger = logging.getLogger("polycond.scenarios")

FIBONACCI_DEGREES = (5, 8, 13, 21, 34, 55, 89)
C20_LEVELS = ("1e-1", "1e-2", "1e-3", "1e-4", "1e-6", "1e-8")
S20_LEVELS = ("1e-4", "1e-6", "1e-8", "1e-10", "1e-15")
WILKINSON_LEVELS = ("1e-14", "1e-18")


@dataclass
class ScenarioReport:
    name: str
    curves: list = field(default_factory=list)
    fields: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)

    def curve(self, label: str) -> ConditionCurve:
        for c in self.curves:
            if c.label == label:
                return c
        raise KeyError(label)


def _degrees(degrees: Optional[Sequence]) -> tuple:
    degrees = tuple(int(n) for n in (degrees or FIBONACCI_DEGREES))
    if any(n < 1 for n in degrees):
        raise ArgumentError(f"Grados inválidos: {degrees}")
    return degrees


def _central_min(curve: ConditionCurve, half_width=Fraction(1, 10)) -> float:
    return min(v for x, v in zip(curve.abscissae, curve.values_log10) if abs(x) <= half_width)


def _curve_summary(report: ScenarioReport, key: str = "max_log10_B") -> None:
    report.summary[key] = {c.label: c.max_log10 for c in report.curves}
    report.summary["argmax_x"] = {c.label: to_float(c.argmax) for c in report.curves}


def runge_equispaced(degrees: Optional[Sequence] = None, samples: Optional[int] = None, workers: Optional[int] = None) -> ScenarioReport:
    """Interpolante de Runge en nodos equiespaciados de [-1, 1], todo en racionales exactos."""
    report = ScenarioReport("runge-equi", parameters={"degrees": list(_degrees(degrees)), "samples": samples})
    for n in _degrees(degrees):
        nodes = equispaced_nodes(n)
        p = interpolate_lagrange(nodes, [runge_function(x) for x in nodes], label=f"n={n}")
        report.curves.append(condition_curve(p, (-1, 1), samples, workers=workers))
    _curve_summary(report)
    report.summary["central_min_log10_B"] = {c.label: _central_min(c) for c in report.curves}
    return report


def runge_chebyshev(
    degrees: Optional[Sequence] = None,
    samples: Optional[int] = None,
    workers: Optional[int] = None,
    digits: Optional[int] = None,
) -> ScenarioReport:
    """El mismo interpolante en nodos extremos de Chebyshev (flotante grande al doble de precisión)."""
    report = ScenarioReport("runge-cheb", parameters={"degrees": list(_degrees(degrees)), "samples": samples})
    for n in _degrees(degrees):
        nodes = chebyshev_nodes(n, digits)
        with working_digits(nodes.digits):
            values = [runge_function(x) for x in nodes]
        p = interpolate_lagrange(nodes, values, label=f"n={n}")
        report.curves.append(condition_curve(p, (-1, 1), samples, workers=workers, digits=nodes.digits))
    _curve_summary(report)
    report.summary["overall_max_log10_B"] = max(c.max_log10 for c in report.curves)
    return report


def improvement_log10(equispaced: ScenarioReport, chebyshev: ScenarioReport, n: int) -> float:
    """Décadas que se ganan en max B al pasar de nodos equiespaciados a Chebyshev con grado n."""
    label = f"n={n}"
    return equispaced.curve(label).max_log10 - chebyshev.curve(label).max_log10


def _root_summary(report: ScenarioReport, p: Polynomial) -> None:
    conditions = root_conditions(p)
    relative = [c.log10_relative for c in conditions]
    absolute = [c.log10_absolute for c in conditions]
    best = max(range(len(conditions)), key=lambda i: (conditions[i].relative, -i))
    report.curves.append(ConditionCurve(tuple(p.roots), tuple(relative), "A(r)"))
    report.curves.append(ConditionCurve(tuple(p.roots), tuple(absolute), "B(r)/|p'(r)|"))
    report.summary["argmax_root"] = _json_scalar(conditions[best].root)
    report.summary["max_log10_A"] = relative[best]
    report.summary["argmax_root_absolute"] = _json_scalar(
        conditions[max(range(len(conditions)), key=lambda i: (conditions[i].absolute, -i))].root
    )
    report.summary["max_log10_absolute"] = max(absolute)


def _json_scalar(value):
    if isinstance(value, int) or (isinstance(value, Fraction) and value.denominator == 1):
        return int(value)
    if isinstance(value, Fraction):
        return str(value)
    return to_float(value)


def wilkinson_first(n: int = 20, samples: Optional[int] = None, workers: Optional[int] = None) -> ScenarioReport:
    """W_N con raíces 1..N: B(x) en [0, N] y A(r) exacto en cada raíz."""
    p = from_roots_monomial(wilkinson_roots(n), label=f"wilkinson{n}")
    report = ScenarioReport("wilkinson", parameters={"n": n, "samples": samples})
    report.curves.append(condition_curve(p, (0, n), samples, label="B(x)", workers=workers))
    _root_summary(report, p)
    # Sensibilidad clásica al coeficiente de x^(N-1)
    single = [coefficient_sensitivity(p, r, n - 1) for r in p.roots]
    best = max(range(len(single)), key=lambda i: (single[i], -i))
    report.summary["argmax_root_single_coefficient"] = _json_scalar(p.roots[best])
    report.summary["max_log10_B"] = report.curve("B(x)").max_log10
    logger.info(f"📊 W{n}: max log10 A = {report.summary['max_log10_A']:.3f} en r = {report.summary['argmax_root']}")
    return report


_SCALED_INTERVALS = {"symmetric": (-1, 1), "zero-two": (0, 2), "zero-one": (0, 1)}


def wilkinson_scaled(n: int = 20, target: str = "symmetric", samples: Optional[int] = None, workers: Optional[int] = None) -> ScenarioReport:
    """Raíces de W_N llevadas a un intervalo corto; mismo resumen de A(r)."""
    roots = scaled_wilkinson_roots(n, target)
    p = from_roots_monomial(sorted(roots), label=f"wilkinson-{target}{n}")
    report = ScenarioReport("wilkinson-scaled", parameters={"n": n, "target": target, "samples": samples})
    report.curves.append(condition_curve(p, _SCALED_INTERVALS[target], samples, label="B(x)", workers=workers))
    _root_summary(report, p)
    report.summary["max_log10_B"] = report.curve("B(x)").max_log10
    report.summary["zero_coefficients"] = sum(1 for c in p.coeffs if c == 0)
    return report


def _nodes_k_over_n(n: int):
    return custom_nodes(Fraction(k, n) for k in range(n + 1))


def wilkinson_second(
    n: int = 20,
    samples: Optional[int] = None,
    resolution: Optional[tuple] = None,
    with_fields: bool = True,
    workers: Optional[int] = None,
) -> ScenarioReport:
    """C_N (raíces 2^-k) y S_N (raíces 1 - 2^-k): monomial frente a Lagrange en nodos k/N."""
    c = named_polynomial(f"c{n}")
    s = named_polynomial(f"s{n}")
    nodes = _nodes_k_over_n(n)
    report = ScenarioReport("second", parameters={"n": n, "samples": samples, "fields": with_fields})
    for p in (c, s):
        report.curves.append(condition_curve(p, (0, 1), samples, label=f"{p.label} monomial", workers=workers))
        lagrange = to_lagrange(p, nodes)
        report.curves.append(condition_curve(lagrange, (0, 1), samples, label=f"{p.label} lagrange", workers=workers))
    _curve_summary(report)
    c_lagrange = to_lagrange(c, nodes)
    report.summary["lebesgue_bound_holds"] = all(
        lebesgue_bound_holds(c_lagrange, x) for x in report.curve(f"c{n} lagrange").abscissae[::50]
    )
    report.summary["c_monomial_B_at_one"] = log10_or_floor(condition_B(c, 1))
    report.summary[f"s{n}_x{n - 1}_coefficient"] = str(s.coeffs[n - 1])
    report.summary["s_level_at_3-1.5i"] = pseudozero_level(s, big_complex(3, Fraction(-3, 2)))
    if with_fields:
        report.fields.append(pseudozero_field(c, default_region(c.label), C20_LEVELS, resolution, workers=workers))
        report.fields.append(pseudozero_field(s, default_region(s.label), S20_LEVELS, resolution, workers=workers))
        report.summary["interior_points"] = {f.label: int(f.interior.sum()) for f in report.fields}
    return report


def bernstein_comparison(n: int = 20, samples: Optional[int] = None, workers: Optional[int] = None) -> ScenarioReport:
    """C_N y S_N en [0, 1] expresados en las bases monomial, Lagrange (k/N) y Bernstein."""
    nodes = _nodes_k_over_n(n)
    report = ScenarioReport("bernstein", parameters={"n": n, "samples": samples})
    for name in (f"c{n}", f"s{n}"):
        p = named_polynomial(name)
        for basis, q in (("monomial", p), ("lagrange", to_lagrange(p, nodes)), ("bernstein", to_bernstein(p))):
            report.curves.append(condition_curve(q, (0, 1), samples, label=f"{name} {basis}", workers=workers))
    _curve_summary(report)
    return report


def default_levels(name: str) -> tuple:
    if name.startswith("c"):
        return C20_LEVELS
    if name.startswith("s"):
        return S20_LEVELS
    return WILKINSON_LEVELS


def default_region(name: str) -> tuple:
    """Rectángulo (re0, re1, im0, im1) que encuadra las raíces de cada familia."""
    if name.startswith("c"):
        return (Fraction(-3, 2), Fraction(3, 2), Fraction(-3, 2), Fraction(3, 2))
    if name.startswith("s"):
        return (-2, 4, -3, 3)
    p = named_polynomial(name)
    lo, hi = min(p.roots), max(p.roots)
    if hi - lo <= 2:
        return (lo - Fraction(1, 2), hi + Fraction(1, 2), -1, 1)
    return (lo - 2, hi + 5, -8, 8)


def pseudozero_scenario(
    poly: str = "wilkinson20",
    levels: Optional[Sequence] = None,
    region: Optional[Sequence] = None,
    resolution: Optional[tuple] = None,
    digits: Optional[int] = None,
    workers: Optional[int] = None,
) -> ScenarioReport:
    p = named_polynomial(poly)
    levels = tuple(levels) if levels else default_levels(p.label)
    region = tuple(region) if region else default_region(p.label)
    pz = pseudozero_field(p, region, levels, resolution, digits=digits, workers=workers)
    report = ScenarioReport("pseudozeros", fields=[pz], parameters={"poly": p.label, "levels": [str(v) for v in levels]})
    report.summary["digits"] = pz.digits
    report.summary["interior_points"] = int(pz.interior.sum())
    report.summary["contour_polylines"] = {str(level): len(lines) for level, lines in pz.contours.items()}
    report.summary["min_log10_indicator"] = float(pz.values_log10.min())
    return report


def condition_query(poly: str, x, draws: int = 0, seed: int = 0, epsilon="1e-10") -> ScenarioReport:
    """B(x) de un polinomio con nombre en un punto; añade A(r) si x es raíz.

    Con ``draws`` > 0 comprueba además |Δp(x)| <= B(x) ε para perturbaciones
    aleatorias sembradas con ``seed``, en aritmética exacta.
    """
    p = named_polynomial(poly)
    x = exact(x)
    report = ScenarioReport("condition", parameters={"poly": p.label, "x": str(x)})
    b = condition_B(p, x)
    report.summary["log10_B"] = log10_or_floor(b)
    if draws < 0:
        raise ArgumentError(f"Número de sorteos inválido: {draws}")
    if draws:
        eps = exact(epsilon)
        rng = random.Random(seed)
        worst = max(
            abs(perturbed_eval_delta(p, x, PerturbationModel.random(len(p.coeffs), eps, rng))) for _ in range(draws)
        )
        report.parameters.update(draws=draws, seed=seed, epsilon=str(eps))
        report.summary["bound_holds"] = worst <= b * eps
        report.summary["max_perturbation_ratio"] = to_float(worst / (b * eps)) if b * eps != 0 else None
    if x in p.roots:
        conditions = {c.root: c for c in root_conditions(p)}
        report.summary["log10_A"] = conditions[x].log10_relative
        report.summary["log10_absolute"] = conditions[x].log10_absolute
    return report


def witness_query(poly: str, re, im=0, digits: Optional[int] = None) -> ScenarioReport:
    """Indicador y perturbación testigo en z = re + i im."""
    p = named_polynomial(poly)
    with working_digits(60 if digits is None else digits):
        z = big_complex(exact(re), exact(im))
        value = indicator(p, z)
        deltas = witness_perturbation(p, z)
        deltas_m = promote(deltas + tuple(p.coeffs))
        n = len(deltas)
        residual = 0
        for k, (d, c) in enumerate(zip(deltas_m[:n], deltas_m[n:])):
            residual += (c + d) * z ** k
        report = ScenarioReport("witness", parameters={"poly": p.label, "re": str(re), "im": str(im)})
        report.summary["log10_indicator"] = log10_or_floor(value)
        report.summary["log10_relative_residual"] = log10_or_floor(abs(residual) / condition_B(p, z))
        report.summary["delta_magnitudes_log10"] = [log10_or_floor(abs(d)) for d in deltas]
    return report


SCENARIOS: dict = {
    "runge-equi": runge_equispaced,
    "runge-cheb": runge_chebyshev,
    "wilkinson": wilkinson_first,
    "wilkinson-scaled": wilkinson_scaled,
    "second": wilkinson_second,
    "bernstein": bernstein_comparison,
    "pseudozeros": pseudozero_scenario,
    "condition": condition_query,
    "witness": witness_query,
}


def run_scenario(name: str, params: Optional[dict] = None) -> ScenarioReport:
    """Ejecuta un escenario del registro y registra su duración."""
    runner: Optional[Callable] = SCENARIOS.get(name)
    if runner is None:
        raise ArgumentError(f"Escenario desconocido: {name} (disponibles: {', '.join(SCENARIOS)})")
    params = {k: v for k, v in (params or {}).items() if v is not None}
    try:
        inspect.signature(runner).bind(**params)
    except TypeError as e:
        raise ArgumentError(f"Parámetros inválidos para {name}: {e}") from e
    logger.info(f"⚡ Ejecutando escenario {name} {params}")
    start = time.perf_counter()
    report = runner(**params)
    elapsed = time.perf_counter() - start
    logger.info(f"✅ Escenario {name} en {elapsed:.2f}s")
    return report
