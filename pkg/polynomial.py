"""
Polinomios en una base declarada: construcción desde raíces o datos de
interpolación, evaluación de p y p', y el catálogo de polinomios con nombre
(Wilkinson, Wilkinson escalado, C_N, S_N).
"""
import math
import re
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from bases import BasisKind, BasisSpec, NodeSet, node_hit, barycentric_weights
from errors import ArgumentError, UnsupportedBasisError
from scalar import Scalar, align, exact, is_exact, promote, to_big_float, working_digits


@dataclass(frozen=True)
class Polynomial:
    """p(x) = sum_k c_k phi_k(x).

    Si ``roots`` está presente el polinomio es mónico y p(x) = prod_j (x - r_j).
    """

    basis: BasisSpec
    coeffs: tuple
    roots: Optional[tuple] = None
    label: str = ""

    def __post_init__(self):
        if len(self.coeffs) != self.basis.size:
            raise ArgumentError(
                f"{len(self.coeffs)} coeficientes para una base de tamaño {self.basis.size}"
            )

    @property
    def degree(self) -> int:
        return self.basis.degree

    @property
    def is_exact(self) -> bool:
        nodes = self.basis.nodes.nodes if self.basis.nodes is not None else ()
        return is_exact(*self.coeffs, *nodes)

    def __call__(self, x) -> Scalar:
        return evaluate(self, x)


def from_roots_monomial(roots: Sequence, label: str = "") -> Polynomial:
    """Expansión de Vieta de prod (x - r_k) por convolución iterada, en aritmética exacta."""
    roots = tuple(exact(r) if isinstance(r, (int, str)) else r for r in roots)
    if not roots:
        raise ArgumentError("Se necesita al menos una raíz")
    coeffs = [Fraction(1)] if is_exact(*roots) else [mpmath.mpf(1)]
    for r in roots:
        shifted = [0] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] -= r * c
        coeffs = shifted
    return Polynomial(BasisSpec.monomial(len(roots)), tuple(coeffs), roots=roots, label=label)


def round_coefficients(p: Polynomial, digits: Optional[int] = None) -> Polynomial:
    """Copia con coeficientes redondeados a flotante grande; las raíces siguen exactas."""
    with working_digits(digits) as d:
        return replace(p, coeffs=tuple(to_big_float(c, d) for c in p.coeffs))


def interpolate_lagrange(nodes: NodeSet, values: Sequence, label: str = "") -> Polynomial:
    """En la base de Lagrange los coeficientes son los valores en los nodos."""
    values = tuple(values)
    if len(values) != len(nodes):
        raise ArgumentError(f"{len(values)} valores para {len(nodes)} nodos")
    return Polynomial(BasisSpec.lagrange(nodes), values, label=label)


def evaluate(p: Polynomial, x) -> Scalar:
    """Horner (monomial), baricéntrica de segunda forma (Lagrange), de Casteljau (Bernstein)."""
    kind = p.basis.kind
    if kind is BasisKind.LAGRANGE:
        return _eval_barycentric(p, x)
    x, coeffs = align(x, p.coeffs)
    if kind is BasisKind.MONOMIAL:
        result = 0
        for c in reversed(coeffs):
            result = result * x + c
        return result
    x, (a, b) = align(x, p.basis.interval)
    return _de_casteljau(coeffs, (x - a) / (b - a))


def _eval_barycentric(p: Polynomial, x) -> Scalar:
    nodes = p.basis.nodes
    n = len(nodes)
    weights = barycentric_weights(nodes)
    with working_digits(nodes.digits) as d:
        values = promote(nodes.nodes + (x,) + weights + p.coeffs, d)
        xs, x, weights, coeffs = values[:n], values[n], values[n + 1:2 * n + 1], values[2 * n + 1:]
        hit = node_hit(xs, x, d)
        if hit is not None:
            return p.coeffs[hit]
        num, den = 0, 0
        for w, xk, y in zip(weights, xs, coeffs):
            term = w / (x - xk)
            num += term * y
            den += term
        return num / den


def _de_casteljau(coeffs: Sequence, t) -> Scalar:
    beta = list(coeffs)
    n = len(beta)
    for j in range(1, n):
        for k in range(n - j):
            beta[k] = beta[k] * (1 - t) + beta[k + 1] * t
    return beta[0]


def evaluate_product_form(p: Polynomial, x) -> Scalar:
    """prod_j (x - r_j); a prueba de balas frente a la forma expandida."""
    if p.roots is None:
        raise ArgumentError(f"{p.label or 'el polinomio'} no guarda sus raíces")
    x, roots = align(x, p.roots)
    result = 1
    for r in roots:
        result *= x - r
    return result


def derivative_eval(p: Polynomial, x) -> Scalar:
    """p'(x). En una raíz r_i guardada: prod_{j != i} (r_i - r_j) exacto."""
    if p.roots is not None:
        return _root_form_derivative(*align(x, p.roots))
    kind = p.basis.kind
    if kind is BasisKind.LAGRANGE:
        raise UnsupportedBasisError("La derivada en base de Lagrange no está soportada")
    x, coeffs = align(x, p.coeffs)
    if kind is BasisKind.MONOMIAL:
        result = 0
        for k in range(len(coeffs) - 1, 0, -1):
            result = result * x + k * coeffs[k]
        return result
    n = p.degree
    if n == 0:
        return 0
    x, (a, b) = align(x, p.basis.interval)
    diffs = [coeffs[k + 1] - coeffs[k] for k in range(n)]
    return n * _de_casteljau(diffs, (x - a) / (b - a)) / (b - a)


def _root_form_derivative(x, roots: Sequence) -> Scalar:
    for i, r in enumerate(roots):
        if x == r:
            result = 1
            for j, rj in enumerate(roots):
                if j != i:
                    result *= r - rj
            return result
    value, total = 1, 0
    for r in roots:
        value *= x - r
        total += Fraction(1) / (x - r) if is_exact(x) else 1 / (x - r)
    return value * total


def runge_function(x) -> Scalar:
    """f(x) = 1 / (1 + 25 x^2); racional exacto para x racional."""
    if is_exact(x):
        return Fraction(1) / (1 + 25 * exact(x) ** 2)
    return 1 / (1 + 25 * x * x)


def runge_derivative(x) -> Scalar:
    if is_exact(x):
        x = exact(x)
        return Fraction(-50) * x / (1 + 25 * x * x) ** 2
    return -50 * x / (1 + 25 * x * x) ** 2


def to_lagrange(p: Polynomial, nodes: NodeSet, label: str = "") -> Polynomial:
    """Representación de Lagrange de p: sus valores en los nodos (grado(p) <= grado de nodos)."""
    if p.degree > nodes.degree:
        raise ArgumentError(f"Grado {p.degree} no cabe en {len(nodes)} nodos")
    evaluator = evaluate_product_form if p.roots is not None else evaluate
    values = tuple(evaluator(p, x) for x in nodes)
    roots = p.roots if p.degree == nodes.degree else None
    return Polynomial(BasisSpec.lagrange(nodes), values, roots=roots, label=label or p.label)


def to_bernstein(p: Polynomial, a=0, b=1, label: str = "") -> Polynomial:
    """Conversión exacta monomial -> Bernstein de grado n sobre [a, b]."""
    if p.basis.kind is not BasisKind.MONOMIAL:
        raise UnsupportedBasisError("Sólo se convierte desde la base monomial")
    n = p.degree
    if is_exact(a, b):
        a, b = exact(a), exact(b)
    h = b - a
    # q(t) = p(a + h t) en potencias de t
    shifted = [0] * (n + 1)
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        for j in range(k + 1):
            shifted[j] += c * math.comb(k, j) * a ** (k - j) * h ** j
    coeffs = []
    for i in range(n + 1):
        total = 0
        for j in range(i + 1):
            total += shifted[j] * Fraction(math.comb(i, j), math.comb(n, j))
        coeffs.append(total)
    return Polynomial(BasisSpec.bernstein(n, a, b), tuple(coeffs), roots=p.roots, label=label or p.label)


# -- Catálogo de raíces -------------------------------------------------------

SCALED_TARGETS = ("symmetric", "zero-two", "zero-one")


def wilkinson_roots(n: int) -> tuple:
    _check_degree(n)
    return tuple(Fraction(k) for k in range(1, n + 1))


def scaled_wilkinson_roots(n: int, target: str) -> tuple:
    """Raíces de W_N llevadas afínmente a (-1, 1), (0, 2) o (0, 1) con denominador N+1."""
    _check_degree(n)
    if target == "symmetric":
        return tuple(-1 + Fraction(2 * k, n + 1) for k in range(1, n + 1))
    if target == "zero-two":
        return tuple(2 - Fraction(2 * k, n + 1) for k in range(1, n + 1))
    if target == "zero-one":
        return tuple(Fraction(k, n + 1) for k in range(1, n + 1))
    raise ArgumentError(f"Destino de escalado desconocido: {target} (usa {', '.join(SCALED_TARGETS)})")


def dyadic_roots(n: int) -> tuple:
    """2^-k, k = 1..N (raíces de C_N)."""
    _check_degree(n, minimum=1)
    return tuple(Fraction(1, 2 ** k) for k in range(1, n + 1))


def dyadic_roots_near_one(n: int) -> tuple:
    """1 - 2^-k, k = 1..N (raíces de S_N)."""
    _check_degree(n, minimum=1)
    return tuple(1 - Fraction(1, 2 ** k) for k in range(1, n + 1))


def _check_degree(n: int, minimum: int = 2) -> None:
    if not isinstance(n, int) or n < minimum:
        raise ArgumentError(f"Grado inválido: {n} (mínimo {minimum})")


_NAMED = re.compile(r"^(wilkinson-sym|wilkinson-02-|wilkinson-01-|wilkinson|c|s)(\d+)$")


def named_polynomial(name: str) -> Polynomial:
    """wilkinson20, wilkinson-sym20, wilkinson-02-20, wilkinson-01-20, c20, s20."""
    match = _NAMED.match(name.strip().lower())
    if not match:
        raise ArgumentError(f"Polinomio desconocido: {name}")
    family, n = match.group(1), int(match.group(2))
    roots = {
        "wilkinson": lambda: wilkinson_roots(n),
        "wilkinson-sym": lambda: scaled_wilkinson_roots(n, "symmetric"),
        "wilkinson-02-": lambda: scaled_wilkinson_roots(n, "zero-two"),
        "wilkinson-01-": lambda: scaled_wilkinson_roots(n, "zero-one"),
        "c": lambda: dyadic_roots(n),
        "s": lambda: dyadic_roots_near_one(n),
    }[family]()
    return from_roots_monomial(roots, label=name.strip().lower())
