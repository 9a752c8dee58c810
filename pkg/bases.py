"""
Familias de nodos y evaluación puntual de las bases monomial, Lagrange y Bernstein.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath

from errors import ArgumentError, DegenerateInputError
from scalar import Scalar, align, exact, is_exact, promote, resolve_digits, working_digits


class Provenance(str, Enum):
    EQUISPACED = "equispaced"
    CHEBYSHEV = "chebyshev-extreme"
    CUSTOM = "custom"


class BasisKind(str, Enum):
    MONOMIAL = "monomial"
    LAGRANGE = "lagrange"
    BERNSTEIN = "bernstein"


@dataclass(frozen=True)
class NodeSet:
    """Nodos distintos dos a dos; el orden es el de generación (ver ``provenance``)."""

    nodes: tuple
    provenance: Provenance
    digits: Optional[int] = None

    def __post_init__(self):
        if not self.nodes:
            raise ArgumentError("Un NodeSet necesita al menos un nodo")
        _check_distinct(self.nodes, self.digits)

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __getitem__(self, k):
        return self.nodes[k]

    @property
    def degree(self) -> int:
        return len(self.nodes) - 1

    @property
    def is_exact(self) -> bool:
        return is_exact(*self.nodes)


def _check_distinct(nodes: Sequence, digits: Optional[int]) -> None:
    if is_exact(*nodes):
        if len(set(nodes)) != len(nodes):
            raise DegenerateInputError("Nodos repetidos")
        return
    # Nodos flotantes casi repetidos hacen explotar los pesos baricéntricos en silencio
    with working_digits(digits) as d:
        tol = mpmath.mpf(10) ** (-d + 2)
        values = promote(nodes, d)
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                if abs(values[i] - values[j]) < tol:
                    raise DegenerateInputError(f"Nodos {i} y {j} casi repetidos")


def equispaced_nodes(n: int, a=-1, b=1) -> NodeSet:
    """n+1 nodos racionales a + (b-a)k/n, crecientes."""
    if not isinstance(n, int) or n < 1:
        raise ArgumentError(f"Grado inválido para nodos equiespaciados: {n}")
    a, b = exact(a), exact(b)
    if a >= b:
        raise ArgumentError(f"Intervalo vacío: [{a}, {b}]")
    nodes = tuple(a + (b - a) * Fraction(k, n) for k in range(n + 1))
    return NodeSet(nodes, Provenance.EQUISPACED)


def chebyshev_nodes(n: int, digits: Optional[int] = None) -> NodeSet:
    """Nodos extremos cos(pi k/n), k = 0..n, decrecientes, calculados al doble de precisión."""
    if not isinstance(n, int) or n < 1:
        raise ArgumentError(f"Grado inválido para nodos de Chebyshev: {n}")
    d2 = 2 * resolve_digits(digits)
    with working_digits(d2):
        half = [mpmath.cospi(mpmath.mpf(k) / n) for k in range(n // 2 + 1)]
        nodes = [None] * (n + 1)
        for k, value in enumerate(half):
            nodes[k] = value
            nodes[n - k] = -value
        if n % 2 == 0:
            nodes[n // 2] = mpmath.mpf(0)
    return NodeSet(tuple(nodes), Provenance.CHEBYSHEV, digits=d2)


def custom_nodes(values: Iterable, digits: Optional[int] = None) -> NodeSet:
    values = tuple(exact(v) if isinstance(v, (int, str)) else v for v in values)
    return NodeSet(values, Provenance.CUSTOM, digits=None if is_exact(*values) else resolve_digits(digits))


def _check_index(k: int, size: int) -> None:
    if not isinstance(k, int) or not 0 <= k < size:
        raise ArgumentError(f"Índice de base fuera de rango: {k} (tamaño {size})")


def node_polynomial(nodes: NodeSet, x) -> Scalar:
    """Polinomio nodal l(x) = prod_j (x - x_j)."""
    x, xs = align(x, nodes.nodes)
    result = 1
    for xj in xs:
        result *= x - xj
    return result


@lru_cache(maxsize=64)
def barycentric_weights(nodes: NodeSet) -> tuple:
    """w_k = 1 / prod_{j != k} (x_k - x_j); exactos para nodos racionales."""
    with working_digits(nodes.digits):
        values = nodes.nodes
        weights = []
        for k, xk in enumerate(values):
            denom = 1
            for j, xj in enumerate(values):
                if j != k:
                    denom *= xk - xj
            weights.append(Fraction(1, denom) if isinstance(denom, int) else 1 / denom)
        return tuple(weights)


def lagrange_basis_value(nodes: NodeSet, k: int, x) -> Scalar:
    """l_k(x) directamente del producto de Lagrange; exacto con nodos y x racionales."""
    _check_index(k, len(nodes))
    with working_digits(nodes.digits):
        values = promote(nodes.nodes + (x,), nodes.digits)
        x, xs = values[-1], values[:-1]
        num, den = 1, 1
        for j, xj in enumerate(xs):
            if j != k:
                num *= x - xj
                den *= xs[k] - xj
        return Fraction(num, den) if isinstance(num, int) and isinstance(den, int) else num / den


def lagrange_basis_values(nodes: NodeSet, x, weights: Optional[tuple] = None) -> tuple:
    """Todos los l_k(x) con la primera forma baricéntrica: l(x) w_k / (x - x_k)."""
    weights = weights if weights is not None else barycentric_weights(nodes)
    n = len(nodes)
    with working_digits(nodes.digits) as d:
        values = promote(nodes.nodes + (x,) + tuple(weights), d)
        xs, x, weights = values[:n], values[n], values[n + 1:]
        hit = node_hit(xs, x, d)
        if hit is not None:
            return tuple(1 if k == hit else 0 for k in range(n))
        ell = 1
        for xj in xs:
            ell *= x - xj
        return tuple(ell * w / (x - xk) for w, xk in zip(weights, xs))


def node_hit(xs: Sequence, x, digits: int) -> Optional[int]:
    """Índice del nodo que coincide con x (exactamente o bajo 10^(-digits+2))."""
    if is_exact(*xs, x):
        for j, xj in enumerate(xs):
            if x == xj:
                return j
        return None
    tol = mpmath.mpf(10) ** (-digits + 2)
    for j, xj in enumerate(xs):
        if abs(x - xj) < tol:
            return j
    return None


def monomial_basis_value(k: int, x) -> Scalar:
    if not isinstance(k, int) or k < 0:
        raise ArgumentError(f"Índice de base fuera de rango: {k}")
    return x ** k


def _pullback(x, a, b):
    """Cambio afín [a, b] -> [0, 1]."""
    if a == 0 and b == 1:
        return x
    return (x - a) / (b - a)


def bernstein_basis_value(n: int, k: int, x, a=0, b=1) -> Scalar:
    """B_{k,n}(t) = C(n,k) t^k (1-t)^(n-k) con t la imagen de x en [0, 1]."""
    if not isinstance(n, int) or n < 0:
        raise ArgumentError(f"Grado de Bernstein inválido: {n}")
    _check_index(k, n + 1)
    if is_exact(x, a, b):
        x, a, b = exact(x), exact(a), exact(b)
    else:
        x, (a, b) = align(x, (a, b))
    t = _pullback(x, a, b)
    return math.comb(n, k) * t ** k * (1 - t) ** (n - k)


@dataclass(frozen=True)
class BasisSpec:
    kind: BasisKind
    degree: int
    nodes: Optional[NodeSet] = None
    interval: tuple = (0, 1)

    @classmethod
    def monomial(cls, degree: int) -> "BasisSpec":
        return cls(BasisKind.MONOMIAL, degree)

    @classmethod
    def lagrange(cls, nodes: NodeSet) -> "BasisSpec":
        return cls(BasisKind.LAGRANGE, nodes.degree, nodes=nodes)

    @classmethod
    def bernstein(cls, degree: int, a=0, b=1) -> "BasisSpec":
        if is_exact(a, b):
            a, b = exact(a), exact(b)
        if not a < b:
            raise ArgumentError(f"Intervalo de Bernstein vacío: [{a}, {b}]")
        return cls(BasisKind.BERNSTEIN, degree, interval=(a, b))

    @property
    def size(self) -> int:
        if self.kind is BasisKind.LAGRANGE:
            return len(self.nodes)
        return self.degree + 1

    def describe(self) -> str:
        if self.kind is BasisKind.LAGRANGE:
            return f"lagrange({self.nodes.provenance.value}, n={self.degree})"
        if self.kind is BasisKind.BERNSTEIN:
            a, b = self.interval
            return f"bernstein(n={self.degree}, [{a}, {b}])"
        return f"monomial(n={self.degree})"


def basis_values(basis: BasisSpec, x, weights: Optional[tuple] = None) -> tuple:
    """phi_k(x) para k = 0..size-1."""
    if basis.kind is BasisKind.MONOMIAL:
        values, power = [], 1
        for _ in range(basis.size):
            values.append(power)
            power *= x
        return tuple(values)
    if basis.kind is BasisKind.LAGRANGE:
        return lagrange_basis_values(basis.nodes, x, weights)
    a, b = basis.interval
    return tuple(bernstein_basis_value(basis.degree, k, x, a, b) for k in range(basis.size))


def basis_magnitudes(basis: BasisSpec, x, weights: Optional[tuple] = None) -> tuple:
    """|phi_k(x)|; en la base monomial basta con las potencias de |x|."""
    if basis.kind is BasisKind.MONOMIAL:
        return basis_values(basis, abs(x))
    return tuple(abs(v) for v in basis_values(basis, x, weights))
