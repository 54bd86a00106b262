"""Exact rational domination densities.

All inequality decisions in the toolkit happen on ``fractions.Fraction``;
floats only ever appear in human-readable rendering, next to the exact
value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .domination import GammaCache, check_vizing, gamma_value
from .graphs import DEFAULT_MAX_PRODUCT_VERTICES, Graph, cartesian_product


@dataclass(frozen=True)
class Density:
    """gamma / order, with the unreduced denominator kept alongside."""

    gamma: int
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("density needs a positive order")
        if not 1 <= self.gamma <= self.order:
            raise ValueError("gamma must lie in 1..order")

    @property
    def value(self) -> Fraction:
        return Fraction(self.gamma, self.order)

    def __str__(self) -> str:
        return f"{self.gamma}/{self.order}"


def as_fraction(x) -> Fraction:
    """Accept a Density, Fraction, int, or 'p/q' string."""
    if isinstance(x, Density):
        return x.value
    return Fraction(x)


def rho(g: Graph, cache: GammaCache | None = None) -> Density:
    """Domination density gamma(g) / |V(g)|."""
    return Density(gamma_value(g, cache), g.n)


def density_vizing_check(g: Graph, h: Graph, cache: GammaCache | None = None,
                         max_vertices: int = DEFAULT_MAX_PRODUCT_VERTICES) -> bool:
    """The density form of the product inequality, in exact rationals.

    Algebraically equivalent to the integer form, and asserted to agree with
    ``check_vizing`` in the test suite (exact arithmetic makes the
    equivalence literally testable).
    """
    product = cartesian_product(g, h, max_vertices)
    rho_p = Fraction(gamma_value(product.graph, cache), g.n * h.n)
    return rho_p >= rho(g, cache).value * rho(h, cache).value


__all__ = [
    "Density",
    "as_fraction",
    "rho",
    "density_vizing_check",
    "check_vizing",
]
