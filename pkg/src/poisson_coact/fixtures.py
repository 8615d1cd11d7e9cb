"""Small Poisson algebras used throughout the tests and demos."""
from __future__ import annotations

from .algebra import PoissonAlgebraData, from_rules


def field() -> PoissonAlgebraData:
    """The ground field Q as a one-dimensional Poisson algebra."""
    return from_rules(["1"])


def dual_numbers() -> PoissonAlgebraData:
    """Q[x]/(x^2) with zero bracket."""
    return from_rules(["1", "x"])


def square_zero_lie() -> PoissonAlgebraData:
    """Basis 1, x, y with all products of x, y zero and [x, y] = x."""
    return from_rules(["1", "x", "y"], brackets={("x", "y"): {"x": 1}})


def square_zero_abelian() -> PoissonAlgebraData:
    """Basis 1, x, y with all products of x, y zero and zero bracket."""
    return from_rules(["1", "x", "y"])


def bad_unit_bracket() -> PoissonAlgebraData:
    """Basis 1, x with [1, x] = x: violates the Leibniz rule."""
    return PoissonAlgebraData(
        2, ["1", "x"],
        mul={(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1},
        bracket={(0, 1, 1): 1, (1, 0, 1): -1},
    )


def bad_associativity() -> PoissonAlgebraData:
    """Basis 1, x, y with x^2 = y, xy = x, y^2 = 0: (xx)y != x(xy)."""
    return from_rules(["1", "x", "y"], products={("x", "x"): {"y": 1}, ("x", "y"): {"x": 1}})


STANDARD = {
    "field": field,
    "dual_numbers": dual_numbers,
    "square_zero_lie": square_zero_lie,
}
