"""Special functions, quadrature, and the two bounded confluent-ODE families."""

from .asymptotics import FitError, SingularFit, asymptotic_exponent, fit_singular
from .bounded import (
    BoundedHyperSolution,
    BoundedLegendreSolution,
    bounded_hyper,
    bounded_legendre,
    ode_derivative,
    singular_index,
)
from .orthopoly import (
    hermite,
    hermite_scaled,
    laguerre,
    laguerre_product,
    multi_indices,
    phi_k,
)
from .quadrature import QuadratureRule, gauss_hermite, gauss_laguerre
from .series import hyp0f1, hyp1f1, pochhammer

__all__ = [
    "BoundedHyperSolution",
    "BoundedLegendreSolution",
    "FitError",
    "QuadratureRule",
    "SingularFit",
    "asymptotic_exponent",
    "bounded_hyper",
    "bounded_legendre",
    "fit_singular",
    "gauss_hermite",
    "gauss_laguerre",
    "hermite",
    "hermite_scaled",
    "hyp0f1",
    "hyp1f1",
    "laguerre",
    "laguerre_product",
    "multi_indices",
    "ode_derivative",
    "phi_k",
    "pochhammer",
    "singular_index",
]
