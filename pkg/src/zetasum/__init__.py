"""Certified estimation of weighted sums over Riemann zeta zero ordinates.

The package computes enclosures for sums of the form sum phi(gamma) over the
positive ordinates gamma of nontrivial zeta zeros, where phi is a positive,
decreasing, convex weight.  The workhorse identity replaces the unknown tail
of the sum by a smooth integral plus a boundary term in the zero-counting
remainder, leaving an error whose size is controlled by explicit constants;
that turns a few hundred computed zeros into ten or more certified digits.

Layers, bottom up:

  ball        midpoint-radius arithmetic (the numeric carrier everywhere)
  theta       the argument function theta(t), Gram points, counting series
  zeros       Hardy Z, zero finding/import, the counting function N(T)
  phifunc     weight-expression DSL, symbolic derivatives, admissibility
  quadrature  certified panels, tail transforms, logarithmic integral
  estimator   the sum/integral identities and their error budgets
  cli         command-line front end (`zetasum ...`)

Precision is global and fixed at startup (ZETASUM_PRECISION_BITS, default
128 bits); see config.
"""

from . import config  # noqa: F401  (applies env precision on import)
from .ball import (
    Ball,
    ball_atan2,
    ball_cos,
    ball_euler_gamma,
    ball_exp,
    ball_log,
    ball_pi,
    ball_pow,
    ball_sin,
    ball_sqrt,
    ball_two_pi,
    format_ball,
)
from .errors import (
    AdmissibilityError,
    AmbiguousQueryError,
    CompletenessError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    FileFormatError,
    ParseError,
    ZetasumError,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "ball_atan2",
    "ball_cos",
    "ball_euler_gamma",
    "ball_exp",
    "ball_log",
    "ball_pi",
    "ball_pow",
    "ball_sin",
    "ball_sqrt",
    "ball_two_pi",
    "format_ball",
    "ZetasumError",
    "DomainError",
    "ParseError",
    "AdmissibilityError",
    "FileFormatError",
    "CompletenessError",
    "ConvergenceError",
    "DivergenceError",
    "AmbiguousQueryError",
    "config",
    "__version__",
]
