"""Matrix functional calculus and spectral Nevanlinna-Pick necessary conditions.

The subpackages are plain modules; the most used names are re-exported here.
"""

from .config import DEFAULT, Config
from .discgeo import BlaschkeProduct, blaschke_eval, blaschke_preimage, minimal_blaschke, mobius_distance
from .errors import (
    AssertionReport,
    InputError,
    NevpickError,
    NumericalError,
)
from .funcalc import (
    BlaschkeFunction,
    PolynomialFunction,
    RationalFunction,
    TableFunction,
    apply,
    ord_of_vanishing,
    predicted_minpoly,
)
from .nptest import InterpolationData, Verdict, check_three_point, check_two_point
from .polynomials import ComplexPoly, pi_n, roots
from .spectra import chi, companion, minimal_polynomial, minimal_polynomial_oracle, spectral_data, spectral_radius

__version__ = "0.1.0"

__all__ = [
    "DEFAULT",
    "Config",
    "BlaschkeProduct",
    "blaschke_eval",
    "blaschke_preimage",
    "minimal_blaschke",
    "mobius_distance",
    "AssertionReport",
    "InputError",
    "NevpickError",
    "NumericalError",
    "BlaschkeFunction",
    "PolynomialFunction",
    "RationalFunction",
    "TableFunction",
    "apply",
    "ord_of_vanishing",
    "predicted_minpoly",
    "InterpolationData",
    "Verdict",
    "check_three_point",
    "check_two_point",
    "ComplexPoly",
    "pi_n",
    "roots",
    "chi",
    "companion",
    "minimal_polynomial",
    "minimal_polynomial_oracle",
    "spectral_data",
    "spectral_radius",
]
