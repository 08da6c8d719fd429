"""Degree filtrations on finite torus-fixed point sets.

The associated graded ring of the filtration by polynomial degree is compared
with cohomology oracles: the Weyl coinvariant algebra and length distribution
for flag varieties, and h-vectors and conewise polynomials for toric varieties.
"""

from .errors import InputError
from .filtration import PointConfig, degree_filtration
from .flagpipe import FlagInput, flag_report
from .toricpipe import Fan, SupportPolytope, make_fan, parse_fan, toric_report

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "PointConfig",
    "degree_filtration",
    "FlagInput",
    "flag_report",
    "Fan",
    "SupportPolytope",
    "make_fan",
    "parse_fan",
    "toric_report",
]
