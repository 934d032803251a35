"""Exact Demazure-Lusztig / Iwahori-Hecke operator calculus on coweight
group algebras, with machine checks of Casselman-Shalika type identities
for simply-laced finite and untwisted-affine root systems.
"""

__version__ = "0.1.0"

from .rootdata import RootSystemSpec  # noqa: F401
from .vseries import AnchoredSeries, VPoly  # noqa: F401
