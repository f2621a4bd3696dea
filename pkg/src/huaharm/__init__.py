"""Bounded harmonic functions for invariant operators on the Siegel and tube domains:
special functions, Heisenberg analysis, Poisson-type kernels, Jordan-algebra
tube groups and Hua operators."""

from . import heisenberg, hua, jordan, kernels, oracles, specfun

__version__ = "0.1.0"

__all__ = ["heisenberg", "hua", "jordan", "kernels", "oracles", "specfun", "__version__"]
