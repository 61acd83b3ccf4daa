"""quantcurve: exact topological recursion, free energies, and quantum curves.

All arithmetic is exact (Fractions end to end).  See the README for the
module map and the command line interface.
"""

from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
__all__ = ["KERNEL_BACKEND", "__version__"]
