"""Spin and pseudospin SU(2) symmetries of the Dirac equation.

Thin wrapper over the compiled extension: exact gamma-algebra checks,
classification of coupling Lorentz structures, generator verification, and
the slab/radial bound-state solvers.
"""

try:
    from ._diracsym import *  # noqa: F401,F403
    from ._diracsym import __version__  # noqa: F401
except ImportError:  # extension built outside the package (plain CMake build)
    from _diracsym import *  # noqa: F401,F403
    from _diracsym import __version__  # noqa: F401
