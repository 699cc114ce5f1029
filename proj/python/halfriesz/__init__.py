"""Numerical laboratory for a nonlocal Neumann boundary problem on the
upper half space: Riesz-potential boundary operators, closed-form solution
families, descent certificates and a constructive fixed-point solver.

Everything is implemented in the C++ core; this package re-exports it.
"""

try:
    from ._halfriesz import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _halfriesz import *  # noqa: F401,F403  (build-tree layout)
