"""Boundary-integral solvers for scattering by high-aspect-ratio ellipses.

Subpackages implement, in dependency order: special functions
(:mod:`specfun`), ellipse geometry and integral kernels
(:mod:`geometry`), the quadrature grid with parity/spectral operators
(:mod:`parity`), dense complex linear algebra (:mod:`linalg`), the
interior Laplace Dirichlet solvers (:mod:`laplace`), the Mathieu-series
reference solutions (:mod:`mathieu`), the Helmholtz scattering solvers
(:mod:`helmholtz`), and the sweep/CSV harness (:mod:`harness`) with its
command line in :mod:`cli`.
"""

__version__ = "0.1.0"
