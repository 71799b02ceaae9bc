"""Numerical laboratory for representations of the Heisenberg-Weyl Lie algebra.

Subpackages
-----------
numkernel   dense complex linear algebra and Gaussian quadrature
rootsys     type-C root combinatorics, closed subsets and closures
sympembed   integer matrix models and the symplectic embedding
irreps      defining / symmetric-power / primitive wedge-square modules
indecomp    commutant-based indecomposability certificates
oscillator  truncated Hermite-basis oscillator realization
intertwine  tensor-product intertwiners and lowest-weight states
suites      named verification suites over all of the above
cli         command-line runner emitting machine-readable reports
"""

from .core import Check, GeneratorRep, InconclusiveError, VerificationReport

__all__ = [
    "Check",
    "GeneratorRep",
    "InconclusiveError",
    "VerificationReport",
]

__version__ = "0.1.0"
