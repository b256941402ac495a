"""Trace repair for Reed-Solomon and Hermitian evaluation codes.

The package is organised as:

- ``gf``      finite-field towers GF(p) <= GF(q), trace, dual bases,
              linearized maps
- ``linalg``  exact dense linear algebra over GF(q)
- ``codes``   Reed-Solomon and Hermitian one-point evaluation codes,
              erasure decoding, vanishing functions, dual-support vectors
- ``repair``  the sub-symbol download protocol: scheme construction,
              helper responses, reconstruction, bandwidth accounting
- ``bounds``  closed-form bandwidth/storage bounds and comparison tables
- ``sim``     in-memory storage-cluster simulator with JSON state files
- ``cli``     the ``agrepair`` command-line front end
"""

from .gf import FieldElement, FieldTower, LinearizedMap, tower, trace_reconstruct

__all__ = [
    "FieldElement",
    "FieldTower",
    "LinearizedMap",
    "tower",
    "trace_reconstruct",
]
