"""Topology of photon-mediated emitter Hamiltonians in Hermitian and non-Hermitian baths."""

__version__ = "0.1.0"
