"""Convolutional and block codes over finite commutative chain rings."""

from .rings import (ChainRingSpec, GaloisRing, RingElement,
                    TruncatedPolyRing, make_ring, residue_ring, zmod)

__all__ = [
    "ChainRingSpec", "GaloisRing", "RingElement", "TruncatedPolyRing",
    "make_ring", "residue_ring", "zmod",
]

__version__ = "0.1.0"
