"""Exactness checks for equivariant cohomology sequences of torus spaces."""

from .ring import GF, QQ, ZZ, CoefficientRing, make_ring

__all__ = ["CoefficientRing", "GF", "QQ", "ZZ", "make_ring"]
