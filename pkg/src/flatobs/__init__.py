"""Exact-arithmetic toolkit for compactification obstructions of section families.

Given a smooth projective variety and a (possibly singular or reducible)
hyperplane or quadric section, the package computes Betti vectors, local
intersection-cohomology dimensions, and a one-directional verdict: either the
family admits no flat regular compactification, none with irreducible fibers,
or no obstruction was found.  All arithmetic is exact (rationals only).
"""

__version__ = "0.1.0"
