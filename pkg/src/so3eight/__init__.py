"""Exact rational algebra for the irreducible SO(3) action on R^8.

Representation ring of SO(3), subalgebras of so(8), invariant exterior
forms, characteristic classes and intrinsic torsion, all over the rationals.
"""
__version__ = "0.1.0"
