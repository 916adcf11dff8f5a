"""Constraint enumeration for semisimple Hopf algebras of dimension p^2 q^2."""

__version__ = "0.1.0"
