"""Exact verification of k-symplectic and k-para-Kähler Lie algebras and the
left-symmetric structures that build them."""

__version__ = "0.1.0"
