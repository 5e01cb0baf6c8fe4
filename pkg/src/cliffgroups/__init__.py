"""Clifford algebras Cl(p,q), their real matrix representations, and the
SpO Lie groups with their classical-group classification."""

__version__ = "0.1.0"
