"""Certify rep.dim B = 3 for cluster-concealed algebras B."""

__version__ = "0.1.0"
