"""Exact partition counts, q-series engines, proof maps and asymptotics for
Alder-type partition inequalities."""

__version__ = "0.1.0"
