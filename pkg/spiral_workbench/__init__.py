"""
Spiral Workbench
Exact, seeded verification of the spiral and Tot spectral sequences and of the
permutahedral combinatorics behind their higher differentials
"""

__version__ = "1.0.0"
