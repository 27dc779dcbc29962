"""Numerical certification toolkit for polynomial convexity at desk scale.

Subpackages cover: symplectic/Lagrangian linear algebra, grid hulls of
planar compacts, Kallin certificates for disjoint ball unions, degree-bounded
hull-membership search, and totally-real / uniform-approximation experiments
on conjugate-polynomial varieties in C^2.
"""

__version__ = "0.1.0"
