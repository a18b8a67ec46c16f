"""Exact computer-algebra kernel for rings graded by subgroups of Q^d.

Subpackages cover rational-lattice linear algebra, exact coefficient
fields, symmetric 2-cocycles and their class operations, twisted group
algebras, the direct-limit graded field built along a prime schedule,
and multigraded Hilbert functions/series with summability certificates.
"""

__version__ = "0.1.0"
