"""Certified hyperbolicity and exceptional Dehn filling search.

Interval arithmetic with outward rounding, ideal triangulations of link
complements, Krawczyk-test certification of tetrahedral shapes, cusp
geometry with short slope enumeration, enumeration of augmented
alternating links on the nine plane graphs, and the recursive filling
search with its batch runner.
"""

__version__ = "0.1.0"
