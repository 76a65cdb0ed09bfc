"""Classification toolkit for unions of totally geodesic thrice-punctured
spheres in hyperbolic 3-manifolds: exact arithmetic, plane arrangements,
holonomy normalization, a cusp-modulus feasible region, combinatorial
classification, homology enumeration, norm polytopes, and volume bounds."""

__version__ = "0.1.0"
