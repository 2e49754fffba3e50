"""Exact-arithmetic construction and verification of Hom-Hopf algebras of
general (alpha, beta)-type: truncated universal enveloping Hom-Hopf algebras
of Hom-Lie algebras over weighted planar binary trees, matched and mutual
pair checking, double cross products, bicrossproducts, and semidualization.
All coefficients are rational and every check is exact."""

__version__ = "0.1.0"
