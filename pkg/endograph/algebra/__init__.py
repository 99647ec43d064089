"""Exact graded-commutative algebra over the rationals: elements, Sullivan algebras, morphisms, linear algebra."""
