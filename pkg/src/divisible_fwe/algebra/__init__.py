"""Exact scalars, polynomials and linear algebra over Q and real quadratic fields."""
