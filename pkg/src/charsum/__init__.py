"""Convolution sums of Dirichlet characters over the hyperbola ``xy <= T``."""
