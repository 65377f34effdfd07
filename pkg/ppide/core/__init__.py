"""Numerical core: jump model, grids, banded algebra, steppers and reference solvers."""
