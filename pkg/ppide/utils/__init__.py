"""Utility helpers — logging, output paths, interpolation weights, and custom exceptions."""
