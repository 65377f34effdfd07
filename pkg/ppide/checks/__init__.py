"""Dependency and environment health checks for ppide."""
