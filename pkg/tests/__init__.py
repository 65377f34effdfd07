"""Test suite for ppide."""
