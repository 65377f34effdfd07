"""Experiment configuration, runners and CSV result writers."""
