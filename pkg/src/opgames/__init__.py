"""Compositional open parity games."""
