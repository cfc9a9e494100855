"""Exact symbolic and numeric verification lab for a q-oscillator lattice
with a boundary."""

__version__ = "0.1.0"
