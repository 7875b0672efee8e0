"""monofour: exact computer algebra for shift-operator modules, windowed
Mellin lattices, cyclic group algebras, and finite-field Fourier checks."""

__version__ = "0.1.0"
