"""dgs: Dirichlet forms, ground states and spectra on finite weighted graphs."""

__version__ = "0.1.0"
