"""City-level coauthorship networks and diffusion indicators."""

__version__ = "0.1.0"
