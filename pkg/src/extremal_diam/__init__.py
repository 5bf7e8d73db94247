"""Diameter and eccentricity algorithms for graphs with few extremities."""

__version__ = "0.1.0"
