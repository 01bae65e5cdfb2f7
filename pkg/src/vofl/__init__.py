"""Meshfree radial-basis-function discretization of the variable-order
fractional Laplacian (-Delta)^(alpha(x)/2)."""

__version__ = "0.1.0"
