"""Lasting efficiency under nested polyhedral ordering cones, in exact arithmetic."""

__version__ = "0.1.0"
