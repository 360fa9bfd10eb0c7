"""Curve calculus on punctured surfaces of genus at most two."""

from .triangulation import SurfaceError, SurfaceSpec, Triangulation, build_base_triangulation, flip

__all__ = ["SurfaceError", "SurfaceSpec", "Triangulation", "build_base_triangulation", "flip"]
__version__ = "0.1.0"
