"""Interior transmission eigenvalues by boundary integrals and contour projection."""
from .geometry import BoundaryCurve, Mesh, build_mesh, make_shape, SHAPES
from .rim import RimConfig, schur_operator, rim_indicator, scan_interval, scan_complex_grid

__version__ = "0.1.0"

__all__ = ["BoundaryCurve", "Mesh", "build_mesh", "make_shape", "SHAPES", "RimConfig",
           "schur_operator", "rim_indicator", "scan_interval", "scan_complex_grid"]
