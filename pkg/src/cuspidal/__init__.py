"""Differential geometry of cuspidal edges with boundary, singular space curves and flat ruled surfaces."""

from .errors import GeometryError
from .jets import Jet1, Jet2
from .surface import NormalFormData, SurfaceGerm, reduce_to_normal_form
from .curves import CurveGerm

__all__ = ["GeometryError", "Jet1", "Jet2", "NormalFormData", "SurfaceGerm",
           "reduce_to_normal_form", "CurveGerm"]
__version__ = "0.1.0"
