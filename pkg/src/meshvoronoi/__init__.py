"""Planar Delaunay/Voronoi construction by Voronoi refinement followed by
kinetic removal of the Steiner points."""

__version__ = "0.1.0"

from .kernel import EventTime, Sign, WeightClass, flip_time, incircle_at, orient2d  # noqa: E402
from .pipeline import PipelineConfig, compute  # noqa: E402
from .simplices import SimplexSet  # noqa: E402

__all__ = [
    "EventTime",
    "PipelineConfig",
    "Sign",
    "SimplexSet",
    "WeightClass",
    "compute",
    "flip_time",
    "incircle_at",
    "orient2d",
]
