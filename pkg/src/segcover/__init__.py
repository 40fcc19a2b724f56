"""Sensor placement for covering line segments with disks of radius rho."""

from .errors import ParseError, ResourceLimitError, SegcoverError, ValidationError
from .geom import Hippodrome, Point, Rect, Segment, get_tol, set_tol
from .instance import (
    CoverageReport,
    Instance,
    Placement,
    parse_instance,
    parse_placement,
    random_instance,
    serialize_instance,
    serialize_placement,
    verify_cover,
)

__version__ = "0.1.0"
