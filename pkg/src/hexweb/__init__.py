"""Hexagonal 3-webs of circular arcs: construction, closure tracing, straightening charts and figures."""

from .catalog import CATALOG, build, preset, preset_names
from .config import WebConfig
from .geom import Circle, Domain, GenCircle, Line, Point, intersect
from .hexagon import DefectReport, HexTrace, defect_scan, trace_hexagon
from .webs import Foliation, Web3

__version__ = "0.1.0"

__all__ = [
    "CATALOG", "Circle", "DefectReport", "Domain", "Foliation", "GenCircle", "HexTrace", "Line", "Point",
    "Web3", "WebConfig", "build", "defect_scan", "intersect", "preset", "preset_names", "trace_hexagon",
]
