"""Exact base-point locus multiplicities of rational surface parametrizations
and plane rational maps, via contents of resultants."""

from .baselocus import ParamSurface, analyze_surface, degree_formula_report, mult_base_locus
from .composition import composition_report, compose
from .planemaps import PlaneMap, analyze_plane_map, degmap_plane, mult_base_locus_plane
from .polycore import MPoly, format_poly, parse_poly
from .transform import ProjTransform

__all__ = [
    "MPoly",
    "ParamSurface",
    "PlaneMap",
    "ProjTransform",
    "analyze_plane_map",
    "analyze_surface",
    "composition_report",
    "compose",
    "degmap_plane",
    "degree_formula_report",
    "format_poly",
    "mult_base_locus",
    "mult_base_locus_plane",
    "parse_poly",
]
