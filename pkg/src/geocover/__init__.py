"""Geodesic unit-disk covering of simple polygon boundaries."""

from .center import CenterResult, geodesic_center, test_cover
from .corridor import extract_corridors, large_perimeter_cover, medial_axis
from .disk import disk_boundary, disk_disk_intersections, region_contains
from .errors import (
    AllCoverable,
    GeoCoverError,
    InstanceError,
    InvalidPolygon,
    NumericalCertificationFailure,
    OracleTimeout,
    PointOutsidePolygon,
)
from .generators import generate_random_polygon
from .geometry import BoundaryPoint, Point2, SimplePolygon, orient, validate_polygon
from .greedy import CoverSolution, contiguous_greedy
from .io import ProblemInstance, emit_solution, parse_instance
from .oracle import (
    brute_force_distance,
    brute_force_opt,
    maximality_check,
    packing_lower_bound,
    verify_coverage,
)
from .shortest_path import distance_profile, geodesic_distance, shortest_path, shortest_path_tree

__all__ = [
    "AllCoverable",
    "BoundaryPoint",
    "CenterResult",
    "CoverSolution",
    "GeoCoverError",
    "InstanceError",
    "InvalidPolygon",
    "NumericalCertificationFailure",
    "OracleTimeout",
    "Point2",
    "PointOutsidePolygon",
    "ProblemInstance",
    "SimplePolygon",
    "brute_force_distance",
    "brute_force_opt",
    "contiguous_greedy",
    "disk_boundary",
    "disk_disk_intersections",
    "distance_profile",
    "emit_solution",
    "extract_corridors",
    "generate_random_polygon",
    "geodesic_center",
    "geodesic_distance",
    "large_perimeter_cover",
    "maximality_check",
    "medial_axis",
    "orient",
    "packing_lower_bound",
    "parse_instance",
    "region_contains",
    "shortest_path",
    "shortest_path_tree",
    "test_cover",
    "validate_polygon",
]
