"""Exact single-source shortest paths in unit disk graphs without building the edge set."""
from .delaunay import DelaunayTriangulation, build_delaunay, neighbors
from .geom import Circle, Orientation, Point, PointSet, incircle, orientation, squared_distance
from .nn_index import NnIndex, build_nn, nearest
from .tree import NIL, UNREACHABLE, ShortestPathTree
from .unweighted import LevelSet, levels, unweighted_sssp
from .wbcp import WbcpIndex, WeightedBlue, wbcp_new
from .weighted import Color, color_trace, weighted_sssp

__all__ = [
    "Circle", "Color", "DelaunayTriangulation", "LevelSet", "NIL", "NnIndex", "Orientation",
    "Point", "PointSet", "ShortestPathTree", "UNREACHABLE", "WbcpIndex", "WeightedBlue",
    "build_delaunay", "build_nn", "color_trace", "incircle", "levels", "nearest", "neighbors",
    "orientation", "squared_distance", "unweighted_sssp", "wbcp_new", "weighted_sssp",
]
