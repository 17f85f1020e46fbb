"""Domain value objects"""
from .aggregation_mode import AggregationMode
from .algorithm import Algorithm
from .demo_role import DemoRole
from .feature_kind import FeatureKind
from .grid_action import GridAction
from .terrain import FEATURE_TERRAINS, START_CHAR, Terrain

__all__ = [
    "AggregationMode",
    "Algorithm",
    "DemoRole",
    "FeatureKind",
    "GridAction",
    "Terrain",
    "FEATURE_TERRAINS",
    "START_CHAR",
]
