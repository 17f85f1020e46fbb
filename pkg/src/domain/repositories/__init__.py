"""Repository interfaces"""
from .demo_repository import DemoRepository
from .params_repository import ParamsRepository
from .result_repository import ResultRepository

__all__ = ["DemoRepository", "ParamsRepository", "ResultRepository"]
