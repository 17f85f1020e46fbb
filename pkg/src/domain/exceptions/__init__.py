"""Domain exceptions"""
from .domain_exceptions import (
    DemoFileNotFoundException,
    DimensionMismatchException,
    EmptyDemoSetException,
    EmptyGroupException,
    FitDivergenceException,
    IrlDomainException,
    PlannerConvergenceException,
    SingularSystemException,
    TaskFailedException,
    ZeroProbabilityActionException,
)
from .validation_exceptions import (
    AllWallGridException,
    ConfigValidationException,
    DiscountOutOfRangeException,
    EmptyGridException,
    GridParseException,
    MdpValidationException,
    NonStochasticInitialDistributionException,
    NonStochasticTransitionException,
    RaggedRowsException,
    ShapeMismatchException,
    UnknownCellException,
    ValidationException,
)

__all__ = [
    "IrlDomainException",
    "PlannerConvergenceException",
    "SingularSystemException",
    "ZeroProbabilityActionException",
    "EmptyDemoSetException",
    "DimensionMismatchException",
    "FitDivergenceException",
    "TaskFailedException",
    "EmptyGroupException",
    "DemoFileNotFoundException",
    "ValidationException",
    "MdpValidationException",
    "ShapeMismatchException",
    "NonStochasticTransitionException",
    "NonStochasticInitialDistributionException",
    "DiscountOutOfRangeException",
    "GridParseException",
    "EmptyGridException",
    "RaggedRowsException",
    "UnknownCellException",
    "AllWallGridException",
    "ConfigValidationException",
]
