"""Logging infrastructure"""
from .logger import (
    ExperimentLogger,
    ReadableExperimentFormatter,
    StructuredFormatter,
    configure_logger,
    get_logger,
)

__all__ = [
    "ExperimentLogger",
    "ReadableExperimentFormatter",
    "StructuredFormatter",
    "configure_logger",
    "get_logger",
]
