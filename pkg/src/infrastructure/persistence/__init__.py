"""Persistence adapters"""
from .demo_store import TextDemoRepository, load_demo_set, save_demo_set
from .params_store import (
    JsonParamsRepository,
    load_meta_state,
    load_task_params,
    save_meta_state,
    save_task_params,
)
from .result_store import CsvResultRepository, RESULT_COLUMNS, metadata_path, timings_path

__all__ = [
    "TextDemoRepository",
    "load_demo_set",
    "save_demo_set",
    "JsonParamsRepository",
    "load_meta_state",
    "load_task_params",
    "save_meta_state",
    "save_task_params",
    "CsvResultRepository",
    "RESULT_COLUMNS",
    "metadata_path",
    "timings_path",
]
