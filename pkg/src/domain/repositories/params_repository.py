"""
Parameter Repository Interface

Defines the contract for learned reward weights and meta-initialisations.
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Optional

from ..entities.meta_state import MetaState
from ..entities.task_params import TaskParams


class ParamsRepository(ABC):
    """
    Repository interface for TaskParams and MetaState documents
    """

    @abstractmethod
    def save_task_params(
        self,
        params: TaskParams,
        path: Path,
        fit_metadata: Optional[Dict[str, Any]] = None,
    ) -> Path:
        pass

    @abstractmethod
    def load_task_params(self, path: Path) -> TaskParams:
        pass

    @abstractmethod
    def save_meta_state(self, state: MetaState, path: Path) -> Path:
        pass

    @abstractmethod
    def load_meta_state(self, path: Path) -> MetaState:
        pass
