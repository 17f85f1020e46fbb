"""
Parameter Store

JSON documents for learned TaskParams and Reptile MetaStates.
"""
import json
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from src.domain.entities.meta_state import MetaState, MetaStep
from src.domain.entities.task_params import TaskParams
from src.domain.exceptions.validation_exceptions import ValidationException
from src.domain.repositories.params_repository import ParamsRepository

TASK_PARAMS_FORMAT = "mtirl-task-params v1"
META_STATE_FORMAT = "mtirl-meta-state v1"


def _read_document(path: Path, expected_format: str) -> Dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise ValidationException(f"Parameter file not found: {path}", "params")
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValidationException(f"{path}: invalid JSON ({e})", "params") from e
    if document.get("format") != expected_format:
        raise ValidationException(
            f"{path}: expected format '{expected_format}', got '{document.get('format')}'", "params"
        )
    return document


def _write_document(document: Dict[str, Any], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


class JsonParamsRepository(ParamsRepository):
    """TaskParams and MetaState persistence as JSON"""

    def save_task_params(
        self,
        params: TaskParams,
        path: Path,
        fit_metadata: Optional[Dict[str, Any]] = None,
    ) -> Path:
        document = {
            "format": TASK_PARAMS_FORMAT,
            "task_labels": list(params.task_labels),
            "thetas": params.thetas.tolist(),
            "mean": params.mean.tolist(),
            "lambda": params.lam,
            "feature_kind": params.feature_kind,
            "seed": params.seed,
            "fit": fit_metadata or {},
        }
        return _write_document(document, path)

    def load_task_params(self, path: Path) -> TaskParams:
        document = _read_document(path, TASK_PARAMS_FORMAT)
        return TaskParams(
            task_labels=tuple(document["task_labels"]),
            thetas=np.array(document["thetas"], dtype=float),
            lam=float(document["lambda"]),
            feature_kind=document.get("feature_kind"),
            seed=document.get("seed"),
        )

    def save_meta_state(self, state: MetaState, path: Path) -> Path:
        document = {
            "format": META_STATE_FORMAT,
            "phi": state.phi.tolist(),
            "outer_lr": state.outer_lr,
            "inner_steps": state.inner_steps,
            "inner_lr": state.inner_lr,
            "outer_iters": state.outer_iters,
            "seed": state.seed,
            "history": [
                {
                    "outer_step": step.outer_step,
                    "task_label": step.task_label,
                    "start_phi": step.start_phi.tolist(),
                    "end_theta": step.end_theta.tolist(),
                }
                for step in state.history
            ],
        }
        return _write_document(document, path)

    def load_meta_state(self, path: Path) -> MetaState:
        document = _read_document(path, META_STATE_FORMAT)
        history = tuple(
            MetaStep(
                outer_step=item["outer_step"],
                task_label=item["task_label"],
                start_phi=np.array(item["start_phi"], dtype=float),
                end_theta=np.array(item["end_theta"], dtype=float),
            )
            for item in document.get("history", [])
        )
        return MetaState(
            phi=np.array(document["phi"], dtype=float),
            outer_lr=float(document["outer_lr"]),
            inner_steps=int(document["inner_steps"]),
            inner_lr=float(document["inner_lr"]),
            outer_iters=int(document["outer_iters"]),
            seed=document.get("seed"),
            history=history,
        )


_default_repository = JsonParamsRepository()


def save_task_params(params: TaskParams, path: Path, fit_metadata: Optional[Dict[str, Any]] = None) -> Path:
    return _default_repository.save_task_params(params, path, fit_metadata)


def load_task_params(path: Path) -> TaskParams:
    return _default_repository.load_task_params(path)


def save_meta_state(state: MetaState, path: Path) -> Path:
    return _default_repository.save_meta_state(state, path)


def load_meta_state(path: Path) -> MetaState:
    return _default_repository.load_meta_state(path)
