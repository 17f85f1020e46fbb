"""
Unit tests for demo, parameter and result files
"""
import json
import math

import numpy as np
import pandas as pd
import pytest

from src.domain.entities.meta_state import MetaState, MetaStep
from src.domain.entities.task_params import TaskParams
from src.domain.entities.trajectory import DemoSet
from src.domain.exceptions.domain_exceptions import DemoFileNotFoundException
from src.domain.exceptions.validation_exceptions import (
    NegativeIndexException,
    ValidationException,
)
from src.infrastructure.persistence.demo_store import MAGIC, TextDemoRepository
from src.infrastructure.persistence.params_store import JsonParamsRepository
from src.infrastructure.persistence.result_store import (
    RESULT_COLUMNS,
    CsvResultRepository,
    metadata_path,
    timings_path,
)


@pytest.fixture
def demo_set():
    return DemoSet(
        task_label="A+B",
        states=np.array([[0, 1, 2], [3, 3, 0]]),
        actions=np.array([[1, 0, 3], [2, 2, 1]]),
        horizon=2,
        seed=1234,
    )


def result_row(algorithm="single", target="A", m=2, lam=float("nan"), seed=0, value=1.0, status="ok"):
    return {
        "algorithm": algorithm,
        "target_task": target,
        "m": m,
        "lambda": lam,
        "seed": seed,
        "value": value,
        "oracle_value": 2.0,
        "expert_value": 1.5,
        "status": status,
        "error": "" if status == "ok" else "FitDivergenceException: diverged",
        "wall_clock_seconds": 0.123,
    }


@pytest.mark.unit
class TestTextDemoRepository:
    """Test suite for the demo text format"""

    def test_file_layout(self, tmp_path, demo_set):
        """Test header lines and one 's,a' line per trajectory"""
        path = TextDemoRepository().save(demo_set, tmp_path / "sub" / "a.demos")
        lines = path.read_text().splitlines()
        assert lines[0] == MAGIC
        assert "# task_label: A+B" in lines
        assert "# horizon: 2" in lines
        assert "# seed: 1234" in lines
        assert "# n: 2" in lines
        assert any(line.startswith("# rng: numpy.random.PCG64") for line in lines)
        assert lines[-2:] == ["0,1 1,0 2,3", "3,2 3,2 0,1"]

    def test_load_restores_set(self, tmp_path, demo_set):
        """Test saved demos load back unchanged"""
        repository = TextDemoRepository()
        loaded = repository.load(repository.save(demo_set, tmp_path / "a.demos"))
        assert (loaded.task_label, loaded.horizon, loaded.seed, loaded.n) == ("A+B", 2, 1234, 2)
        np.testing.assert_array_equal(loaded.states, demo_set.states)
        np.testing.assert_array_equal(loaded.actions, demo_set.actions)

    def test_empty_set(self, tmp_path):
        """Test a zero-shot target file"""
        repository = TextDemoRepository()
        path = repository.save(DemoSet.empty("A", horizon=5, seed=9), tmp_path / "empty.demos")
        loaded = repository.load(path)
        assert loaded.is_empty and loaded.horizon == 5 and loaded.seed == 9

    def test_missing_file(self, tmp_path):
        """Test a missing file raises the domain error"""
        with pytest.raises(DemoFileNotFoundException):
            TextDemoRepository().load(tmp_path / "absent.demos")

    @pytest.mark.parametrize("text", [
        "not a demo file\n",
        f"{MAGIC}\n# task_label: A\n# horizon: 1\n# seed: 0\n",
        f"{MAGIC}\n# task_label: A\n# horizon: 1\n# seed: 0\n# n: 2\n0,0 1,1\n",
        f"{MAGIC}\n# task_label: A\n# horizon: 1\n# seed: 0\n# n: 1\n0,0 1,1 2,2\n",
        f"{MAGIC}\n# task_label: A\n# horizon: 1\n# seed: 0\n# n: 1\n0,0 x,1\n",
        f"{MAGIC}\n# no separator\n",
    ])
    def test_malformed_files(self, tmp_path, text):
        """Test format violations raise ValidationException"""
        path = tmp_path / "bad.demos"
        path.write_text(text)
        with pytest.raises(ValidationException):
            TextDemoRepository().load(path)

    @pytest.mark.parametrize("body", ["0,0 -1,1", "0,-2 1,1"])
    def test_negative_indices(self, tmp_path, body):
        """Test a negative state or action in a file is rejected on load"""
        path = tmp_path / "negative.demos"
        path.write_text(f"{MAGIC}\n# task_label: A\n# horizon: 1\n# seed: 0\n# n: 1\n{body}\n")
        with pytest.raises(NegativeIndexException) as exc_info:
            TextDemoRepository().load(path)
        assert exc_info.value.value < 0
        assert "trajectory 0" in exc_info.value.field


@pytest.mark.unit
class TestJsonParamsRepository:
    """Test suite for parameter documents"""

    def test_task_params_document(self, tmp_path):
        """Test labels, thetas, mean, lambda and metadata are stored"""
        params = TaskParams(
            task_labels=("A", "B"), thetas=np.array([[1.0, 2.0], [3.0, 4.0]]),
            lam=0.1, feature_kind="terrain", seed=4,
        )
        repository = JsonParamsRepository()
        path = repository.save_task_params(params, tmp_path / "p.json", {"iterations": 7})
        document = json.loads(path.read_text())
        assert document["mean"] == [2.0, 3.0]
        assert document["fit"] == {"iterations": 7}

        loaded = repository.load_task_params(path)
        assert loaded.task_labels == ("A", "B")
        assert (loaded.lam, loaded.feature_kind, loaded.seed) == (0.1, "terrain", 4)
        np.testing.assert_array_equal(loaded.thetas, params.thetas)

    def test_meta_state_document(self, tmp_path):
        """Test phi, settings and history are stored"""
        state = MetaState(
            phi=np.array([0.5, -0.5]), outer_lr=0.3, inner_steps=2, inner_lr=0.1,
            outer_iters=1, seed=11,
            history=(MetaStep(1, "B", np.zeros(2), np.array([1.0, -1.0])),),
        )
        repository = JsonParamsRepository()
        loaded = repository.load_meta_state(repository.save_meta_state(state, tmp_path / "m.json"))
        np.testing.assert_array_equal(loaded.phi, state.phi)
        assert (loaded.outer_lr, loaded.inner_steps, loaded.seed) == (0.3, 2, 11)
        assert loaded.history[0].task_label == "B"
        np.testing.assert_array_equal(loaded.history[0].end_theta, [1.0, -1.0])

    def test_wrong_format(self, tmp_path):
        """Test loading a meta state as task params fails"""
        repository = JsonParamsRepository()
        state = MetaState(phi=np.zeros(2), outer_lr=0.5, inner_steps=1, inner_lr=0.1, outer_iters=1, seed=0)
        path = repository.save_meta_state(state, tmp_path / "m.json")
        with pytest.raises(ValidationException):
            repository.load_task_params(path)

    def test_invalid_json_and_missing(self, tmp_path):
        """Test unreadable documents"""
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ValidationException):
            JsonParamsRepository().load_task_params(path)
        with pytest.raises(ValidationException):
            JsonParamsRepository().load_task_params(tmp_path / "absent.json")


@pytest.mark.unit
class TestCsvResultRepository:
    """Test suite for result tables"""

    def test_rows_are_sorted_and_timings_split(self, tmp_path):
        """Test key order in the table and wall-clock time in the sidecar"""
        rows = [
            result_row(seed=1),
            result_row(algorithm="multitask", lam=0.1, seed=0),
            result_row(seed=0),
            result_row(algorithm="multitask", lam=0.01, seed=0),
        ]
        repository = CsvResultRepository()
        path = repository.write_rows(rows, tmp_path / "results.csv")

        frame = pd.read_csv(path)
        assert list(frame.columns) == RESULT_COLUMNS
        assert list(zip(frame["algorithm"], frame["lambda"].fillna(-1), frame["seed"])) == [
            ("multitask", 0.01, 0), ("multitask", 0.1, 0), ("single", -1, 0), ("single", -1, 1),
        ]
        timings = pd.read_csv(timings_path(path))
        assert "wall_clock_seconds" in timings.columns
        assert "wall_clock_seconds" not in frame.columns

    def test_write_is_order_independent(self, tmp_path):
        """Test the same rows in any order give identical bytes"""
        rows = [result_row(seed=s, value=float(s)) for s in range(4)]
        repository = CsvResultRepository()
        first = repository.write_rows(rows, tmp_path / "a.csv").read_bytes()
        second = repository.write_rows(rows[::-1], tmp_path / "b.csv").read_bytes()
        assert first == second

    def test_read_frame_concatenates(self, tmp_path):
        """Test several tables read as one, failed rows kept"""
        repository = CsvResultRepository()
        first = repository.write_rows([result_row(seed=0)], tmp_path / "a.csv")
        second = repository.write_rows([result_row(seed=1, value=float("nan"), status="failed")], tmp_path / "b.csv")
        frame = repository.read_frame([first, second])
        assert len(frame) == 2
        assert list(frame["status"]) == ["ok", "failed"]
        assert math.isnan(frame["value"].iloc[1])
        assert repository.read_rows([first])[0]["target_task"] == "A"

    @pytest.mark.parametrize("content", [None, "a,b\n1,2\n"])
    def test_read_frame_errors(self, tmp_path, content):
        """Test missing files and foreign tables"""
        path = tmp_path / "r.csv"
        if content is not None:
            path.write_text(content)
        with pytest.raises(ValidationException):
            CsvResultRepository().read_frame([path])

    def test_read_frame_needs_paths(self):
        """Test at least one file is required"""
        with pytest.raises(ValidationException):
            CsvResultRepository().read_frame([])

    def test_metadata_sidecar(self, tmp_path):
        """Test metadata lands next to the table"""
        results = tmp_path / "results.csv"
        path = CsvResultRepository().write_metadata({"config_hash": "abc", "rows": 3}, results)
        assert path == metadata_path(results) == tmp_path / "results.csv.meta.json"
        assert json.loads(path.read_text()) == {"config_hash": "abc", "rows": 3}
