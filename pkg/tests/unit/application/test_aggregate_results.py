"""
Unit tests for result aggregation
"""
import logging
import math

import numpy as np
import pandas as pd
import pytest

from src.application.use_cases.aggregate_results import (
    SUMMARY_COLUMNS,
    AggregateResultsUseCase,
    summarise,
)
from src.domain.exceptions.domain_exceptions import EmptyGroupException
from src.domain.value_objects.aggregation_mode import AggregationMode
from src.infrastructure.persistence.result_store import RESULT_COLUMNS, CsvResultRepository

NAN = float("nan")


def results_frame(rows):
    """rows: (algorithm, target, m, lambda, seed, value[, status])"""
    records = []
    for row in rows:
        algorithm, target, m, lam, seed, value, *rest = row
        status = rest[0] if rest else "ok"
        records.append({
            "algorithm": algorithm, "target_task": target, "m": m, "lambda": lam, "seed": seed,
            "value": value, "oracle_value": 10.0, "expert_value": 9.0,
            "status": status, "error": "" if status == "ok" else "Boom: failed",
        })
    return pd.DataFrame(records, columns=RESULT_COLUMNS)


@pytest.mark.unit
class TestSummarise:
    """Test suite for summarise"""

    def test_best_of_seeds(self):
        """Test the best value and its seed per cell"""
        frame = results_frame([
            ("single", "A", 2, NAN, 0, -1.0),
            ("single", "A", 2, NAN, 1, 2.0),
            ("single", "A", 2, NAN, 2, 0.0),
        ])
        summary = summarise(frame, AggregationMode.BEST_OF_SEEDS)
        assert list(summary.columns) == SUMMARY_COLUMNS
        assert len(summary) == 1
        row = summary.iloc[0]
        assert row["value"] == 2.0
        assert row["best_seed"] == 1
        assert row["n_seeds"] == 3
        assert row["ci95_half_width"] == 0.0
        assert math.isnan(row["lambda"])

    def test_best_of_seeds_tie_takes_lowest_seed(self):
        """Test ties resolve to the lowest seed"""
        frame = results_frame([
            ("single", "A", 2, NAN, 4, 3.0),
            ("single", "A", 2, NAN, 1, 3.0),
        ])
        assert summarise(frame, AggregationMode.BEST_OF_SEEDS).iloc[0]["best_seed"] == 1

    def test_mean_ci95(self):
        """Test mean +/- 1.96 sd / sqrt(n) with ddof = 1"""
        values = [1.0, 2.0, 3.0, 4.0, 5.0]
        frame = results_frame([("multitask", "B", 5, 0.1, s, v) for s, v in enumerate(values)])
        row = summarise(frame, AggregationMode.MEAN_CI95).iloc[0]
        half_width = 1.96 * np.std(values, ddof=1) / np.sqrt(5)
        assert row["value"] == pytest.approx(3.0)
        assert row["ci95_half_width"] == pytest.approx(half_width)
        assert row["ci95_half_width"] == pytest.approx(1.385929, abs=1e-6)
        assert row["ci95_low"] == pytest.approx(3.0 - half_width)
        assert row["ci95_high"] == pytest.approx(3.0 + half_width)
        assert pd.isna(row["best_seed"])

    def test_single_seed_interval(self):
        """Test one seed gives a zero-width interval"""
        frame = results_frame([("meta", "A", 1, NAN, 0, 4.0)])
        row = summarise(frame, AggregationMode.MEAN_CI95).iloc[0]
        assert (row["value"], row["ci95_half_width"]) == (4.0, 0.0)

    def test_cells_are_separate(self):
        """Test algorithms, targets, budgets and lambdas form their own cells"""
        frame = results_frame([
            ("multitask", "A", 2, 0.1, 0, 1.0),
            ("multitask", "A", 2, 1.0, 0, 2.0),
            ("single", "A", 2, NAN, 0, 3.0),
            ("single", "A", 5, NAN, 0, 4.0),
            ("single", "B", 2, NAN, 0, 5.0),
        ])
        summary = summarise(frame, AggregationMode.MEAN_CI95)
        assert len(summary) == 5
        assert sorted(summary["value"]) == [1.0, 2.0, 3.0, 4.0, 5.0]

    def test_permutation_invariant(self):
        """Test input row order does not change the summary"""
        rows = [
            ("single", t, m, NAN, s, float(s * m + len(t)))
            for t in ("A", "A+B") for m in (1, 2) for s in range(3)
        ] + [("multitask", "A", 1, 0.1, s, float(s)) for s in range(3)]
        frame = results_frame(rows)
        shuffled = frame.sample(frac=1.0, random_state=0).reset_index(drop=True)
        for mode in AggregationMode:
            pd.testing.assert_frame_equal(summarise(frame, mode), summarise(shuffled, mode))

    def test_failed_rows_ignored(self):
        """Test failed rows do not enter the statistics"""
        frame = results_frame([
            ("single", "A", 2, NAN, 0, 1.0),
            ("single", "A", 2, NAN, 1, NAN, "failed"),
        ])
        row = summarise(frame, AggregationMode.MEAN_CI95).iloc[0]
        assert (row["n_seeds"], row["value"]) == (1, 1.0)

    def test_empty_group_raises(self):
        """Test a cell with only failures is an error"""
        frame = results_frame([("single", "A", 2, NAN, 0, NAN, "failed")])
        with pytest.raises(EmptyGroupException):
            summarise(frame, AggregationMode.BEST_OF_SEEDS)

    def test_empty_group_skipped(self, caplog):
        """Test skip_empty drops the cell with a warning"""
        frame = results_frame([
            ("single", "A", 2, NAN, 0, NAN, "failed"),
            ("single", "B", 2, NAN, 0, 1.0),
        ])
        with caplog.at_level(logging.WARNING):
            summary = summarise(frame, AggregationMode.BEST_OF_SEEDS, skip_empty=True)
        assert list(summary["target_task"]) == ["B"]
        assert "without successful rows" in caplog.text


@pytest.mark.unit
class TestAggregateResultsUseCase:
    """Test suite for AggregateResultsUseCase"""

    def test_reads_several_tables_and_writes_summary(self, tmp_path):
        """Test tables from several runs are pooled"""
        repository = CsvResultRepository()
        first = repository.write_rows(
            results_frame([("single", "A", 2, NAN, 0, 1.0)]).to_dict(orient="records"), tmp_path / "a.csv"
        )
        second = repository.write_rows(
            results_frame([("single", "A", 2, NAN, 1, 3.0)]).to_dict(orient="records"), tmp_path / "b.csv"
        )
        output = tmp_path / "summary" / "summary.csv"
        summary = AggregateResultsUseCase(repository).execute(
            [first, second], AggregationMode.MEAN_CI95, output_path=output
        )
        assert summary.iloc[0]["value"] == 2.0
        assert summary.iloc[0]["n_seeds"] == 2
        written = pd.read_csv(output)
        assert list(written.columns) == SUMMARY_COLUMNS
        assert written.iloc[0]["value"] == 2.0
