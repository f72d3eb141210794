"""CSV round trips and parse-error reporting."""

import numpy as np
import pytest

from btlrank.errors import CsvFormatError
from btlrank.io import (
    read_outcomes_csv,
    read_schedule_csv,
    read_scores_csv,
    write_outcomes_csv,
    write_schedule_csv,
    write_scores_csv,
)
from btlrank.model import ScoreVector, sample_outcomes

from _oracles import random_connected_schedule


class TestScheduleCsv:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(1)
        s = random_connected_schedule(rng, 9, extra_edges=7, max_count=12)
        path = tmp_path / "schedule.csv"
        write_schedule_csv(s, path)
        loaded = read_schedule_csv(path)
        assert loaded.d == s.d
        assert dict(loaded.pair_counts) == dict(s.pair_counts)

    def test_header_is_validated(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n0,1,2\n")
        with pytest.raises(CsvFormatError, match="line 1"):
            read_schedule_csv(path)

    def test_bad_count_reports_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("i,j,n_ij\n0,1,2\n1,2,zero\n")
        with pytest.raises(CsvFormatError, match="line 3"):
            read_schedule_csv(path)


class TestOutcomesCsv:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(2)
        s = random_connected_schedule(rng, 7, extra_edges=6, max_count=9)
        table = sample_outcomes(ScoreVector.centered(rng.normal(size=7)), s, seed=4)
        path = tmp_path / "outcomes.csv"
        write_outcomes_csv(table, path)
        loaded = read_outcomes_csv(path)
        assert dict(loaded.wins) == dict(table.wins)
        assert dict(loaded.schedule.pair_counts) == dict(s.pair_counts)

    def test_wins_exceeding_count_reports_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("i,j,n_ij,a_ij\n0,1,4,5\n")
        with pytest.raises(CsvFormatError, match="line 2"):
            read_outcomes_csv(path)

    def test_wrong_field_count_reports_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("i,j,n_ij,a_ij\n0,1,4\n")
        with pytest.raises(CsvFormatError, match="line 2"):
            read_outcomes_csv(path)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("i,j,n_ij,a_ij\n")
        with pytest.raises(CsvFormatError, match="no data"):
            read_outcomes_csv(path)


class TestScoresCsv:
    def test_round_trip_is_exact(self, tmp_path):
        scores = ScoreVector.centered(np.random.default_rng(3).normal(size=11))
        path = tmp_path / "scores.csv"
        write_scores_csv(scores, path)
        loaded = read_scores_csv(path)
        np.testing.assert_array_equal(loaded.values, scores.values)

    def test_missing_item_rejected(self, tmp_path):
        path = tmp_path / "scores.csv"
        path.write_text("item,score\n0,0.5\n2,-0.5\n")
        with pytest.raises(CsvFormatError, match="missing"):
            read_scores_csv(path)

    def test_bad_number_reports_line(self, tmp_path):
        path = tmp_path / "scores.csv"
        path.write_text("item,score\n0,0.5\n1,oops\n")
        with pytest.raises(CsvFormatError, match="line 3"):
            read_scores_csv(path)
