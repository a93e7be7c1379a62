import os
import stat

import pandas as pd
import pytest

from risloc.channel import synthesize
from risloc.dsp import estimate
from risloc.io import emit_csv, read_csv, write_table
from risloc.io.csv_out import sibling


class TestEmitCsv:
    def test_sweep_result_round_trip(self, tmp_path, small_scenario):
        result = estimate(synthesize(small_scenario, 1), small_scenario.pipeline_config())
        (path,) = emit_csv(result, tmp_path / "result.csv")
        pd.testing.assert_frame_equal(read_csv(path), result.to_frame())

    def test_header_first(self, tmp_path, small_scenario):
        result = estimate(synthesize(small_scenario, 1), small_scenario.pipeline_config())
        (path,) = emit_csv(result, tmp_path / "result.csv")
        header = path.read_text().splitlines()[0]
        assert header.startswith("index,azimuth_deg,elevation_deg,delay_s")

    def test_floats_keep_full_precision(self, tmp_path):
        frame = pd.DataFrame({"value": [0.1 + 0.2, 1 / 3, 2.5e-10], "count": [1, 2, 3]})
        (path,) = emit_csv(frame, tmp_path / "frame.csv")
        pd.testing.assert_frame_equal(read_csv(path), frame)

    def test_unknown_type(self, tmp_path):
        with pytest.raises(TypeError, match=r".*No CSV layout*"):
            emit_csv(object(), tmp_path / "x.csv")


class TestWriteTable:
    def test_no_temporary_files_remain(self, tmp_path):
        write_table(pd.DataFrame({"a": [1]}), tmp_path / "a.csv")
        assert [p.name for p in tmp_path.iterdir()] == ["a.csv"]

    @pytest.mark.parametrize("mask", [0o022, 0o077])
    def test_file_mode_follows_umask(self, tmp_path, mask):
        previous = os.umask(mask)
        try:
            write_table(pd.DataFrame({"a": [1]}), tmp_path / "a.csv")
        finally:
            os.umask(previous)
        assert stat.S_IMODE((tmp_path / "a.csv").stat().st_mode) == 0o666 & ~mask

    def test_sibling(self, tmp_path):
        assert sibling(tmp_path / "run.csv", "map") == tmp_path / "run_map.csv"
