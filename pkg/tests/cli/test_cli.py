import argparse

import pytest
import yaml

from risloc.cli import main, parse_trim, parse_values
from risloc.io import dump_config, load_cube, read_csv


@pytest.fixture
def scene(tmp_path, small_scenario):
    path = tmp_path / "scene.yaml"
    dump_config(small_scenario, path)
    return str(path)


@pytest.fixture
def cube_file(tmp_path, scene):
    out = tmp_path / "cube.npz"
    assert main(["simulate", "--config", scene, "--seed", "4", "--out", str(out)]) == 0
    return out


class TestHelpers:
    def test_parse_trim(self):
        assert parse_trim("300:361") == (300, 361)

    @pytest.mark.parametrize("text", ["300", "a:b", "1:2:3"])
    def test_parse_trim_invalid(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_trim(text)

    def test_parse_values(self):
        assert parse_values("5, 15,25", "tx_power") == [5.0, 15.0, 25.0]
        assert parse_values("4x4,16x4", "n_ris_elements") == ["4x4", "16x4"]
        with pytest.raises(ValueError, match=r".*Invalid --values*"):
            parse_values("5,high", "tx_power")


class TestSimulate:
    def test_npz(self, cube_file):
        assert load_cube(cube_file).shape == (600, 8, 5)

    def test_capture(self, tmp_path, scene):
        out = tmp_path / "capture.bin"
        assert main(["simulate", "--config", scene, "--format", "capture", "--out", str(out)]) == 0
        assert out.stat().st_size == 2 * 2 * 600 * 8 * 5
        assert (tmp_path / "capture.yaml").exists()


class TestEstimate:
    def test_from_npz(self, tmp_path, scene, cube_file, capsys):
        out = tmp_path / "sweep.csv"
        assert main(["estimate", str(cube_file), "--config", scene, "--out", str(out)]) == 0
        assert capsys.readouterr().out.startswith("beam 2: azimuth 0.00 deg")
        table = read_csv(out)
        assert len(table) == 5
        assert table["selected"].sum() == 1

    def test_from_trimmed_capture(self, tmp_path, scene):
        data = tmp_path / "capture.bin"
        main(["simulate", "--config", scene, "--format", "capture", "--out", str(data)])
        out = tmp_path / "sweep.csv"
        argv = ["estimate", str(data), "--config", scene, "--format", "capture"]
        assert main(argv + ["--trim", "1:4", "--out", str(out)]) == 0
        assert len(read_csv(out)) == 3

    def test_missing_cube(self, tmp_path, scene, capsys):
        argv = ["estimate", str(tmp_path / "nope.npz"), "--config", scene, "--out", "x.csv"]
        assert main(argv) == 2
        assert capsys.readouterr().err.startswith("risloc: error:")

    def test_bad_trim_exits(self, cube_file, scene):
        with pytest.raises(SystemExit) as err:
            main(["estimate", str(cube_file), "--trim", "7", "--out", "x.csv"])
        assert err.value.code == 2


class TestOtherCommands:
    def test_diagnose(self, tmp_path, scene):
        assert main(["diagnose", "--config", scene, "--out", str(tmp_path / "diag.csv")]) == 0
        for suffix in ("map", "beam_profile", "distance_profile"):
            assert (tmp_path / f"diag_{suffix}.csv").exists()

    def test_study(self, tmp_path, scene):
        out = tmp_path / "power.csv"
        argv = ["study", "--config", scene, "--sweep-param", "tx_power", "--values", "10,20"]
        assert main(argv + ["--runs", "2", "--records", "--quiet", "--out", str(out)]) == 0
        summary = read_csv(out)
        assert summary["value"].tolist() == [10.0, 20.0]
        assert len(read_csv(tmp_path / "power_records.csv")) == 4

    def test_ingest(self, tmp_path, scene):
        data = tmp_path / "capture.bin"
        main(["simulate", "--config", scene, "--format", "capture", "--out", str(data)])
        out = tmp_path / "ingested.npz"
        assert main(["ingest", str(data), "--trim", "0:2", "--out", str(out)]) == 0
        assert load_cube(out).shape == (600, 8, 2)

    def test_ingest_malformed_sidecar(self, tmp_path, scene, capsys):
        data = tmp_path / "capture.bin"
        main(["simulate", "--config", scene, "--format", "capture", "--out", str(data)])
        sidecar = tmp_path / "capture.yaml"
        content = yaml.safe_load(sidecar.read_text())
        content["sweep"] = {"azimuths": [0.0]}
        sidecar.write_text(yaml.safe_dump(content))
        assert main(["ingest", str(data), "--out", str(tmp_path / "ingested.npz")]) == 2
        assert "azimuth_rad" in capsys.readouterr().err

    def test_invalid_config(self, tmp_path, capsys):
        scene = tmp_path / "bad.yaml"
        scene.write_text("pipeline:\n  n_dft: 100\n")
        assert main(["diagnose", "--config", str(scene), "--out", str(tmp_path / "d.csv")]) == 2
        assert "pipeline.n_dft" in capsys.readouterr().err

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["--version"])
        assert err.value.code == 0
        assert "risloc" in capsys.readouterr().out
