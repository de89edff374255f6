import json
import math
from pathlib import Path

import pytest
from click.testing import CliRunner

from zonolab import __version__
from zonolab.cli import ExitCode
from zonolab.cli import cli
from zonolab.functionals import intrinsic_volume
from zonolab.zonotope import GeneratorSet
from zonolab.zonotope import save_generator_set


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def write_fixture(path: Path, gs: GeneratorSet) -> Path:
    with path.open("w") as file:
        save_generator_set(file, gs)

    return path


def write_config(path: Path, text: str) -> Path:
    path.write_text(text)

    return path


POLARIZATION_CONFIG = """\
objective: polarization
constraints: [unit-generators]
n: 2
d: 2
restarts: 4
max_iters: 50
"""


class TestCompute:
    def test_cube(self, runner, tmp_path, cube3):
        source = write_fixture(tmp_path / "cube.json", cube3)
        result = runner.invoke(cli, ["-q", "compute", "--all", str(source)])

        assert result.exit_code == ExitCode.OK
        document = json.loads(result.output)

        assert document["functionals"]["intrinsic_volumes"] == pytest.approx([1, 3, 3, 1])
        assert document["functionals"]["mean_width"] == pytest.approx(1.5)
        assert document["radii"]["cirr"]["value"] == pytest.approx(math.sqrt(3) / 2)
        assert document["radii"]["ir"]["value"] == pytest.approx(0.5)
        assert document["steiner"]["coeffs"] == pytest.approx([1.0, 6.0, 3 * math.pi, 4 * math.pi / 3])

    def test_power_k(self, runner, tmp_path, three_planar):
        source = write_fixture(tmp_path / "planar.json", three_planar)
        result = runner.invoke(cli, ["-q", "compute", "--power-k", "2", "--alpha", "2", str(source)])

        assert result.exit_code == ExitCode.OK
        document = json.loads(result.output)

        assert document["power_k"]["value"] == pytest.approx(3.0)
        assert "functionals" not in document

    def test_power_k_zero_is_rejected(self, runner, tmp_path, cube3):
        source = write_fixture(tmp_path / "cube.json", cube3)
        result = runner.invoke(cli, ["compute", "--power-k", "0", str(source)])

        assert result.exit_code == ExitCode.USAGE
        assert "k=0" in result.output

    def test_selected_volumes(self, runner, tmp_path, cube3):
        source = write_fixture(tmp_path / "cube.json", cube3)
        result = runner.invoke(cli, ["-q", "compute", "--vk", "1", "--vk", "2", str(source)])
        document = json.loads(result.output)

        assert document["intrinsic_volumes"] == {"1": pytest.approx(3.0), "2": pytest.approx(3.0)}

    def test_projection_body(self, runner, tmp_path, cube3):
        source = write_fixture(tmp_path / "cube.json", cube3)
        result = runner.invoke(cli, ["-q", "compute", "--projection-body", str(source)])

        assert result.exit_code == ExitCode.OK
        assert json.loads(result.output)["projection_body"]["dim"] == 3

    def test_byte_identical(self, runner, tmp_path, three_planar):
        source = write_fixture(tmp_path / "planar.json", three_planar)
        first = runner.invoke(cli, ["-q", "compute", str(source)])
        second = runner.invoke(cli, ["-q", "compute", str(source)])

        assert first.output == second.output

    def test_csv_and_manifest(self, runner, tmp_path, cube3):
        source = write_fixture(tmp_path / "cube.json", cube3)
        table = tmp_path / "report.csv"
        manifest = tmp_path / "manifest.json"

        for _ in range(2):
            result = runner.invoke(
                cli,
                ["-q", "compute", "--radii", "--csv", str(table), "--manifest", str(manifest), str(source)],
            )

            assert result.exit_code == ExitCode.OK

        lines = table.read_text().splitlines()

        assert len(lines) == 3
        assert lines[0].startswith("label,n,d,V_0")

        document = json.loads(manifest.read_text())

        assert document["command"].endswith("compute")
        assert document["version"] == __version__
        assert document["exit_code"] == 0

    def test_malformed_json(self, runner, tmp_path):
        source = tmp_path / "broken.json"
        source.write_text('{"dim": 2,\n "generators": [[1, 0]')
        result = runner.invoke(cli, ["compute", str(source)])

        assert result.exit_code == ExitCode.USAGE
        assert "line 2" in result.output

    def test_bad_field(self, runner, tmp_path):
        source = tmp_path / "bad.json"
        source.write_text('{"dim": 2, "generators": [[1, 0], [1, 0, 0]]}')
        result = runner.invoke(cli, ["compute", str(source)])

        assert result.exit_code == ExitCode.USAGE
        assert "generators[1]" in result.output

    def test_degenerate_radii(self, runner, tmp_path):
        source = write_fixture(tmp_path / "flat.json", GeneratorSet([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
        result = runner.invoke(cli, ["-q", "compute", "--radii", str(source)])

        assert result.exit_code == ExitCode.OK
        assert json.loads(result.output)["radii"]["ir"] is None


class TestVerify:
    def test_list(self, runner):
        result = runner.invoke(cli, ["verify", "--list"])

        assert result.exit_code == ExitCode.OK
        assert "maclaurin" in result.output
        assert "thm4" in result.output
        assert "lemma6" in result.output
        assert "thm5-counterexample" in result.output

    def test_maclaurin(self, runner):
        result = runner.invoke(cli, ["-q", "verify", "maclaurin", "--trials", "500"])

        assert result.exit_code == ExitCode.OK
        assert json.loads(result.output)["findings"] == 0

    def test_alias_with_outputs(self, runner, tmp_path):
        out = tmp_path / "thm4"
        result = runner.invoke(cli, ["-q", "verify", "thm4", "--trials", "20", "--seed", "3", "--out", str(out)])

        assert result.exit_code == ExitCode.OK
        assert sorted(p.name for p in out.iterdir()) == ["manifest.json", "suite.csv", "summary.json"]
        assert json.loads((out / "manifest.json").read_text())["seed"] == 3
        assert json.loads((out / "summary.json").read_text())["suite"] == "parallelotope-width-circumradius"

    def test_lemma6(self, runner):
        result = runner.invoke(cli, ["-q", "verify", "lemma6", "--d", "2", "--samples", "100000"])

        assert result.exit_code == ExitCode.OK
        assert json.loads(result.output)["closed_form"] == pytest.approx(2 / math.pi)

    def test_counterexample(self, runner):
        result = runner.invoke(cli, ["-q", "verify", "thm5-counterexample", "--d", "3"])

        assert result.exit_code == ExitCode.OK
        assert json.loads(result.output)["beats_regular"] is True

    def test_counterexample_even(self, runner):
        result = runner.invoke(cli, ["verify", "thm5-counterexample", "--d", "4"])

        assert result.exit_code == ExitCode.USAGE

    def test_unknown(self, runner):
        result = runner.invoke(cli, ["verify", "nonesuch"])

        assert result.exit_code == ExitCode.USAGE
        assert "Available" in result.output
        assert "maclaurin" in result.output

    def test_missing_suite(self, runner):
        assert runner.invoke(cli, ["verify"]).exit_code == ExitCode.USAGE


class TestSearch:
    def test_polarization(self, runner, tmp_path):
        config = write_config(tmp_path / "search.yml", POLARIZATION_CONFIG + "seed: 1\n")
        out = tmp_path / "run"
        result = runner.invoke(cli, ["-q", "search", str(config), "--out", str(out)])

        assert result.exit_code == ExitCode.OK
        assert sorted(p.name for p in out.iterdir()) == [
            "config.yml",
            "manifest.json",
            "outcome.json",
            "trace.csv",
        ]
        assert json.loads((out / "outcome.json").read_text())["value"] == pytest.approx(
            math.sqrt(2), abs=1e-6
        )

    def test_rerun_is_identical(self, runner, tmp_path):
        config = write_config(tmp_path / "search.yml", POLARIZATION_CONFIG + "seed: 2\n")

        for name in ("a", "b"):
            runner.invoke(cli, ["-q", "search", str(config), "--out", str(tmp_path / name)])

        assert (tmp_path / "a" / "outcome.json").read_bytes() == (
            tmp_path / "b" / "outcome.json"
        ).read_bytes()

    def test_workers_leave_outcome_unchanged(self, runner, tmp_path):
        config = write_config(tmp_path / "search.yml", POLARIZATION_CONFIG + "seed: 2\n")
        runner.invoke(cli, ["-q", "search", str(config), "--out", str(tmp_path / "a")])
        runner.invoke(cli, ["-q", "--workers", "3", "search", str(config), "--out", str(tmp_path / "b")])
        first = json.loads((tmp_path / "a" / "outcome.json").read_text())
        second = json.loads((tmp_path / "b" / "outcome.json").read_text())

        assert first["best"] == second["best"]
        assert first["value"] == second["value"]
        assert first["config_digest"] == second["config_digest"]

    def test_seed_is_recorded(self, runner, tmp_path):
        config = write_config(tmp_path / "search.yml", POLARIZATION_CONFIG)
        out = tmp_path / "run"
        result = runner.invoke(cli, ["-q", "search", str(config), "--out", str(out)])

        assert result.exit_code == ExitCode.OK

        manifest = json.loads((out / "manifest.json").read_text())
        outcome = json.loads((out / "outcome.json").read_text())

        assert isinstance(manifest["seed"], int)
        assert outcome["config"]["seed"] == manifest["seed"]
        assert f"seed: {manifest['seed']}" in (out / "config.yml").read_text()

    def test_fixed_volume(self, runner, tmp_path):
        config = write_config(
            tmp_path / "search.yml",
            "objective: cirr\nconstraints: [fixed-volume]\nn: 3\nd: 3\n"
            "target: 1.0\nrestarts: 2\nmax_iters: 40\nseed: 4\n",
        )
        out = tmp_path / "run"
        result = runner.invoke(cli, ["-q", "search", str(config), "--out", str(out)])

        assert result.exit_code == ExitCode.OK

        outcome = json.loads((out / "outcome.json").read_text())
        best = GeneratorSet(outcome["best"]["generators"])

        assert intrinsic_volume(best, 3) == pytest.approx(1.0, rel=1e-9)
        assert outcome["value"] >= math.sqrt(3) / 2 * (1 - 1e-9)
        assert len((out / "trace.csv").read_text().splitlines()) > 1

    def test_invalid_config(self, runner, tmp_path):
        config = write_config(
            tmp_path / "search.yml", "objective: polarization\nconstraints: [fixed-volume]\nn: 3\nd: 3\n"
        )
        result = runner.invoke(cli, ["search", str(config), "--out", str(tmp_path / "run")])

        assert result.exit_code == ExitCode.USAGE
        assert not (tmp_path / "run").exists()


class TestSample:
    def test_planar_table(self, runner):
        result = runner.invoke(cli, ["-q", "sample", "planar-regular", "--n", "2..16"])

        assert result.exit_code == ExitCode.OK

        lines = result.output.splitlines()

        assert lines[0] == "n,quantity,value,bound,rate"
        assert any(
            line.startswith("10,inner_gap_2,") and line.split(",")[3] == repr(math.pi**2 / (12 * 10**2))
            for line in lines
        )

    def test_reproducible_fixtures(self, runner, tmp_path):
        for name in ("a", "b"):
            result = runner.invoke(
                cli,
                ["-q", "sample", "random-uniform", "--n", "50", "--d", "3", "--seed", "7", "--out", str(tmp_path / name)],
            )

            assert result.exit_code == ExitCode.OK

        first = tmp_path / "a" / "fixtures" / "random-uniform-d3-n50.json"
        second = tmp_path / "b" / "fixtures" / "random-uniform-d3-n50.json"

        assert first.read_bytes() == second.read_bytes()
        assert (tmp_path / "a" / "probe.csv").read_bytes() == (tmp_path / "b" / "probe.csv").read_bytes()

    def test_wrong_dimension(self, runner):
        result = runner.invoke(cli, ["sample", "fibonacci-sphere", "--n", "8", "--d", "4"])

        assert result.exit_code == ExitCode.USAGE

    @pytest.mark.parametrize("sizes", ["5..x", "0", ""])
    def test_bad_sizes(self, runner, sizes):
        assert runner.invoke(cli, ["sample", "planar-regular", "--n", sizes]).exit_code == ExitCode.USAGE

    def test_unknown_family(self, runner):
        assert runner.invoke(cli, ["sample", "octahedra"]).exit_code == ExitCode.USAGE


def test_version(runner):
    result = runner.invoke(cli, ["--version"])

    assert result.exit_code == 0
    assert __version__ in result.output
