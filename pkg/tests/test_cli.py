import pytest
from typer.testing import CliRunner

from app.cli import commands, runner
from app.cli.commands import cli
from app.cli.runner import run, run_command
from app.models.run_models import RunConfig
from app.torsion import isogeny_torsion
from app.utils import config
from app.utils.serialization import loads

SURFACE = ["--poly", "1,-1,8,-7,49", "--q", "7", "--ell", "5"]


@pytest.fixture
def cli_runner():
    return CliRunner(mix_stderr=False)


def invoke_json(cli_runner, *args):
    result = cli_runner.invoke(cli, [*args, "--json"])
    assert result.exit_code == 0, result.stderr
    return loads(result.stdout)


class TestLiftCommand:
    def test_json_matrix(self, cli_runner):
        payload = invoke_json(cli_runner, "lift", "--poly", "1,-5,-5", "--ell", "5", "--partition", "2")
        assert payload["matrix"] == [[0, 5], [1, 5]]
        assert payload["ring"]["precision"] == 4

    def test_text_output(self, cli_runner):
        result = cli_runner.invoke(cli, ["lift", "--poly", "1,-5,-5", "--ell", "5", "--partition", "2"])
        assert result.exit_code == 0
        assert result.stdout.strip()
        assert not result.stdout.startswith("{")

    def test_not_dominated(self, cli_runner):
        result = cli_runner.invoke(cli, ["lift", "--poly", "1,-5,-5", "--ell", "5", "--partition", "1,1"])
        assert result.exit_code == 2
        assert "NotDominated" in result.stderr


class TestClassificationCommands:
    def test_polygon(self, cli_runner):
        payload = invoke_json(cli_runner, "polygon", *SURFACE)
        assert [factor["d"] for factor in payload["factors"]] == [2, 2]
        assert all(factor["admissible"] for factor in payload["factors"])

    def test_torsion(self, cli_runner):
        payload = invoke_json(cli_runner, "torsion", *SURFACE)
        assert len(payload["classes"]) == 4
        assert all(sum(int(k[1:]) * v for k, v in c["b_vector"].items()) == 5 ** 4 for c in payload["classes"])

    def test_surface_text(self, cli_runner):
        result = cli_runner.invoke(cli, ["surface", *SURFACE])
        assert result.exit_code == 0
        assert result.stdout.startswith("Cas 3")

    def test_dual_groups(self, cli_runner):
        payload = invoke_json(cli_runner, "dual", *SURFACE, "--partition", "2", "--partition", "1,1")
        (entry,) = payload["classes"]
        assert entry["groups"] == {"1": [1, 1]}
        assert entry["dual_groups"] == {"1": [2]}
        assert payload["dual_weil"] == [1, -1, 8, -7, 49]

    def test_dual_partition_count(self, cli_runner):
        result = cli_runner.invoke(cli, ["dual", *SURFACE, "--partition", "2"])
        assert result.exit_code == 2


class TestKummerCommand:
    def test_enumeration(self, cli_runner):
        payload = invoke_json(cli_runner, "kummer", "--poly", "1,2,7,6,9", "--q", "3", "--order", "2")
        (entry,) = payload["zetas"]
        assert entry["b_vector"] == "b1=1,b3=5"
        assert entry["degree"] == 22
        assert entry["point_counts"][0] == 20
        assert entry["series"][:2] == [1, 20]

    def test_single_b_vector_in_characteristic_two(self, cli_runner):
        result = cli_runner.invoke(cli, ["kummer", "--poly", "1,-8,24,-32,16", "--q", "4", "--b", "1:16"])
        assert result.exit_code == 2
        assert "CharacteristicTwo" in result.stderr


class TestTablesCommand:
    def test_tsv(self, cli_runner):
        result = cli_runner.invoke(cli, ["tables"])
        assert result.exit_code == 0
        golden = (config.TABLES_DIR / "kummer_tables.tsv").read_text(encoding="utf-8")
        assert result.stdout == golden

    def test_json(self, cli_runner):
        result = cli_runner.invoke(cli, ["tables", "--format", "json"])
        assert result.exit_code == 0
        assert [table["table"] for table in loads(result.stdout)] == [1, 2, 3, 4]


class TestExitCodes:
    def test_missing_option(self, cli_runner):
        result = cli_runner.invoke(cli, ["torsion", "--poly", "1,2,7", "--q", "7"])
        assert result.exit_code == 2
        assert "--ell" in result.stderr

    def test_invalid_option_value(self, cli_runner):
        result = cli_runner.invoke(cli, ["torsion", "--poly", "1,2,7", "--q", "1", "--ell", "3"])
        assert result.exit_code == 2

    def test_weil_validation(self, cli_runner):
        result = cli_runner.invoke(cli, ["torsion", "--poly", "1,1,5", "--q", "7", "--ell", "3"])
        assert result.exit_code == 3
        assert "FunctionalEquationViolated" in result.stderr

    def test_force_weil(self, cli_runner):
        args = ["torsion", "--poly", "1,6,7", "--q", "7", "--ell", "5"]
        assert cli_runner.invoke(cli, args).exit_code == 3
        assert cli_runner.invoke(cli, [*args, "--force-weil"]).exit_code == 0

    def test_unexpected_error_is_internal(self, monkeypatch):
        def boom(config):
            raise RuntimeError("panne")

        monkeypatch.setitem(runner.COMMANDS, "polygon", boom)
        result = run(RunConfig(command="polygon", poly="1,2,7", q=7, ell=3))
        assert result.exit_code == 5
        assert result.error == "RuntimeError: panne"


class TestRunApi:
    def test_run(self):
        result = run(RunConfig(command="lift", poly="1,-5,-5", ell=5, partitions=["2"], output="json"))
        assert result.exit_code == 0
        assert loads(result.output)["matrix"] == [[0, 5], [1, 5]]

    def test_unknown_option(self):
        result = run_command("lift", colour="red")
        assert result.exit_code == 2
        assert result.error.startswith("InputError")

    def test_error_console_writes_to_stderr(self):
        assert commands.error_console.stderr


class TestSeed:
    @pytest.fixture
    def seeds(self, monkeypatch):
        seen = []
        factor = isogeny_torsion.ff_factor

        def recording_factor(f, seed=0):
            seen.append(seed)
            return factor(f, seed)

        monkeypatch.setattr(isogeny_torsion, "ff_factor", recording_factor)
        monkeypatch.setattr(config, "SEED", 7)
        return seen

    def test_configured_seed_is_the_default(self, cli_runner, seeds):
        result = cli_runner.invoke(cli, ["torsion", "--poly", "1,2,7", "--q", "7", "--ell", "3"])
        assert result.exit_code == 0, result.stderr
        assert seeds and set(seeds) == {7}

    def test_explicit_seed_wins(self, cli_runner, seeds):
        result = cli_runner.invoke(cli, ["torsion", "--poly", "1,2,7", "--q", "7", "--ell", "3", "--seed", "3"])
        assert result.exit_code == 0, result.stderr
        assert set(seeds) == {3}

    def test_run_config_leaves_seed_unset(self):
        assert RunConfig(command="torsion").seed is None
