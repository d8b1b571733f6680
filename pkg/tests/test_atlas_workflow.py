import pytest
from prefect.testing.utilities import prefect_test_harness

from app.cli.runner import run
from app.models.run_models import RunConfig
from app.tasks import report_chargement, torsion_transformation, weil_extraction
from app.utils import config
from app.utils.errors import InputError, WeilValidationError
from app.utils.serialization import dumps, loads
from app.workflows.atlas_workflow import atlas_report, default_report_path, load_batch

BATCH_FILE = config.ROOT_DIR / "datas" / "examples" / "weil_batch.json"


@pytest.fixture(autouse=True, scope="module")
def harness():
    with prefect_test_harness():
        yield


@pytest.fixture
def batch_file(tmp_path):
    path = tmp_path / "lot.json"
    path.write_text(
        dumps([{"poly": "1,2,7", "q": 7, "ell": 3}, {"poly": "1,2,7", "q": 7, "ell": 7}]),
        encoding="utf-8",
    )
    return path


class TestTasks:
    def test_extraction(self):
        data = weil_extraction.fn({"poly": "1,-1,8,-7,49", "q": 7, "ell": 5})
        assert data["step"] == "extraction_complete"
        assert data["ell"] == 5
        assert data["weil"]["q"] == 7

    def test_extraction_accepts_coefficient_list(self):
        data = weil_extraction.fn({"poly": [1, 2, 7], "q": "7", "ell": "3"})
        assert data["weil"]["coeffs"] == [1, 2, 7]

    def test_extraction_missing_key(self):
        with pytest.raises(InputError, match="ell"):
            weil_extraction.fn({"poly": "1,2,7", "q": 7})

    def test_extraction_non_integer(self):
        with pytest.raises(InputError):
            weil_extraction.fn({"poly": "1,2,7", "q": "sept", "ell": 3})

    def test_extraction_rejects_non_weil(self):
        with pytest.raises(WeilValidationError):
            weil_extraction.fn({"poly": "1,1,5", "q": 7, "ell": 3})

    def test_transformation_surface(self):
        data = weil_extraction.fn({"poly": "1,-1,8,-7,49", "q": 7, "ell": 5})
        result = torsion_transformation.fn(data)
        assert result["step"] == "transformation_complete"
        assert result["classification"]["case"] == "3"

    def test_transformation_adds_b_vectors_for_two(self):
        data = weil_extraction.fn({"poly": "1,2,7", "q": 7, "ell": 2})
        classes = torsion_transformation.fn(data)["classification"]["classes"]
        assert classes
        assert all("b_vector" in entry for entry in classes)

    def test_chargement(self, tmp_path):
        target = tmp_path / "sous" / "rapport.json"
        status = report_chargement.fn({"summary": {"total": 0}}, target)
        assert status["path"] == str(target)
        assert loads(target.read_text(encoding="utf-8")) == {"summary": {"total": 0}}


class TestLoadBatch:
    def test_list(self, batch_file):
        assert len(load_batch(batch_file)) == 2

    def test_entries_object(self):
        assert len(load_batch(BATCH_FILE)) == 5

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            load_batch(tmp_path / "absent.json")

    def test_bad_structure(self, tmp_path):
        path = tmp_path / "mauvais.json"
        path.write_text('{"entries": [1, 2]}', encoding="utf-8")
        with pytest.raises(InputError):
            load_batch(path)

    def test_default_report_path(self):
        assert default_report_path(BATCH_FILE) == config.REPORTS_DIR / "weil_batch_report.json"


class TestAtlasReport:
    def test_failed_entry_is_recorded(self, batch_file, tmp_path):
        output = tmp_path / "rapport.json"
        report = atlas_report(batch_file, output)
        assert report["summary"] == {"total": 2, "completed": 1, "failed": 1}
        failed = report["entries"][1]
        assert failed["status"] == "failed"
        assert failed["error"].startswith("EllEqualsP")
        assert loads(output.read_text(encoding="utf-8"))["summary"] == report["summary"]

    def test_example_batch(self, tmp_path):
        report = atlas_report(BATCH_FILE, tmp_path / "exemple.json")
        assert report["summary"] == {"total": 5, "completed": 4, "failed": 1}
        assert report["entries"][0]["result"]["case"] == "3"
        assert report["entries"][4]["error"].startswith("FunctionalEquationViolated")

    def test_report_command(self, batch_file, tmp_path):
        output = tmp_path / "cli.json"
        result = run(RunConfig(command="report", input_path=str(batch_file), output_path=str(output)))
        assert result.exit_code == 0
        assert loads(result.output)["summary"]["failed"] == 1
        assert output.is_file()

    def test_report_command_missing_file(self, tmp_path):
        result = run(RunConfig(command="report", input_path=str(tmp_path / "absent.json")))
        assert result.exit_code == 2
