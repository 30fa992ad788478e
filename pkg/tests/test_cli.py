import json
import logging
import os

import pytest
from click.testing import CliRunner

from pointlike_lab import config as config_module
from pointlike_lab.cli import cli
from pointlike_lab.config import get_config_path
from pointlike_lab.logging import debug_mode_enabled


@pytest.fixture
def runner():
    yield CliRunner()
    # handlers installed by the CLI hold the runner's (now closed) stderr
    logging.getLogger("pointlike_lab").handlers.clear()


@pytest.fixture
def files(tmp_path):
    """Write the small example inputs used by the commands below."""
    contents = {
        "z2.sgp": "2\n0 1\n1 0\n",
        "lz2.sgp": "# labels: a b\n2\n0 0\n1 1\n",
        "trivial.sgp": "1\n0\n",
        "broken.sgp": "2\n0 1\n0 0\n",
        "ragged.sgp": "2\n0 1\n",
        "terminal.rel": "0 0\n1 0\n",
        "open.rel": "1 0\n",
    }
    paths = {}
    for name, text in contents.items():
        path = tmp_path / name
        path.write_text(text)
        paths[name] = str(path)
    return paths


def report(result):
    """The JSON object printed by a command, ignoring any stderr mixed in."""
    lines = [line for line in result.output.splitlines() if line.startswith('{"')]
    assert len(lines) == 1, result.output
    return json.loads(lines[0])


def test_certify_exact_on_z2(runner, files):
    """Test that the aperiodic pointlikes of Z2 are certified as all of P(Z2)."""
    result = runner.invoke(cli, ["certify", "--pv", "aperiodic", "--modulus", "grp", "--bound", "3", files["z2.sgp"]])

    assert result.exit_code == 0
    data = report(result)
    assert data["command"] == "certify"
    assert data["schema"] == "1"
    assert data["result"]["exact"] is True
    assert data["result"]["value"]["max_faces"] == [[0, 1]]


def test_points_prinj_on_z2(runner, files):
    result = runner.invoke(cli, ["points", "prinj", files["z2.sgp"]])

    assert result.exit_code == 0
    assert report(result)["result"] == {"member": False, "pseudovariety": "trivial"}


def test_enumerate_order_two(runner):
    result = runner.invoke(cli, ["enumerate", "--order", "2", "--dedup", "iso"])

    assert result.exit_code == 0
    assert report(result)["result"] == {"count": 5}


def test_enumerate_with_filter_and_tables(runner):
    result = runner.invoke(cli, ["enumerate", "--order", "2", "--filter", "groups", "--tables"])

    assert result.exit_code == 0
    data = report(result)
    assert data["result"]["count"] == 1
    assert [s["order"] for s in data["result"]["semigroups"]] == [2]
    assert data["inputs"]["filter"] == "groups"


def test_validate(runner, files):
    result = runner.invoke(cli, ["validate", files["lz2.sgp"]])

    assert result.exit_code == 0
    semigroup = report(result)["result"]["semigroup"]
    assert semigroup["labels"] == ["a", "b"]
    assert semigroup["table"] == [[0, 0], [1, 1]]


def test_validate_non_associative(runner, files):
    """Test that a domain error becomes a JSON error object and exit code 1."""
    result = runner.invoke(cli, ["validate", files["broken.sgp"]])

    assert result.exit_code == 1
    error = report(result)["error"]
    assert error["code"] == "non_associative"
    assert error["details"]["witness"] == [1, 0, 1]


def test_validate_parse_error(runner, files):
    result = runner.invoke(cli, ["validate", files["ragged.sgp"]])

    assert result.exit_code == 1
    error = report(result)["error"]
    assert error["code"] == "parse_error"
    assert error["details"]["line"] == 2


def test_missing_file_is_a_usage_error(runner, tmp_path):
    result = runner.invoke(cli, ["validate", str(tmp_path / "nowhere.sgp")])

    assert result.exit_code == 2


def test_bad_expression(runner, files):
    result = runner.invoke(cli, ["modulus", "join(grp", files["z2.sgp"]])

    assert result.exit_code == 1
    assert report(result)["error"]["code"] == "expression_error"


def test_info_is_deterministic(runner, files):
    first = runner.invoke(cli, ["info", files["lz2.sgp"]])
    second = runner.invoke(cli, ["info", files["lz2.sgp"]])

    assert first.exit_code == 0
    assert report(first) == report(second)
    data = report(first)["result"]
    assert data["idempotents"] == [0, 1]
    assert data["green"]["R"] == [[0], [1]]
    assert data["green"]["L"] == [[0, 1]]
    assert data["pseudovarieties"]["left-zero"] is True
    assert data["pseudovarieties"]["groups"] is False


def test_modulus(runner, files):
    result = runner.invoke(cli, ["modulus", "grp", files["z2.sgp"]])

    assert result.exit_code == 0
    data = report(result)["result"]
    assert data["modulus"] == "grp"
    assert data["sets"] == [[0], [0, 1]]
    assert data["functor_value"]["max_faces"] == [[0, 1]]
    assert data["approximate"] is False


def test_complete(runner, files):
    result = runner.invoke(cli, ["complete", "grp", files["z2.sgp"]])

    assert result.exit_code == 0
    data = report(result)["result"]
    assert data["steps"] == 1
    assert data["levels"][0]["max_faces"] == [[0], [1]]
    assert data["completion"]["face_count"] == 3


def test_nerve(runner, files):
    result = runner.invoke(
        cli,
        ["nerve", "--dom", files["z2.sgp"], "--cod", files["trivial.sgp"], "--graph", files["terminal.rel"]],
    )

    assert result.exit_code == 0
    data = report(result)["result"]
    assert data["nerve"]["max_faces"] == [[0, 1]]
    assert data["division"] is False
    assert data["relmorph"]["graph"] == [[0, 0], [1, 0]]


def test_nerve_rejects_open_graph(runner, files):
    result = runner.invoke(
        cli,
        ["nerve", "--dom", files["z2.sgp"], "--cod", files["z2.sgp"], "--graph", files["open.rel"]],
    )

    assert result.exit_code == 1
    assert report(result)["error"]["code"] == "not_product_closed"


def test_oracle(runner, files):
    result = runner.invoke(cli, ["oracle", "--pv", "groups", "--bound", "2", files["z2.sgp"]])

    assert result.exit_code == 0
    data = report(result)["result"]
    assert data["label"] == "upper"
    assert data["value"]["max_faces"] == [[0], [1]]
    assert data["codomains_used"] == 2


def test_certify_points_mismatch(runner, files):
    result = runner.invoke(cli, ["certify", "--pv", "groups", "--modulus", "grp", "--bound", "2", files["z2.sgp"]])

    assert result.exit_code == 1
    assert report(result)["error"]["code"] == "points_mismatch"


def test_reverse_check(runner, files):
    result = runner.invoke(cli, ["reverse-check", "--pv", "r-trivial", "--bound", "2", files["lz2.sgp"]])

    assert result.exit_code == 0
    assert report(result)["result"] == {"pseudovariety": "r-trivial", "reversed": "l-trivial", "agrees": True}


def test_check_laws_single_suite(runner):
    result = runner.invoke(cli, ["check-laws", "--order", "2", "--suite", "closure"])

    assert result.exit_code == 0
    data = report(result)["result"]
    assert data["passed"] is True
    assert [suite["name"] for suite in data["suites"]] == ["closure"]


def test_check_laws_unknown_suite(runner):
    result = runner.invoke(cli, ["check-laws", "--suite", "nope"])

    assert result.exit_code == 2


def test_config_init_and_show(runner):
    result = runner.invoke(cli, ["config", "init"])
    assert result.exit_code == 0
    assert get_config_path().exists()

    again = runner.invoke(cli, ["config", "init"])
    assert again.exit_code == 1

    forced = runner.invoke(cli, ["config", "init", "--force"])
    assert forced.exit_code == 0

    shown = runner.invoke(cli, ["config", "show"])
    assert shown.exit_code == 0
    data = report(shown)["result"]
    assert data["source"] == str(get_config_path())
    assert data["limits"]["max_enumeration_order"] == 5


def test_config_show_defaults(runner):
    result = runner.invoke(cli, ["config", "show"])

    assert result.exit_code == 0
    assert report(result)["result"]["source"] == "defaults"


def test_verbose_is_scoped_to_the_invocation(runner, files):
    result = runner.invoke(cli, ["--verbose", "validate", files["z2.sgp"]])

    assert result.exit_code == 0
    assert "POINTLIKE_LAB_DEBUG" not in os.environ
    assert not debug_mode_enabled()
    consoles = [h for h in logging.getLogger("pointlike_lab").handlers if type(h) is logging.StreamHandler]
    assert [h.level for h in consoles] == [logging.INFO]


def test_quiet_invocation_logs_warnings_only(runner, files):
    result = runner.invoke(cli, ["validate", files["z2.sgp"]])

    assert result.exit_code == 0
    consoles = [h for h in logging.getLogger("pointlike_lab").handlers if type(h) is logging.StreamHandler]
    assert [h.level for h in consoles] == [logging.WARNING]


def test_config_is_read_once_per_command(runner, files, monkeypatch):
    calls = []
    original = config_module.load_config

    def counting_load_config():
        calls.append(1)
        return original()

    monkeypatch.setattr(config_module, "load_config", counting_load_config)
    result = runner.invoke(cli, ["certify", "--pv", "aperiodic", "--modulus", "grp", "--bound", "3", files["z2.sgp"]])

    assert result.exit_code == 0
    assert len(calls) == 1
