import io
import json
import os

import pytest

import realzk.cli as cli
from realzk.fixtures import fixture_text
from realzk.ring import ComparisonReport


@pytest.fixture()
def pentagon_file(tmp_path):
    path = tmp_path / "pentagon.json"
    path.write_text(fixture_text("pentagon"))
    return str(path)


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    args = cli.build_parser().parse_args(argv)
    code = cli.run(cli.config_from_args(args), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_validate(pentagon_file):
    code, out, err = run_cli(["validate", pentagon_file])
    assert code == 0 and err == ""
    data = json.loads(out)
    assert data["m"] == 5 and data["simplices"] == 11 and data["ghost_vertices"] == []


def test_betti(pentagon_file):
    code, out, _ = run_cli(["betti", pentagon_file])
    assert code == 0
    data = json.loads(out)
    assert data["betti"] == {"0": 1, "1": 10, "2": 1}
    assert data["torsion"] == {}
    assert data["euler_char"] == -8


def test_cohomology_includes_generators(pentagon_file):
    code, out, _ = run_cli(["cohomology", pentagon_file])
    data = json.loads(out)
    assert code == 0
    assert len(data["generators"]) == 12
    assert data["generators"][0]["generators"] == ["1"]


def test_hochster_table_output(pentagon_file):
    code, out, _ = run_cli(["hochster", pentagon_file])
    data = json.loads(out)
    assert code == 0 and len(data["table"]) == 12


def test_ring_routes(pentagon_file):
    code, out, _ = run_cli(["ring", pentagon_file])
    data = json.loads(out)
    assert code == 0 and data["route"] == "hochster"
    assert len(data["generators"]) == 12
    code, out, _ = run_cli(["ring", pentagon_file, "--route", "oracle"])
    data = json.loads(out)
    assert code == 0 and data["route"] == "oracle"


def test_oracle_command(pentagon_file):
    code, out, _ = run_cli(["oracle", pentagon_file])
    data = json.loads(out)
    assert code == 0
    assert data["cells"] == [32, 80, 40]
    assert [g["rank"] for g in data["groups"]] == [1, 10, 1]


def test_oracle_dump_complex(pentagon_file):
    code, out, _ = run_cli(["oracle", pentagon_file, "--dump-complex"])
    data = json.loads(out)
    assert data["complex"]["dims"] == [32, 80, 40]
    assert len(data["complex"]["coboundaries"]) == 3


def test_compare(pentagon_file):
    code, out, _ = run_cli(["compare", pentagon_file])
    data = json.loads(out)
    assert code == 0 and data["match"] is True


def test_check_flag(pentagon_file):
    code, out, _ = run_cli(["betti", pentagon_file, "--check"])
    data = json.loads(out)
    assert code == 0
    assert data["check"]["match"] is True


def test_exit_input_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"m": 5, "facets": [[1, 7]]}')
    code, out, err = run_cli(["betti", str(bad)])
    assert code == cli.EXIT_INPUT and out == ""
    assert json.loads(err)["error"]["type"] == "input"


def test_exit_missing_file():
    code, _, err = run_cli(["betti", "/nonexistent/path.json"])
    assert code == cli.EXIT_INPUT
    assert json.loads(err)["error"]["type"] == "input"


def test_exit_size_limit(tmp_path):
    big = tmp_path / "big.json"
    big.write_text(json.dumps({"m": 25, "facets": [[1, 2]]}))
    code, _, err = run_cli(["betti", str(big)])
    assert code == cli.EXIT_SIZE
    assert json.loads(err)["error"]["type"] == "size-limit"


def test_exit_cell_cap(pentagon_file):
    code, _, err = run_cli(["oracle", pentagon_file, "--max-cells", "10"])
    assert code == cli.EXIT_SIZE


def test_exit_mismatch_path(pentagon_file, monkeypatch):
    # the mismatch exit is unreachable with a correct engine, so fake the
    # comparison result to exercise the code path
    fake = ComparisonReport(ok=False, additive={}, basis_match_failures=["x"],
                            product_failures=[])
    monkeypatch.setattr(cli, "compare_rings", lambda a, b: fake)
    code, out, _ = run_cli(["compare", pentagon_file])
    assert code == cli.EXIT_MISMATCH
    assert json.loads(out)["match"] is False
    code, out, _ = run_cli(["betti", pentagon_file, "--check"])
    assert code == cli.EXIT_MISMATCH


def test_unknown_flag_rejected(pentagon_file):
    with pytest.raises(SystemExit) as exc:
        cli.build_parser().parse_args(["betti", pentagon_file, "--bogus"])
    assert exc.value.code == 2


def test_byte_identical_output(pentagon_file):
    runs = [run_cli(["hochster", pentagon_file])[1] for _ in range(2)]
    runs.append(run_cli(["hochster", pentagon_file, "--workers", "2"])[1])
    assert runs[0] == runs[1] == runs[2]


def test_table_format(pentagon_file):
    code, out, _ = run_cli(["betti", pentagon_file, "--format", "table"])
    assert code == 0
    assert "betti.0" in out and "euler_char" in out
    # derived from the same JSON document
    json_out = json.loads(run_cli(["betti", pentagon_file])[1])
    assert str(json_out["euler_char"]) in out


def test_env_cap_override(pentagon_file, monkeypatch):
    monkeypatch.setenv("REALZK_MAX_M", "3")
    code, _, err = run_cli(["betti", pentagon_file])
    assert code == cli.EXIT_SIZE


def test_text_input_format(tmp_path):
    path = tmp_path / "k.txt"
    path.write_text("3\n1 2\n2 3\n")
    code, out, _ = run_cli(["betti", str(path)])
    assert code == 0
    assert json.loads(out)["betti"]["0"] == 1


def test_config_validation():
    with pytest.raises(ValueError):
        cli.RunConfig(command="betti", input_path="x", m_cap=0)
    with pytest.raises(ValueError):
        cli.RunConfig(command="nope", input_path="x")


def test_main_entry(pentagon_file, capsys):
    assert cli.main(["betti", pentagon_file]) == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)["betti"]["1"] == 10
