import pytest

from src.cli.main import EXIT_ERROR, EXIT_OK, EXIT_USAGE, run


@pytest.fixture
def cli(tmp_path, capsys):
    table = tmp_path / "table.json"

    def invoke(*argv):
        code = run(["--table", str(table), "--threads", "1", *argv])
        captured = capsys.readouterr()
        return code, captured.out.splitlines(), captured.err

    return invoke


def test_solve(cli):
    code, out, _ = cli("solve", "--family", "gp-int", "--k", "3", "--n", "10", "--witness")
    assert code == EXIT_OK
    assert out[0] == "G = 8"
    assert out[1].startswith("witness = {")


def test_solve_ap(cli):
    code, out, _ = cli("solve", "--family", "ap", "--k", "3", "--n", "9")
    assert code == EXIT_OK
    assert out[0] == "G = 5"


def test_solve_with_oracle(cli):
    code, out, _ = cli("solve", "--family", "square", "--n", "12", "--oracle")
    assert code == EXIT_OK
    assert out[0] == "G = 10"


def test_ramsey_from_table(cli):
    code, out, _ = cli("ramsey", "--which", "space", "--d", "5", "--s", "2", "--k", "2")
    assert code == EXIT_OK
    assert out == ["c_{5,2,2} = 21"]


def test_ramsey_computes_missing_value(cli, tmp_path):
    code, out, _ = cli("ramsey", "--which", "dhj", "--d", "2", "--k", "4")
    assert code == EXIT_OK
    assert out == ["c_{2,4} = 12"]
    code, out, _ = cli("table", "export")
    assert any('"COMPUTED"' in line for line in out)


def test_bound_gp_rat(cli):
    code, out, _ = cli("bound", "--which", "gp-rat", "--k", "3", "--depth", "6", "--digits", "6")
    assert code == EXIT_OK
    assert out[0] == "6/7 - 16755239936/23695945898625 ≈ 0.856436 (upper)"


def test_bound_gp_int_default_depth(cli):
    code, out, _ = cli("bound", "--which", "gp-int")
    assert code == EXIT_OK
    assert "0.857131" in out[0]


def test_bound_prime_power(cli):
    code, out, _ = cli("bound", "--which", "prime-power", "--p", "2", "--k", "3", "--depth", "3")
    assert code == EXIT_OK
    assert out[0] == "1 - 1/8 ≈ 0.875000 (upper)"


def test_bound_finite(cli):
    code, out, _ = cli("bound-finite", "--grading", "prime-power", "--p", "2", "--k", "3", "--n", "8",
                       "--compare-exact")
    assert code == EXIT_OK
    assert "G <= 7" in out
    assert "exact G = 7 (sound)" in out


def test_grading(cli):
    code, out, _ = cli("grading", "--build", "prime-power", "--n", "8", "--p", "2", "--verify")
    assert code == EXIT_OK
    assert "level sizes = [8, 2, 1, 1]" in out
    assert "alpha = [2, 1, 0, 1]" in out
    assert "(1) pass" in out


def test_grid_counts(cli):
    code, out, _ = cli("grid", "--object", "line", "--k", "3", "--d", "2", "--count-only")
    assert code == EXIT_OK
    assert out == ["lines = 7"]
    code, out, _ = cli("grid", "--object", "geoline", "--k", "3", "--d", "2")
    assert out[0] == "geolines = 8"
    assert len(out) == 9


def test_threshold(cli):
    code, out, _ = cli("threshold", "--k", "3", "--max-n", "20")
    assert code == EXIT_OK
    assert out[0] == "n = 7"
    code, out, _ = cli("threshold", "--k", "3", "--max-n", "5")
    assert out == ["NOT_FOUND"]


def test_machine_output(cli):
    code, out, _ = cli("--machine", "bound", "--which", "gp-int", "--depth", "1")
    assert code == EXIT_OK
    assert "value=6/7" in out
    assert "decimal=0.857143" in out


@pytest.mark.parametrize("which", ["gp-rat", "gp-int"])
def test_machine_terms_carry_human_numbers(cli, which):
    argv = ("bound", "--which", which, "--depth", "2", "--terms")
    code, human, _ = cli(*argv)
    assert code == EXIT_OK
    code, machine, _ = cli("--machine", *argv)
    assert code == EXIT_OK
    pairs = dict(line.split("=", 1) for line in machine)

    term_lines = [line.strip() for line in human if line.strip().startswith("[")]
    assert term_lines
    for line in term_lines:
        index, rest = line[1:].split("]", 1)
        product, contribution = rest.split("=")
        coefficient, weight = product.split("×")
        assert pairs[f"term.{index}.coefficient"] == coefficient.strip()
        assert pairs[f"term.{index}.weight"] == weight.strip()
        assert pairs[f"term.{index}.contribution"] == contribution.strip()

    assert human[1] == f"= {pairs['value']}"
    assert human[0].endswith(f"≈ {pairs['decimal']} ({pairs['direction']})")


def test_usage_errors(cli):
    code, _, err = cli("solve", "--family", "gp-int")
    assert code == EXIT_USAGE
    assert "--n" in err
    code, _, _ = cli("solve", "--family", "fibonacci", "--n", "5")
    assert code == EXIT_USAGE
    code, _, _ = cli("bound", "--which", "prime-power")
    assert code == EXIT_USAGE


def test_computation_errors(cli):
    code, _, err = cli("--budget", "3", "solve", "--family", "ap", "--k", "3", "--n", "60")
    assert code == EXIT_ERROR
    assert "error:" in err


def test_table_import_conflict(cli, tmp_path):
    other = tmp_path / "other.json"
    other.write_text(
        '{"version": "1.0", "records": [{"kind": "DHJ", "params": {"d": 2, "k": 3}, "value": 7}]}',
        encoding="utf-8")
    code, _, err = cli("table", "import", "--file", str(other))
    assert code == EXIT_ERROR
    assert "error:" in err


def test_output_is_deterministic(cli):
    first = cli("solve", "--family", "gp-rat", "--n", "30", "--witness")
    second = cli("solve", "--family", "gp-rat", "--n", "30", "--witness")
    assert first[1] == second[1]
