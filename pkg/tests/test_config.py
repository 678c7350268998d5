from src.config import DEFAULT_CONFIG_PATH, PROJECT_ROOT, AppConfig, load_config


def test_default_config_file():
    config = load_config()
    assert DEFAULT_CONFIG_PATH.exists()
    assert config.solver.provider == "branch_bound"
    assert config.solver.oracle_cap == 24
    assert config.bounds.digits == 6
    assert config.bounds.square_depth == 5
    assert config.table.verify_max_vertices == 81


def test_missing_config_file_uses_defaults(tmp_path):
    config = load_config(str(tmp_path / "absent.yaml"))
    assert config == AppConfig()


def test_placeholders_are_expanded(tmp_path, monkeypatch):
    path = tmp_path / "config.yaml"
    path.write_text(
        "solver:\n  provider: \"${PROSCRIBE_TEST_PROVIDER}\"\n  threads: 2\n"
        "table:\n  path: \"${PROSCRIBE_TEST_UNSET}\"\n"
        "logging:\n  level: \"DEBUG\"\n",
        encoding="utf-8")
    monkeypatch.setenv("PROSCRIBE_TEST_PROVIDER", "exhaustive")
    monkeypatch.delenv("PROSCRIBE_TEST_UNSET", raising=False)
    config = load_config(str(path))
    assert config.solver.provider == "exhaustive"
    assert config.solver.worker_count == 2
    assert config.table.path == ""
    assert config.log_level == "DEBUG"


def test_table_path_precedence(tmp_path, monkeypatch):
    table = AppConfig().table
    monkeypatch.delenv("PROSCRIBE_TABLE", raising=False)
    assert table.resolve_path() == PROJECT_ROOT / "data" / "cache" / "ramsey_table.json"

    monkeypatch.setenv("PROSCRIBE_TABLE", str(tmp_path / "env.json"))
    assert table.resolve_path() == tmp_path / "env.json"
    assert table.resolve_path(str(tmp_path / "cli.json")) == tmp_path / "cli.json"
    assert table.bundled_path == PROJECT_ROOT / "data" / "default_table.json"
