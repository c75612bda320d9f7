import tomllib
from pathlib import Path


def test_required_configs_exist():
    repo = Path(__file__).resolve().parents[1]
    assert (repo / "pyproject.toml").exists()
    assert (repo / "requirements.txt").exists()
    assert (repo / "mypy.ini").exists()


def test_console_script_points_at_cli():
    repo = Path(__file__).resolve().parents[1]
    project = tomllib.loads((repo / "pyproject.toml").read_text())["project"]
    assert project["scripts"]["holoscope"] == "cli.main:main"
    assert (repo / "cli" / "main.py").exists()


def test_settings_fields_are_all_read():
    from lib.settings import Settings

    assert set(Settings.model_fields) == {"cache", "log_level", "workers", "metrics_path"}


def test_settings_read_prefixed_environment(monkeypatch):
    from lib.settings import Settings

    monkeypatch.setenv("HOLOSCOPE_WORKERS", "3")
    assert Settings().workers == 3
