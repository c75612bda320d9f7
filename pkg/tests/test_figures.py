"""
Test the figure datasets and their shape checks
"""
import dataclasses
import math

import pytest

from cli.commands import figures
from cli.commands.figures import (
    SERIES_DEPTHS,
    build_dataset,
    check_mi_vs_size,
    check_negativity_vs_scale,
    check_rate_of_change,
    default_datasets,
)
from cli.config import RunConfig
from cli.emit import read_series
from cli.main import run_command
from lib.measures import Phase
from lib.rgflow import ScanRecord


@pytest.fixture
def datasets():
    return {dataset.name: dataset for dataset in default_datasets()}


def test_dataset_names_and_families(datasets):
    assert sorted(datasets) == [
        "fig1_mi_vs_size_zw0.2",
        "fig1_mi_vs_size_zw0.5",
        "fig1_mi_vs_size_zw0.8",
        "fig2_negativity_vs_scale",
        "fig3_multipartite_vs_scale",
        "fig4_rate_of_change",
        "fig5_negativity_vs_size_zh0.2",
        "fig5_negativity_vs_size_zh0.5",
        "fig5_negativity_vs_size_zh0.8",
    ]
    walls = [d.series["z_w"] for d in datasets.values() if d.family == "fig1_mi_vs_size"]
    horizons = [d.series["z_h"] for d in datasets.values() if d.family == "fig5_negativity_vs_size"]
    assert tuple(walls) == SERIES_DEPTHS
    assert tuple(horizons) == SERIES_DEPTHS
    for dataset in datasets.values():
        if dataset.series and "z_w" in dataset.series:
            assert dataset.geometry.z_w == dataset.series["z_w"]
        if dataset.series and "z_h" in dataset.series:
            assert dataset.geometry.z_h == dataset.series["z_h"]


@pytest.mark.parametrize("z_w", SERIES_DEPTHS)
def test_mi_vs_size_plateaus(datasets, z_w):
    dataset = datasets[f"fig1_mi_vs_size_zw{z_w}"]
    records = build_dataset(dataset, RunConfig(), steps=30)
    assert dataset.check(records) is None
    assert records[0].mi == 0.0
    assert records[-1].mi == pytest.approx(2.0 * math.log(z_w / 0.1), rel=1e-8)


def test_negativity_drops_with_gap(datasets):
    dataset = datasets["fig2_negativity_vs_scale"]
    records = build_dataset(dataset, RunConfig(), steps=20)
    assert dataset.check(records) is None
    assert records[-1].negativity_proxy == 0.0


def test_multipartite_peaks_at_transition(datasets):
    dataset = datasets["fig3_multipartite_vs_scale"]
    records = build_dataset(dataset, RunConfig(), steps=10)
    assert dataset.check(records) is None
    assert records[0].multipartite == pytest.approx(0.0, abs=1e-9)


def test_rate_of_change_flattens_past_transition(datasets):
    dataset = datasets["fig4_rate_of_change"]
    records = build_dataset(dataset, RunConfig(), steps=19)
    assert dataset.check(records) is None
    assert all(r.rate is not None for r in records)


@pytest.mark.parametrize("z_h", SERIES_DEPTHS)
def test_negativity_jumps_on_with_size(datasets, z_h):
    dataset = datasets[f"fig5_negativity_vs_size_zh{z_h}"]
    records = build_dataset(dataset, RunConfig(), steps=20)
    assert dataset.check(records) is None
    assert records[-1].negativity_proxy > 0.0


def test_checks_report_wrong_shapes():
    flat = [ScanRecord(parameter_value=x, mi=1.0) for x in (0.1, 0.2, 0.3)]
    assert check_mi_vs_size(flat) is not None

    never_flips = [
        ScanRecord(parameter_value=x, mi=1.0, negativity_proxy=1.0, phase=Phase.CONNECTED)
        for x in (0.1, 0.2, 0.3)
    ]
    assert check_negativity_vs_scale(never_flips) == "expected exactly one phase flip"

    rising = [ScanRecord(parameter_value=x, mi=1.0, rate=0.5) for x in (0.3, 0.4, 0.6)]
    assert check_rate_of_change(rising) is not None


def test_negativity_vs_scale_accepts_sharp_drop():
    records = [
        ScanRecord(parameter_value=0.1, mi=2.0, negativity_proxy=1.5, phase=Phase.CONNECTED),
        ScanRecord(parameter_value=0.3, mi=0.5, negativity_proxy=1.2, phase=Phase.CONNECTED),
        ScanRecord(parameter_value=0.5, mi=0.0, negativity_proxy=0.0, phase=Phase.DISCONNECTED),
    ]
    assert check_negativity_vs_scale(records) is None


@pytest.fixture
def small_datasets(datasets):
    passing = dataclasses.replace(datasets["fig1_mi_vs_size_zw0.5"], steps=10)
    failing = dataclasses.replace(
        datasets["fig3_multipartite_vs_scale"], steps=10, check=lambda records: "peak in the wrong place"
    )
    return passing, failing


def test_figures_command_writes_series_metadata(tmp_path, capsys, monkeypatch, small_datasets):
    passing, _ = small_datasets
    monkeypatch.setattr(figures, "default_datasets", lambda: (passing,))
    assert run_command(["figures", "--out", str(tmp_path)]) == 0
    assert "shapes_ok=1" in capsys.readouterr().out

    _, metadata = read_series(tmp_path / "fig1_mi_vs_size_zw0.5.csv")
    assert metadata["family"] == "fig1_mi_vs_size"
    assert metadata["series"] == {"z_w": 0.5}
    assert metadata["shape_check"] == "pass"


def test_failed_shape_check_exits_nonzero_after_writing(tmp_path, capsys, monkeypatch, small_datasets):
    failing_last = small_datasets
    monkeypatch.setattr(figures, "default_datasets", lambda: failing_last)
    code = run_command(["figures", "--out", str(tmp_path)])
    _, err = capsys.readouterr()
    assert code == 3
    assert "fig3_multipartite_vs_scale (peak in the wrong place)" in err

    assert (tmp_path / "fig1_mi_vs_size_zw0.5.csv").exists()
    _, metadata = read_series(tmp_path / "fig3_multipartite_vs_scale.csv")
    assert metadata["shape_check"] == "peak in the wrong place"
