"""Structural checks on the emitted SVG documents."""

import xml.etree.ElementTree as ET

import numpy as np
import pytest

from bubblesim import ModelParams, SweepSpec, plot_sweep, plot_trajectory, run_sweep, simulate
from synthetic import flat_trajectory

NS = {"svg": "http://www.w3.org/2000/svg"}
P = ModelParams(T=300)


def _root(path):
    return ET.parse(path).getroot()  # raises if not well-formed XML


def test_trajectory_plot_has_four_stacked_panels_in_order(tmp_path):
    path = tmp_path / "traj.svg"
    plot_trajectory(simulate(P, 1), path)
    root = _root(path)
    panels = root.findall(".//svg:g[@class='panel']", NS)
    assert len(panels) == 4
    assert [p.get("data-name") for p in panels] == [
        "log_price", "momentum", "intensity", "direction",
    ]
    # panels are stacked top to bottom in document order
    tops = [float(p.find("svg:rect", NS).get("y")) for p in panels]
    assert tops == sorted(tops)
    for p in panels:
        assert p.find("svg:polyline[@class='series']", NS) is not None
        assert p.find("svg:text[@class='title']", NS) is not None


def test_threshold_line_sits_in_the_momentum_panel(tmp_path):
    path = tmp_path / "traj.svg"
    plot_trajectory(simulate(P, 1), path)
    panels = _root(path).findall(".//svg:g[@class='panel']", NS)
    lines = [p.findall("svg:line[@class='threshold']", NS) for p in panels]
    assert [len(ls) for ls in lines] == [0, 1, 0, 0]
    thr = lines[1][0]
    assert float(thr.get("data-level")) == P.b
    assert thr.get("stroke-dasharray") is not None  # dashed, per the layout
    # horizontal: same y at both ends
    assert thr.get("y1") == thr.get("y2")


def test_flat_trajectory_still_renders(tmp_path):
    path = tmp_path / "flat.svg"
    plot_trajectory(flat_trajectory(n=30), path)
    root = _root(path)
    assert len(root.findall(".//svg:g[@class='panel']", NS)) == 4


def test_time_axis_is_labeled(tmp_path):
    path = tmp_path / "traj.svg"
    plot_trajectory(simulate(P, 1), path)
    labels = [t.text for t in _root(path).findall(".//svg:text", NS)]
    assert "t" in labels
    assert "0" in labels and str(P.T) in labels


def test_plot_output_is_deterministic(tmp_path):
    traj = simulate(P, 2)
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    plot_trajectory(traj, a)
    plot_trajectory(traj, b)
    assert a.read_bytes() == b.read_bytes()


# ---------------------------------------------------------------- sweep plot


@pytest.fixture(scope="module")
def small_sweep():
    spec = SweepSpec(base=P, axis="b", values=(0.0001, 0.01, 0.02), seeds=(0, 1, 2))
    return run_sweep(spec)


def test_sweep_plot_has_one_series_and_legend_entry_per_value(tmp_path, small_sweep):
    path = tmp_path / "sweep.svg"
    plot_sweep(small_sweep, path)
    root = _root(path)
    series = root.findall(".//svg:polyline[@class='series']", NS)
    assert len(series) == 3
    assert [float(s.get("data-value")) for s in series] == [0.0001, 0.01, 0.02]
    entries = root.findall(".//svg:g[@class='legend-entry']", NS)
    assert len(entries) == 3
    labels = [e.find("svg:text", NS).text for e in entries]
    assert labels == ["b=0.0001", "b=0.01", "b=0.02"]
    # distinct colors per value
    strokes = [s.get("stroke") for s in series]
    assert len(set(strokes)) == 3


def test_sweep_plot_inset_shows_median_peaks(tmp_path, small_sweep):
    path = tmp_path / "sweep.svg"
    plot_sweep(small_sweep, path)
    root = _root(path)
    insets = root.findall(".//svg:g[@class='inset']", NS)
    assert len(insets) == 1
    assert len(insets[0].findall("svg:circle", NS)) == 3
    assert insets[0].find("svg:polyline[@class='inset-series']", NS) is not None


def test_single_value_sweep_plots_one_curve(tmp_path):
    result = run_sweep(SweepSpec(base=P, axis="b", values=(0.02,), seeds=(0,)))
    path = tmp_path / "one.svg"
    plot_sweep(result, path)
    root = _root(path)
    assert len(root.findall(".//svg:polyline[@class='series']", NS)) == 1
    assert len(root.findall(".//svg:g[@class='legend-entry']", NS)) == 1
