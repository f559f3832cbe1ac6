"""Chart emission: layout rules and determinism."""

import pytest

from edgebench.charts import EmptyInput, emit_charts, grouped_bar_svg
from edgebench.config import load_fixture
from edgebench.runner import run_scenario


@pytest.fixture(scope="module")
def audio_reports():
    return [
        run_scenario(load_fixture("scenarios/greengrass-audio")).report,
        run_scenario(load_fixture("scenarios/azureedge-audio")).report,
    ]


def test_empty_input_rejected(tmp_path):
    with pytest.raises(EmptyInput):
        emit_charts([], tmp_path)


def test_single_report_single_bar_group(tmp_path, audio_reports):
    paths = emit_charts(audio_reports[:1], tmp_path)
    names = {p.stem for p in paths}
    assert {"e2e_ms", "flight_ms", "residence_ms", "c_edge_ms", "payload_bytes"} <= names
    svg = (tmp_path / "e2e_ms.svg").read_text()
    assert svg.count("<rect") >= 2  # background + one bar + legend swatch


def test_two_platforms_paired_bars(tmp_path, audio_reports):
    emit_charts(audio_reports, tmp_path)
    svg = (tmp_path / "e2e_ms.svg").read_text()
    assert "greengrass" in svg and "azureedge" in svg
    assert "audio" in svg


def test_identical_inputs_identical_bytes(tmp_path, audio_reports):
    a = emit_charts(audio_reports, tmp_path / "a")
    b = emit_charts(audio_reports, tmp_path / "b")
    for pa, pb in zip(a, b):
        assert pa.read_bytes() == pb.read_bytes()


def test_resource_charts_included(tmp_path, audio_reports):
    paths = emit_charts(audio_reports, tmp_path)
    names = {p.stem for p in paths}
    assert "cpu_pct" in names and "ram_mb" in names


def test_zero_values_render(tmp_path):
    svg = grouped_bar_svg("empty", ["g"], [("s", {"g": 0.0})])
    assert svg.startswith("<svg")
