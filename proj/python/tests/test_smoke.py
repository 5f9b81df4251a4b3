import os
from pathlib import Path

import pytest

import decharge

SOURCE_DIR = Path(os.environ.get("DECHARGE_SOURCE_DIR", Path(__file__).resolve().parents[2]))
BASIC = SOURCE_DIR / "configs" / "basic.json"


@pytest.fixture(scope="module")
def scenario():
    return decharge.generate(str(BASIC), 1)


def test_generate_is_deterministic(scenario):
    again = decharge.generate(str(BASIC), 1)
    assert again.to_text() == scenario.to_text()
    assert len(scenario.stations) == 91
    assert scenario.num_windows == 12


def test_save_and_load_round_trip(scenario, tmp_path):
    path = tmp_path / "day.txt"
    scenario.save(str(path))
    loaded = decharge.load_scenario(str(path))
    assert loaded.to_text() == scenario.to_text()


@pytest.mark.parametrize("method", decharge.METHODS)
def test_run_every_method(scenario, method):
    report = decharge.run(scenario, method=method, repetitions=2, iterations=5)
    assert report["served"] + report["unserved"] == len(scenario.requests)
    assert report["estimated_waiting_h"] >= 0.0
    assert len(report["station_demand_kj"]) == len(scenario.stations)
    assert len(report["config_hash"]) == 16


def test_greedy_matches_beta_one(scenario):
    greedy = decharge.run(scenario, method="greedy", repetitions=2, iterations=5)
    selfish = decharge.run(scenario, beta=1.0, repetitions=2, iterations=5)
    assert greedy["station_of_request"] == selfish["station_of_request"]


def test_config_hash_tracks_settings(scenario):
    a = decharge.config_hash(scenario, method="decharge")
    assert a == decharge.config_hash(scenario, method="decharge")
    assert a != decharge.config_hash(scenario, method="greedy")


def test_errors_map_to_python(tmp_path):
    with pytest.raises(ValueError):
        decharge.run(decharge.generate(str(BASIC), 2), method="nope")
    bad = tmp_path / "bad.txt"
    bad.write_text("not a scenario\n")
    with pytest.raises(ValueError):
        decharge.load_scenario(str(bad))
