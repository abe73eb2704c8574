import pytest

from hiersched import (
    ScenarioError,
    Tier,
    bundled_scenario_path,
    load_bundled_scenario,
    load_scenario,
    parse_scenario,
    save_scenario,
)

MINIMAL_TOPOLOGY = """
topology:
  cloud: {cores: 12, frequency: 2200000000, ops_per_cycle: 16}
  edge: {cores: 4, frequency: 2200000000, ops_per_cycle: 16}
  device: {cores: 4, frequency: 1500000000, ops_per_cycle: 16}
"""

JOBS_ONLY = MINIMAL_TOPOLOGY + """
jobs:
  - {id: A, release: 0, weight: 1, cloud_processing: 1, cloud_transmission: 2,
     edge_processing: 1, edge_transmission: 1, device_processing: 3}
"""


class TestBundledScenario:
    def test_counts_and_identity(self, reference_scenario):
        assert reference_scenario.name == "icu-reference"
        assert len(reference_scenario.workloads) == 18
        assert len(reference_scenario.jobs) == 10
        assert len(reference_scenario.anchors) == 3

    def test_topology_capabilities(self, reference_scenario):
        topo = reference_scenario.topology
        assert topo.cloud.flops == 422.4e9
        assert topo.edge.flops == 140.8e9
        assert topo.device.flops == 96e9
        assert topo.cloud_device_link.latency == 0.042
        assert topo.edge_device_link.bandwidth == 10000000

    def test_anchors_become_overrides(self, reference_scenario):
        overrides = reference_scenario.calibration.per_app_overrides
        assert set(overrides) == {
            "short-of-breath-alerts",
            "life-death-prediction",
            "phenotype-classification",
        }
        assert overrides["life-death-prediction"].unit_proc_device == pytest.approx(79 / 64)

    def test_path_exists(self):
        assert bundled_scenario_path().exists()

    def test_workload_lookup(self, reference_scenario):
        assert reference_scenario.workload("WL3-2").data_size_units == 128
        with pytest.raises(KeyError):
            reference_scenario.workload("WL9-9")


class TestRoundTrip:
    def test_save_load_is_identity(self, tmp_path):
        original = load_bundled_scenario()
        out = tmp_path / "copy.scn"
        save_scenario(original, out)
        assert load_scenario(out) == original

    def test_explicit_overrides_survive(self, tmp_path):
        text = MINIMAL_TOPOLOGY + """
calibration:
  overrides:
    app-x: {unit_proc_device: 1.25, unit_tx_edge: 0.5, unit_tx_cloud: 2.0}
workloads:
  - {id: W, application: app-x, s: 8, size_bytes: 800, comp: 1000, w: 1}
"""
        scenario = parse_scenario(text)
        out = tmp_path / "explicit.scn"
        save_scenario(scenario, out)
        reloaded = load_scenario(out)
        assert reloaded.calibration.per_app_overrides["app-x"].unit_tx_cloud == 2.0
        assert reloaded == scenario


class TestLoadErrors:
    def test_invalid_yaml_reports_location(self, tmp_path):
        path = tmp_path / "broken.scn"
        path.write_text("topology: {cores: [unclosed")
        with pytest.raises(ScenarioError, match="broken.scn"):
            load_scenario(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ScenarioError, match="cannot read"):
            load_scenario(tmp_path / "nope.scn")

    def test_empty_document(self):
        with pytest.raises(ScenarioError, match="empty"):
            parse_scenario("")

    def test_negative_bandwidth_names_the_field(self):
        # indentation folds the link into the topology block
        text = MINIMAL_TOPOLOGY + """
  cloud_device_link: {latency: 0.01, bandwidth: -5}
"""
        with pytest.raises(ScenarioError, match="cloud_device_link"):
            parse_scenario(text)

    def test_missing_topology(self):
        with pytest.raises(ScenarioError, match="topology"):
            parse_scenario("name: x")

    def test_bad_job_field_names_its_path(self):
        text = MINIMAL_TOPOLOGY + """
jobs:
  - {id: A, release: 0, weight: 0, cloud_processing: 1, cloud_transmission: 2,
     edge_processing: 1, edge_transmission: 1, device_processing: 3}
"""
        with pytest.raises(ScenarioError, match=r"jobs\[0\]"):
            parse_scenario(text)

    def test_non_integer_job_cost_rejected(self):
        text = MINIMAL_TOPOLOGY + """
jobs:
  - {id: A, release: 0, weight: 1, cloud_processing: 1.5, cloud_transmission: 2,
     edge_processing: 1, edge_transmission: 1, device_processing: 3}
"""
        with pytest.raises(ScenarioError, match="cloud_processing"):
            parse_scenario(text)

    def test_non_numeric_frequency_rejected(self):
        text = """
topology:
  cloud: {cores: 12, frequency: fast, ops_per_cycle: 16}
  edge: {cores: 4, frequency: 2200000000, ops_per_cycle: 16}
  device: {cores: 4, frequency: 1500000000, ops_per_cycle: 16}
"""
        with pytest.raises(ScenarioError, match="frequency"):
            parse_scenario(text)

    def test_override_without_matching_workload(self):
        text = MINIMAL_TOPOLOGY + """
calibration:
  overrides:
    ghost: {unit_proc_device: 1.0, unit_tx_edge: 1.0, unit_tx_cloud: 1.0}
"""
        with pytest.raises(ScenarioError, match="ghost"):
            parse_scenario(text)

    def test_duplicate_workload_ids(self):
        text = MINIMAL_TOPOLOGY + """
workloads:
  - {id: W, application: a, s: 1, size_bytes: 1, comp: 1, w: 1}
  - {id: W, application: a, s: 2, size_bytes: 2, comp: 1, w: 1}
"""
        with pytest.raises(ScenarioError, match="duplicate"):
            parse_scenario(text)

    def test_anchor_conflicting_with_override(self):
        text = MINIMAL_TOPOLOGY + """
calibration:
  anchors:
    - {application: a, s: 64, device_total: 79, edge_total: 109, cloud_total: 212}
  overrides:
    a: {unit_proc_device: 1.0, unit_tx_edge: 1.0, unit_tx_cloud: 1.0}
workloads:
  - {id: W, application: a, s: 1, size_bytes: 1, comp: 1, w: 1}
"""
        with pytest.raises(ScenarioError, match="already has an explicit override"):
            parse_scenario(text)

    def test_inconsistent_anchor_reports_index(self):
        text = MINIMAL_TOPOLOGY + """
calibration:
  anchors:
    - {application: a, s: 64, device_total: 79, edge_total: 50, cloud_total: 212}
workloads:
  - {id: W, application: a, s: 1, size_bytes: 1, comp: 1, w: 1}
"""
        with pytest.raises(ScenarioError, match=r"anchors\[0\]"):
            parse_scenario(text)


class TestLenientShapes:
    def test_jobs_only_scenario_is_legal(self):
        scenario = parse_scenario(JOBS_ONLY)
        assert scenario.workloads == ()
        assert len(scenario.jobs) == 1
        assert scenario.jobs[0].ready(Tier.CLOUD) == 2

    def test_workloads_without_jobs(self):
        text = MINIMAL_TOPOLOGY + """
workloads:
  - {id: W, application: a, s: 1, size_bytes: 1, comp: 1, w: 1}
"""
        scenario = parse_scenario(text)
        assert scenario.jobs == ()

    def test_default_name_comes_from_source(self, tmp_path):
        path = tmp_path / "my_setup.scn"
        path.write_text(MINIMAL_TOPOLOGY)
        assert load_scenario(path).name == "my_setup"
