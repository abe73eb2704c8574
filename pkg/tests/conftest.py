"""Shared fixtures: the reference topology/calibration, the bundled
scenario, and the random-instance corpus used by the oracle-proximity and
bound-consistency tests."""

from __future__ import annotations

import random

import pytest

from hiersched import (
    CalibrationConstants,
    DeviceSpec,
    Job,
    NetworkLink,
    ObjectiveMode,
    Topology,
    brute_force,
    calibrate_from_anchor,
    load_bundled_scenario,
    random_jobs,
)

# One measured (device, edge, cloud) total per application at s=64; the
# rest of the reference table follows by linearity.
REFERENCE_ANCHORS = {
    "short-of-breath-alerts": (1394.0, 1279.0, 2091.0),
    "life-death-prediction": (79.0, 109.0, 212.0),
    "phenotype-classification": (3618.0, 2931.0, 3115.0),
}

CORPUS_SEED = 1729
CORPUS_SIZE = 200


def make_topology(with_links: bool = True) -> Topology:
    return Topology(
        cloud=DeviceSpec(cores=12, frequency=2.2e9, ops_per_cycle=16),
        edge=DeviceSpec(cores=4, frequency=2.2e9, ops_per_cycle=16),
        device=DeviceSpec(cores=4, frequency=1.5e9, ops_per_cycle=16),
        cloud_device_link=NetworkLink(latency=0.042, bandwidth=2.9e6) if with_links else None,
        edge_device_link=NetworkLink(latency=0.000239, bandwidth=10e6) if with_links else None,
    )


def make_job(
    id: str = "J",
    release: int = 0,
    weight: int = 1,
    cloud: tuple[int, int] = (1, 0),
    edge: tuple[int, int] = (1, 0),
    device: int = 1,
) -> Job:
    """Terse job constructor; cloud/edge are (processing, transmission)."""
    return Job(
        id=id,
        release=release,
        weight=weight,
        cloud_processing=cloud[0],
        cloud_transmission=cloud[1],
        edge_processing=edge[0],
        edge_transmission=edge[1],
        device_processing=device,
    )


@pytest.fixture(scope="session")
def topology() -> Topology:
    return make_topology()


@pytest.fixture(scope="session")
def fitted_calibration(topology) -> CalibrationConstants:
    overrides = {
        app: calibrate_from_anchor(app, 64, device, edge, cloud, topology)
        for app, (device, edge, cloud) in REFERENCE_ANCHORS.items()
    }
    return CalibrationConstants(per_app_overrides=overrides)


@pytest.fixture(scope="session")
def reference_scenario():
    return load_bundled_scenario()


@pytest.fixture(scope="session")
def reference_jobs(reference_scenario) -> list[Job]:
    return list(reference_scenario.jobs)


@pytest.fixture(scope="session")
def oracle_corpus() -> list[list[Job]]:
    """200 random instances small enough for exhaustive enumeration."""
    rng = random.Random(CORPUS_SEED)
    return [random_jobs(rng, rng.randint(3, 6)) for _ in range(CORPUS_SIZE)]


@pytest.fixture(scope="session")
def oracle_optima(oracle_corpus) -> dict[ObjectiveMode, list[int]]:
    """Exhaustive optimum of every corpus instance, per objective mode."""
    return {
        mode: [brute_force(jobs, objective_mode=mode)[1].value(mode) for jobs in oracle_corpus]
        for mode in ObjectiveMode
    }
