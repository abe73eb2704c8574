"""Domain model: execution tiers, machine capabilities, network links and
AI-workload descriptions.

All types are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import IntEnum

__all__ = [
    "Tier",
    "SHARED_TIERS",
    "DeviceSpec",
    "NetworkLink",
    "Topology",
    "TopologyWarning",
    "ConvLayer",
    "DenseLayer",
    "ModelLayerSpec",
    "WorkloadSpec",
    "device_flops",
    "flops_of_layer",
    "flops_of_model",
]


class Tier(IntEnum):
    """Execution layer of the hierarchy.

    Values rank tiers by distance from where the data is produced, so
    comparing tiers (or taking ``min``) prefers keeping data local. Whether
    a higher tier actually has more compute is a property of the Topology,
    not of this enum.
    """

    DEVICE = 0
    EDGE = 1
    CLOUD = 2

    @property
    def label(self) -> str:
        return self.name.capitalize()


#: Machines that serve many jobs one at a time; end devices are per-job.
SHARED_TIERS = (Tier.CLOUD, Tier.EDGE)


def device_flops(cores: int, frequency: float, ops_per_cycle: int) -> float:
    """Peak capability in FLOPS: cores x clock frequency x ops issued per cycle."""
    if cores <= 0:
        raise ValueError(f"cores must be positive, got {cores}")
    if frequency <= 0:
        raise ValueError(f"frequency must be positive, got {frequency}")
    if ops_per_cycle <= 0:
        raise ValueError(f"ops_per_cycle must be positive, got {ops_per_cycle}")
    return cores * frequency * ops_per_cycle


@dataclass(frozen=True)
class DeviceSpec:
    """Compute capability of one machine; peak FLOPS derived at construction."""

    cores: int
    frequency: float  # Hz
    ops_per_cycle: int
    flops: float = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "flops", device_flops(self.cores, self.frequency, self.ops_per_cycle)
        )


@dataclass(frozen=True)
class NetworkLink:
    """One transmission path, modeled as fixed latency plus a bandwidth term."""

    latency: float  # seconds
    bandwidth: float  # bytes/second

    def __post_init__(self) -> None:
        if self.latency < 0:
            raise ValueError(f"latency must be >= 0, got {self.latency}")
        if self.bandwidth <= 0:
            raise ValueError(f"bandwidth must be positive, got {self.bandwidth}")


class TopologyWarning(UserWarning):
    """The topology is usable but breaks the expected cloud/edge/device shape."""


@dataclass(frozen=True)
class Topology:
    """One cloud server, one edge server and one end-device class, plus the
    two transmission paths seen from the device.

    The cloud-device path is the full route through the edge, so for any
    payload it should cost at least as much as the edge-device hop. Shape
    violations (a slower cloud, or a cloud link that can undercut the edge
    link) are reported as warnings, not errors: every downstream algorithm
    is argmin-based and stays well-defined under any ordering.

    Links may be omitted for scenarios that rely purely on fitted
    per-application calibration.
    """

    cloud: DeviceSpec
    edge: DeviceSpec
    device: DeviceSpec
    edge_device_link: NetworkLink | None = None
    cloud_device_link: NetworkLink | None = None

    def __post_init__(self) -> None:
        if not (self.cloud.flops >= self.edge.flops >= self.device.flops):
            warnings.warn(
                "tier compute capability is not ordered cloud >= edge >= device",
                TopologyWarning,
                stacklevel=2,
            )
        if self.edge_device_link is not None and self.cloud_device_link is not None:
            c, e = self.cloud_device_link, self.edge_device_link
            # Unit cost is latency + bytes/bandwidth, so the cloud path
            # dominates for every payload iff both conditions hold.
            if c.latency < e.latency or c.bandwidth > e.bandwidth:
                warnings.warn(
                    "cloud-device link can be cheaper than the edge-device link "
                    "for some payloads",
                    TopologyWarning,
                    stacklevel=2,
                )

    def spec_for(self, tier: Tier) -> DeviceSpec:
        if tier is Tier.CLOUD:
            return self.cloud
        if tier is Tier.EDGE:
            return self.edge
        return self.device

    def link_for(self, tier: Tier) -> NetworkLink | None:
        """Transmission path from the device to `tier`; None for the device itself."""
        if tier is Tier.CLOUD:
            return self.cloud_device_link
        if tier is Tier.EDGE:
            return self.edge_device_link
        return None


@dataclass(frozen=True)
class ConvLayer:
    """2-D convolution dimensions, as needed for its operation count."""

    height: int
    width: int
    in_channels: int
    kernel: int
    out_channels: int

    def __post_init__(self) -> None:
        for name in ("height", "width", "in_channels", "kernel", "out_channels"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass(frozen=True)
class DenseLayer:
    """Fully connected layer dimensions."""

    in_features: int
    out_features: int

    def __post_init__(self) -> None:
        if self.in_features < 1 or self.out_features < 1:
            raise ValueError("layer dimensions must be >= 1")


ModelLayerSpec = ConvLayer | DenseLayer


def flops_of_layer(layer: ModelLayerSpec) -> int:
    """Floating-point operations for one forward pass of a single layer.

    Convolution: 2 * H * W * (C_in * K^2 + 1) * C_out, counting multiply-adds
    over the output map plus the bias. Dense: (2 * I - 1) * O, one
    multiply-add per weight minus the first add.
    """
    if isinstance(layer, ConvLayer):
        return (
            2
            * layer.height
            * layer.width
            * (layer.in_channels * layer.kernel**2 + 1)
            * layer.out_channels
        )
    if isinstance(layer, DenseLayer):
        return (2 * layer.in_features - 1) * layer.out_features
    raise TypeError(f"not a layer spec: {layer!r}")


def flops_of_model(layers: list[ModelLayerSpec]) -> int:
    """Total operation count of a model, summed over its layers."""
    if not layers:
        raise ValueError("model must have at least one layer")
    return sum(flops_of_layer(layer) for layer in layers)


@dataclass(frozen=True)
class WorkloadSpec:
    """One inference workload.

    `data_size_units` (s) drives the time model; `data_size_bytes` is the
    real payload size, used when transmission cost is derived from physical
    link parameters. `model_flops` (comp) is the per-unit inference cost of
    the model and `priority_weight` (w) scales the workload's response time
    in weighted objectives.
    """

    id: str
    application: str
    data_size_units: int
    data_size_bytes: int
    model_flops: int
    priority_weight: int

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("workload id must be non-empty")
        if self.data_size_units <= 0:
            raise ValueError(f"data_size_units must be positive, got {self.data_size_units}")
        if self.data_size_bytes <= 0:
            raise ValueError(f"data_size_bytes must be positive, got {self.data_size_bytes}")
        if self.model_flops <= 0:
            raise ValueError(f"model_flops must be positive, got {self.model_flops}")
        if self.priority_weight < 1:
            raise ValueError(f"priority_weight must be >= 1, got {self.priority_weight}")

    @property
    def unit_bytes(self) -> float:
        """Payload bytes carried by one data-size unit."""
        return self.data_size_bytes / self.data_size_units
