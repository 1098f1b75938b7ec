"""VNF types, the six service classes with their chains and SLAs, and seeded
request generation.

Arrivals are a Bernoulli process per service class: each step the class
produces a bundle of ``bundle_size`` requests with probability
``arrival_prob``. Source/destination DCs are drawn uniformly over distinct
pairs.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np
import yaml

from .errors import CatalogParseError, ConfigError, MissingServiceClassError, UnknownVnfReferenceError

SERVICE_NAMES = ("CG", "AR", "VS", "VoIP", "MIoT", "In4")


@dataclass(frozen=True)
class VnfType:
    id: int
    cpu_demand: float      # cycles/s per instance
    storage_demand: float  # GB per instance
    execution_time: float  # seconds of service per request

    def __post_init__(self):
        if self.cpu_demand <= 0 or self.storage_demand <= 0:
            raise ConfigError(f"VNF {self.id}: demands must be > 0")
        if self.execution_time < 0:
            raise ConfigError(f"VNF {self.id}: execution_time must be >= 0")


@dataclass(frozen=True)
class ServiceType:
    name: str
    chain: tuple[int, ...]   # ordered VnfType ids
    bandwidth: float         # Mbps between consecutive chain stages
    delay_budget: float      # seconds, end to end
    bundle_size: int         # requests per arrival event
    arrival_prob: float      # Bernoulli arrival probability per step

    def __post_init__(self):
        if not self.chain:
            raise ConfigError(f"service {self.name}: chain must be nonempty")
        if self.bandwidth <= 0 or self.delay_budget <= 0:
            raise ConfigError(f"service {self.name}: bandwidth and delay_budget must be > 0")
        if self.bundle_size < 1:
            raise ConfigError(f"service {self.name}: bundle_size must be >= 1")
        if not 0.0 <= self.arrival_prob <= 1.0:
            raise ConfigError(f"service {self.name}: arrival_prob must be in [0, 1]")


@dataclass(frozen=True)
class Request:
    id: int
    service: str
    arrival_time: int
    src_dc: int
    dst_dc: int
    remaining_budget: float


@dataclass(frozen=True)
class Catalog:
    vnf_types: tuple[VnfType, ...]
    services: tuple[ServiceType, ...]

    def vnf(self, vnf_id: int) -> VnfType:
        return self._vnf_map[vnf_id]

    def service(self, name: str) -> ServiceType:
        return self._service_map[name]

    @property
    def _vnf_map(self):
        return {v.id: v for v in self.vnf_types}

    @property
    def _service_map(self):
        return {s.name: s for s in self.services}


def _validate(vnfs: list[VnfType], services: list[ServiceType]) -> Catalog:
    ids = set()
    for v in vnfs:
        if v.id in ids:
            raise CatalogParseError(f"duplicate VNF id {v.id}")
        ids.add(v.id)
    names = {s.name for s in services}
    missing = [n for n in SERVICE_NAMES if n not in names]
    if missing:
        raise MissingServiceClassError(f"missing service classes: {missing}")
    unknown = names - set(SERVICE_NAMES)
    if unknown:
        raise CatalogParseError(f"unknown service classes: {sorted(unknown)}")
    for s in services:
        for vid in s.chain:
            if vid not in ids:
                raise UnknownVnfReferenceError(f"service {s.name} references unknown VNF id {vid}")
    # keep canonical service order regardless of file order
    order = {n: k for k, n in enumerate(SERVICE_NAMES)}
    return Catalog(
        vnf_types=tuple(sorted(vnfs, key=lambda v: v.id)),
        services=tuple(sorted(services, key=lambda s: order[s.name])),
    )


def load_catalog(source) -> Catalog:
    """Load VNF types and the six service classes from a YAML path or mapping."""
    if isinstance(source, dict):
        doc = source
    else:
        try:
            with open(source) as fh:
                doc = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise CatalogParseError(f"cannot parse catalog: {exc}") from exc
    if not isinstance(doc, dict) or "vnf_types" not in doc or "services" not in doc:
        raise CatalogParseError("catalog config needs 'vnf_types' and 'services' sections")
    try:
        vnfs = [
            VnfType(
                id=int(r["id"]),
                cpu_demand=float(r["cpu_demand"]),
                storage_demand=float(r["storage_demand"]),
                execution_time=float(r["execution_time"]),
            )
            for r in doc["vnf_types"]
        ]
        services = [
            ServiceType(
                name=str(r["name"]),
                chain=tuple(int(v) for v in r["chain"]),
                bandwidth=float(r["bandwidth"]),
                delay_budget=float(r["delay_budget"]),
                bundle_size=int(r["bundle_size"]),
                arrival_prob=float(r["arrival_prob"]),
            )
            for r in doc["services"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogParseError(f"malformed catalog config: {exc}") from exc
    return _validate(vnfs, services)


def catalog_to_dict(cat: Catalog) -> dict:
    return {
        "vnf_types": [
            {"id": v.id, "cpu_demand": v.cpu_demand, "storage_demand": v.storage_demand,
             "execution_time": v.execution_time}
            for v in cat.vnf_types
        ],
        "services": [
            {"name": s.name, "chain": list(s.chain), "bandwidth": s.bandwidth,
             "delay_budget": s.delay_budget, "bundle_size": s.bundle_size,
             "arrival_prob": s.arrival_prob}
            for s in cat.services
        ],
    }


def save_catalog(cat: Catalog, path) -> None:
    with open(path, "w") as fh:
        yaml.safe_dump(catalog_to_dict(cat), fh, sort_keys=False)


def scale_arrivals(cat: Catalog, factor: float) -> Catalog:
    """Return a catalog with every arrival probability scaled (clipped to 1)."""
    return Catalog(
        vnf_types=cat.vnf_types,
        services=tuple(replace(s, arrival_prob=min(1.0, s.arrival_prob * factor)) for s in cat.services),
    )


def generate_requests(cat: Catalog, dc_ids: list[int], horizon: int, seed: int) -> list[Request]:
    """Seed-deterministic, time-ordered request trace over ``horizon`` steps.

    Each arrival event of service s contributes exactly ``bundle_size``
    requests at the same step. With a single DC, src == dst; otherwise the
    pair is drawn uniformly over distinct ordered pairs.
    """
    rng = np.random.default_rng(np.random.SeedSequence((int(seed), 0x5FC)))
    dc_ids = sorted(dc_ids)
    out: list[Request] = []
    rid = 0
    for t in range(int(horizon)):
        for svc in cat.services:
            if rng.random() >= svc.arrival_prob:
                continue
            for _ in range(svc.bundle_size):
                if len(dc_ids) == 1:
                    src = dst = dc_ids[0]
                else:
                    src, dst = rng.choice(len(dc_ids), size=2, replace=False)
                    src, dst = dc_ids[int(src)], dc_ids[int(dst)]
                out.append(Request(
                    id=rid, service=svc.name, arrival_time=t,
                    src_dc=src, dst_dc=dst, remaining_budget=svc.delay_budget,
                ))
                rid += 1
    return out


def export_requests_csv(requests: list[Request], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["request_id", "service", "arrival", "src", "dst"])
        for r in requests:
            w.writerow([r.id, r.service, r.arrival_time, r.src_dc, r.dst_dc])
