"""Species lookup and attribute retrieval.

Two interchangeable backends expose the same two calls: a local store fed
from a JSON fixture file (the bundled one ships in ``ecomod/data``), and a
thin HTTP client for a remote trait service. Records are normalized to
canonical units (months, kg, kg/s, fraction, count) when they enter the
store; queries never see raw source units.

Lookups return partial bundles - whatever subset of the nine attributes the
store holds. ``fill_defaults`` completes a bundle from the default table,
tracking per-field provenance so a UI can show which values are measured
and which are fallbacks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from importlib import resources
from pathlib import Path

import httpx

from .errors import (
    AttributeRangeError,
    DecodeError,
    InvalidQueryError,
    TaxonNotFoundError,
    TransportError,
)
from .model import ATTRIBUTE_FIELDS, SpeciesAttributes, attribute_issues

# Fallback values for species the store knows nothing about: a generic
# small-herbivore scale. Versioned repo constants, deliberately in one place.
ATTRIBUTE_DEFAULTS: dict[str, float] = {
    "lifespan": 24.0,
    "body_mass": 1.0,
    "carbon_biomass": 0.2,
    "respiratory_rate": 1.0e-9,
    "photosynthesis_rate": 0.0,
    "assimilation_efficiency": 0.25,
    "reproductive_maturity": 6.0,
    "reproductive_interval": 6.0,
    "offspring_count": 2.0,
}

# Source units accepted at ingestion, with exact conversion factors to the
# canonical unit of each field.
_UNIT_FACTORS: dict[str, dict[str, float]] = {
    "lifespan": {"months": 1.0, "years": 12.0},
    "reproductive_maturity": {"months": 1.0, "years": 12.0},
    "reproductive_interval": {"months": 1.0, "years": 12.0},
    "body_mass": {"kg": 1.0, "g": 0.001},
    "carbon_biomass": {"kg": 1.0, "g": 0.001},
    "respiratory_rate": {"kg/s": 1.0, "g/s": 0.001},
    "photosynthesis_rate": {"kg/s": 1.0, "g/s": 0.001},
    "assimilation_efficiency": {"fraction": 1.0},
    "offspring_count": {"count": 1.0},
}


class Provenance(str, Enum):
    STORE = "store"
    DEFAULT = "default"


@dataclass(frozen=True)
class TaxonRecord:
    taxon_id: str
    scientific_name: str
    common_names: tuple[str, ...]
    attribute_record_count: int

    def as_dict(self) -> dict:
        return {
            "taxon_id": self.taxon_id,
            "scientific_name": self.scientific_name,
            "common_names": list(self.common_names),
            "attribute_record_count": self.attribute_record_count,
        }


@dataclass(frozen=True)
class AttributeBundle:
    """A (possibly partial) set of canonical attribute values for one taxon."""

    taxon_id: str
    attributes: tuple[tuple[str, float], ...]
    provenance: tuple[tuple[str, Provenance], ...]

    @classmethod
    def of(cls, taxon_id: str, values: dict[str, float],
           provenance: dict[str, Provenance] | None = None) -> "AttributeBundle":
        prov = provenance or {name: Provenance.STORE for name in values}
        ordered = tuple((n, float(values[n])) for n in ATTRIBUTE_FIELDS if n in values)
        return cls(
            taxon_id=taxon_id,
            attributes=ordered,
            provenance=tuple((n, prov[n]) for n, _ in ordered),
        )

    def values(self) -> dict[str, float]:
        return dict(self.attributes)

    def provenance_map(self) -> dict[str, Provenance]:
        return dict(self.provenance)

    def is_complete(self) -> bool:
        return len(self.attributes) == len(ATTRIBUTE_FIELDS)

    def species_attributes(self) -> SpeciesAttributes:
        if not self.is_complete():
            missing = sorted(set(ATTRIBUTE_FIELDS) - set(self.values()))
            raise ValueError(f"bundle incomplete, missing {missing}; fill_defaults first")
        return SpeciesAttributes(**self.values())

    def as_dict(self) -> dict:
        return {
            "taxon_id": self.taxon_id,
            "attributes": self.values(),
            "provenance": {n: p.value for n, p in self.provenance},
        }


def partial_range_issues(values: dict[str, float]) -> list[tuple[str, str]]:
    """Range-check a partial attribute mapping.

    Per-field ranges always apply; cross-field constraints only when both
    sides are present. Returns ``(field, message)`` pairs.
    """
    merged = dict(ATTRIBUTE_DEFAULTS, **values)
    probe = SpeciesAttributes(**merged)
    issues = []
    for field_name, message in attribute_issues(probe):
        if field_name not in values:
            continue
        if "cannot exceed body_mass" in message and "body_mass" not in values:
            continue
        if "must be < lifespan" in message and "lifespan" not in values:
            continue
        issues.append((field_name, message))
    return issues


def fill_defaults(bundle: AttributeBundle) -> AttributeBundle:
    """Complete a bundle from the default table.

    Present fields keep their values and provenance; missing fields get the
    default value with provenance DEFAULT. Defaulted cross-field values are
    clamped so the completed bundle always satisfies the full attribute
    invariants (e.g. a store lifespan shorter than the default maturity).
    Idempotent: a complete bundle passes through unchanged.
    """
    values = bundle.values()
    for field_name, message in partial_range_issues(values):
        raise AttributeRangeError(field_name, message)

    prov = bundle.provenance_map()
    filled = dict(values)
    for name in ATTRIBUTE_FIELDS:
        if name in filled:
            continue
        value = ATTRIBUTE_DEFAULTS[name]
        if name == "reproductive_maturity" and value >= filled.get("lifespan", ATTRIBUTE_DEFAULTS["lifespan"]):
            value = filled["lifespan"] / 4.0
        if name == "carbon_biomass" and value > filled.get("body_mass", ATTRIBUTE_DEFAULTS["body_mass"]):
            value = filled["body_mass"] * 0.2
        filled[name] = value
        prov[name] = Provenance.DEFAULT

    result = AttributeBundle.of(bundle.taxon_id, filled, prov)
    remaining = attribute_issues(result.species_attributes())
    if remaining:
        field_name, message = remaining[0]
        raise AttributeRangeError(field_name, message)
    return result


def default_attributes() -> SpeciesAttributes:
    """The full default table as a ready-to-use attribute set."""
    return SpeciesAttributes(**ATTRIBUTE_DEFAULTS)


@dataclass(frozen=True)
class _StoredTaxon:
    record: TaxonRecord
    attributes: tuple[tuple[str, float], ...]


class TraitStore:
    """In-memory species store loaded from a fixture file.

    Reads are safe from any number of threads; reloading builds a fresh
    store rather than mutating one in place.
    """

    def __init__(self, taxa: list[_StoredTaxon]):
        self._by_id = {t.record.taxon_id: t for t in taxa}

    @classmethod
    def from_fixture_file(cls, path: str | Path) -> "TraitStore":
        raw = Path(path).read_text(encoding="utf-8")
        return cls.from_fixture_json(raw, source=str(path))

    @classmethod
    def from_fixture_json(cls, raw: str, source: str = "<fixture>") -> "TraitStore":
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise DecodeError(f"{source}: not valid JSON: {exc.msg}", offset=exc.pos) from exc
        if not isinstance(data, list):
            raise DecodeError(f"{source}: fixture must be a JSON array")
        taxa = [_ingest_taxon(entry, f"{source}[{i}]") for i, entry in enumerate(data)]
        seen: set[str] = set()
        for taxon in taxa:
            if taxon.record.taxon_id in seen:
                raise DecodeError(f"{source}: duplicate taxon_id {taxon.record.taxon_id!r}")
            seen.add(taxon.record.taxon_id)
        return cls(taxa)

    def search_species(self, query: str) -> list[TaxonRecord]:
        needle = query.strip().lower()
        if not needle:
            raise InvalidQueryError("species query must not be empty")
        hits = []
        for taxon in self._by_id.values():
            names = (taxon.record.scientific_name, *taxon.record.common_names)
            if any(needle in name.lower() for name in names):
                hits.append(taxon.record)
        hits.sort(key=lambda r: (-r.attribute_record_count, r.scientific_name))
        return hits

    def fetch_attributes(self, taxon_id: str) -> AttributeBundle:
        taxon = self._by_id.get(taxon_id)
        if taxon is None:
            raise TaxonNotFoundError(f"unknown taxon_id {taxon_id!r}")
        return AttributeBundle(
            taxon_id=taxon_id,
            attributes=taxon.attributes,
            provenance=tuple((n, Provenance.STORE) for n, _ in taxon.attributes),
        )


def _ingest_taxon(entry, where: str) -> _StoredTaxon:
    if not isinstance(entry, dict):
        raise DecodeError(f"{where}: expected an object")
    try:
        taxon_id = entry["taxon_id"]
        scientific = entry["scientific_name"]
        commons = entry.get("common_names", [])
        raw_attrs = entry.get("attributes", {})
    except KeyError as exc:
        raise DecodeError(f"{where}: missing key {exc.args[0]!r}") from None

    values: dict[str, float] = {}
    for field_name, payload in raw_attrs.items():
        if field_name not in _UNIT_FACTORS:
            raise DecodeError(f"{where}: unknown attribute field {field_name!r}")
        if not isinstance(payload, dict) or "value" not in payload or "unit" not in payload:
            raise DecodeError(f"{where}: attribute {field_name!r} needs {{value, unit}}")
        unit = payload["unit"]
        factors = _UNIT_FACTORS[field_name]
        if unit not in factors:
            allowed = ", ".join(sorted(factors))
            raise DecodeError(f"{where}: {field_name} unit {unit!r} not in allowlist ({allowed})")
        values[field_name] = float(payload["value"]) * factors[unit]

    for field_name, message in partial_range_issues(values):
        raise DecodeError(f"{where}: {message}")

    record_count = int(entry.get("attribute_record_count", len(values)))
    if record_count < len(values):
        raise DecodeError(
            f"{where}: attribute_record_count {record_count} below stored attribute count {len(values)}"
        )
    ordered = tuple((n, values[n]) for n in ATTRIBUTE_FIELDS if n in values)
    return _StoredTaxon(
        record=TaxonRecord(
            taxon_id=str(taxon_id),
            scientific_name=str(scientific),
            common_names=tuple(str(n) for n in commons),
            attribute_record_count=record_count,
        ),
        attributes=ordered,
    )


def bundled_fixture_path() -> Path:
    return Path(str(resources.files("ecomod").joinpath("data/species.json")))


def bundled_store() -> TraitStore:
    """The species fixture that ships with the package."""
    return TraitStore.from_fixture_file(bundled_fixture_path())


class RemoteTraitClient:
    """Trait lookups against a remote HTTP backend.

    Wire contract: ``GET /search?q=<text>`` returns a JSON array of taxon
    records; ``GET /taxa/<id>/attributes`` returns
    ``{taxon_id, attributes: {field: {value, unit}}}`` in source units,
    normalized here exactly like fixture ingestion. Stateless per request.
    """

    def __init__(self, base_url: str, timeout: float = 10.0, transport=None):
        self._client = httpx.Client(
            base_url=base_url, timeout=timeout, transport=transport
        )

    def close(self) -> None:
        self._client.close()

    def search_species(self, query: str) -> list[TaxonRecord]:
        needle = query.strip()
        if not needle:
            raise InvalidQueryError("species query must not be empty")
        payload = self._get_json("/search", params={"q": needle})
        if not isinstance(payload, list):
            raise TransportError("remote search returned a non-array payload")
        records = [
            TaxonRecord(
                taxon_id=str(item["taxon_id"]),
                scientific_name=str(item["scientific_name"]),
                common_names=tuple(str(n) for n in item.get("common_names", [])),
                attribute_record_count=int(item.get("attribute_record_count", 0)),
            )
            for item in payload
        ]
        records.sort(key=lambda r: (-r.attribute_record_count, r.scientific_name))
        return records

    def fetch_attributes(self, taxon_id: str) -> AttributeBundle:
        payload = self._get_json(f"/taxa/{taxon_id}/attributes")
        taxon = _ingest_taxon(payload, f"remote taxon {taxon_id!r}")
        return AttributeBundle(
            taxon_id=taxon.record.taxon_id,
            attributes=taxon.attributes,
            provenance=tuple((n, Provenance.STORE) for n, _ in taxon.attributes),
        )

    def _get_json(self, path: str, params: dict | None = None):
        try:
            response = self._client.get(path, params=params)
        except httpx.HTTPError as exc:
            raise TransportError(f"trait backend unreachable: {exc}") from exc
        if response.status_code == 404:
            raise TaxonNotFoundError(f"remote backend has no record for {path}")
        if not response.is_success:
            raise TransportError(f"trait backend returned HTTP {response.status_code}")
        try:
            return response.json()
        except ValueError as exc:
            raise TransportError("trait backend returned invalid JSON") from exc
