"""Model document encoding and decoding.

The wire format is UTF-8 JSON, version-gated:

    {
      "version": 1,
      "id": "...",              # optional on input; defaulted from name
      "name": "...",
      "notes": "...",           # optional
      "components": [
        {"id": ..., "name": ..., "kind": "biotic" | "abiotic",
         "category": "predator" | ... | "uncategorized",
         "taxon_id": ...,                        # optional
         "attributes": {"lifespan": ..., ...},   # biotic only
         "initial_population": ...,              # biotic
         "initial_amount": ...,                  # abiotic
         "unlimited": false,
         "habitat_id": ...}                      # optional
      ],
      "interactions": [
        {"id": ..., "kind": "consumes" | "destroys" | "produces" |
                    "becomes_on_death" | "affects" | "infects" | "parasite_of",
         "source_id": ..., "target_id": ..., "params": {...}}
      ],
      "habitats": [{"id": ..., "name": ...}],
      "baseline": ["component-id", ...]
    }

Attribute units are fixed by field name (months, kg, kg/s) and never
serialized. Unknown enum values are a hard decode error, never silently
dropped; a future format change is an explicit version bump. Decoding does
not validate content ranges - feed the result to ``validate_model``.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .errors import DecodeError, UnsupportedKindError
from .model import (
    ATTRIBUTE_FIELDS,
    Category,
    Component,
    ComponentKind,
    ConceptualModel,
    Habitat,
    Interaction,
    InteractionKind,
    InteractionParams,
    SpeciesAttributes,
)

SCHEMA_VERSION = 1

_PARAM_FIELDS = (
    "growth_modifier",
    "produce_probability",
    "produce_amount",
    "encounter_half_saturation",
    "destroy_fraction",
)


def encode_model(model: ConceptualModel) -> str:
    """Serialize a model to its canonical JSON document (sorted keys)."""
    return json.dumps(model_to_dict(model), sort_keys=True, indent=2) + "\n"


def model_to_dict(model: ConceptualModel) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "version": SCHEMA_VERSION,
        "id": model.id,
        "name": model.name,
        "components": [_component_to_dict(c) for c in model.components],
        "interactions": [_interaction_to_dict(i) for i in model.interactions],
        "habitats": [{"id": h.id, "name": h.name} for h in model.habitats],
        "baseline": sorted(model.baseline_component_ids),
    }
    if model.notes is not None:
        doc["notes"] = model.notes
    return doc


def _component_to_dict(c: Component) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "id": c.id,
        "name": c.name,
        "kind": c.kind.value,
        "category": c.category.value,
        "unlimited": c.unlimited,
    }
    if c.taxon_id is not None:
        doc["taxon_id"] = c.taxon_id
    if c.attributes is not None:
        doc["attributes"] = c.attributes.as_dict()
    if c.initial_population is not None:
        doc["initial_population"] = c.initial_population
    if c.initial_amount is not None:
        doc["initial_amount"] = c.initial_amount
    if c.habitat_id is not None:
        doc["habitat_id"] = c.habitat_id
    return doc


def _interaction_to_dict(i: Interaction) -> dict[str, Any]:
    params = {
        name: getattr(i.params, name)
        for name in _PARAM_FIELDS
        if getattr(i.params, name) is not None
    }
    return {
        "id": i.id,
        "kind": i.kind.value,
        "source_id": i.source_id,
        "target_id": i.target_id,
        "params": params,
    }


def decode_model(document: str | bytes | dict) -> ConceptualModel:
    """Parse a model document.

    Raises :class:`DecodeError` with a byte offset for malformed JSON, or
    with a path for schema violations; :class:`UnsupportedKindError` for any
    enum value outside the closed sets.
    """
    if isinstance(document, (str, bytes)):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise DecodeError(f"not valid JSON: {exc.msg}", offset=exc.pos) from exc
    else:
        data = document

    root = _Node(data, "$")
    root.require_mapping()
    version = root.child("version").as_int()
    if version != SCHEMA_VERSION:
        raise DecodeError(f"unsupported document version {version}", path="$.version")

    name = root.child("name").as_str()
    model_id = root.child_optional("id")
    notes = root.child_optional("notes")

    components = tuple(
        _decode_component(node) for node in root.child("components").items()
    )
    interactions = tuple(
        _decode_interaction(node) for node in root.child("interactions").items()
    )
    habitats = tuple(
        Habitat(id=node.child("id").as_str(), name=node.child("name").as_str())
        for node in root.child("habitats").items()
    )
    baseline = frozenset(node.as_str() for node in root.child("baseline").items())

    return ConceptualModel(
        id=model_id.as_str() if model_id is not None else _slug(name),
        name=name,
        components=components,
        interactions=interactions,
        habitats=habitats,
        baseline_component_ids=baseline,
        notes=notes.as_str() if notes is not None else None,
    )


def _slug(name: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")
    return slug or "model"


def _decode_component(node: "_Node") -> Component:
    node.require_mapping()
    kind = node.child("kind").as_enum(ComponentKind, "component kind")
    category_node = node.child_optional("category")
    category = (
        category_node.as_enum(Category, "category")
        if category_node is not None
        else Category.UNCATEGORIZED
    )

    attributes = None
    attrs_node = node.child_optional("attributes")
    if attrs_node is not None:
        attrs_node.require_mapping()
        values: dict[str, float] = {}
        for field_name in ATTRIBUTE_FIELDS:
            values[field_name] = attrs_node.child(field_name).as_number()
        attributes = SpeciesAttributes(**values)

    pop_node = node.child_optional("initial_population")
    amount_node = node.child_optional("initial_amount")
    taxon_node = node.child_optional("taxon_id")
    habitat_node = node.child_optional("habitat_id")
    unlimited_node = node.child_optional("unlimited")

    return Component(
        id=node.child("id").as_str(),
        name=node.child("name").as_str(),
        kind=kind,
        category=category,
        taxon_id=taxon_node.as_str() if taxon_node is not None else None,
        attributes=attributes,
        initial_population=pop_node.as_int() if pop_node is not None else None,
        initial_amount=amount_node.as_number() if amount_node is not None else None,
        unlimited=unlimited_node.as_bool() if unlimited_node is not None else False,
        habitat_id=habitat_node.as_str() if habitat_node is not None else None,
    )


def _decode_interaction(node: "_Node") -> Interaction:
    node.require_mapping()
    kind = node.child("kind").as_enum(InteractionKind, "interaction kind")
    params_node = node.child_optional("params")
    params = InteractionParams()
    if params_node is not None:
        params_node.require_mapping()
        values = {}
        for field_name in _PARAM_FIELDS:
            value_node = params_node.child_optional(field_name)
            if value_node is not None:
                values[field_name] = value_node.as_number()
        params = InteractionParams(**values)
    return Interaction(
        id=node.child("id").as_str(),
        kind=kind,
        source_id=node.child("source_id").as_str(),
        target_id=node.child("target_id").as_str(),
        params=params,
    )


class _Node:
    """A JSON value plus the path that led to it, for precise errors."""

    __slots__ = ("value", "path")

    def __init__(self, value: Any, path: str):
        self.value = value
        self.path = path

    def fail(self, message: str) -> DecodeError:
        return DecodeError(message, path=self.path)

    def require_mapping(self) -> None:
        if not isinstance(self.value, dict):
            raise self.fail("expected an object")

    def child(self, key: str) -> "_Node":
        node = self.child_optional(key)
        if node is None:
            raise self.fail(f"missing required key {key!r}")
        return node

    def child_optional(self, key: str) -> "_Node | None":
        self.require_mapping()
        if key not in self.value or self.value[key] is None:
            return None
        return _Node(self.value[key], f"{self.path}.{key}")

    def items(self) -> list["_Node"]:
        if not isinstance(self.value, list):
            raise self.fail("expected an array")
        return [_Node(v, f"{self.path}[{i}]") for i, v in enumerate(self.value)]

    def as_str(self) -> str:
        if not isinstance(self.value, str):
            raise self.fail("expected a string")
        return self.value

    def as_bool(self) -> bool:
        if not isinstance(self.value, bool):
            raise self.fail("expected a boolean")
        return self.value

    def as_int(self) -> int:
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise self.fail("expected an integer")
        return self.value

    def as_number(self) -> float:
        if isinstance(self.value, bool) or not isinstance(self.value, (int, float)):
            raise self.fail("expected a number")
        return float(self.value)

    def as_enum(self, enum_cls, label: str):
        raw = self.as_str()
        try:
            return enum_cls(raw)
        except ValueError:
            raise UnsupportedKindError(
                f"unsupported {label} {raw!r}", path=self.path
            ) from None
