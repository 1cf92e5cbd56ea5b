"""Model-quality metrics.

Complexity counts size: components plus interactions (habitats are regions,
not components, and do not count). Creativity counts variety added on top of
the given starting model: distinct categories among non-baseline components
plus distinct interaction kinds among interactions that touch at least one
non-baseline component. Duplicating an already-present category or kind
never raises either distinct count.
"""

from __future__ import annotations

from .errors import InvalidModelError
from .model import Category, ConceptualModel, ModelScores
from .validation import validate_model


def _require_valid(model: ConceptualModel) -> None:
    report = validate_model(model)
    if not report.valid:
        raise InvalidModelError(report)


def complexity_score(model: ConceptualModel) -> int:
    _require_valid(model)
    return len(model.components) + len(model.interactions)


def creativity_score(model: ConceptualModel) -> int:
    _require_valid(model)
    baseline = model.baseline_component_ids
    added = [c for c in model.components if c.id not in baseline]
    categories = {c.category for c in added if c.category is not Category.UNCATEGORIZED}

    added_ids = {c.id for c in added}
    kinds = {
        i.kind
        for i in model.interactions
        if i.source_id in added_ids or i.target_id in added_ids
    }
    return len(categories) + len(kinds)


def score_model(model: ConceptualModel) -> ModelScores:
    return ModelScores(
        complexity=complexity_score(model),
        creativity=creativity_score(model),
    )
