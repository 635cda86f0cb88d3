"""
Template selection: compatibility with a sample's available placeholders,
style filters, the minimal template cover and a bucketed template pool.
"""

import bisect
import random
import threading
from collections import Counter
from collections.abc import Collection, Iterable, Iterator, Mapping, Sequence

from navsynth.grammar.registry import PLACEHOLDERS, required_groups
from navsynth.models.grammar import PlaceholderSpec, Template, TemplateStyle


_DEFAULT_GROUPS = required_groups()


def is_compatible(
    placeholder_set: Collection[str],
    available: Collection[str],
    groups: Mapping[str, frozenset[str]] = _DEFAULT_GROUPS,
) -> bool:
    """
    True when every placeholder can be filled and every required group with an
    available member is mentioned.
    """
    if not all(p in available for p in placeholder_set):
        return False
    for members in groups.values():
        if any(m in available for m in members) and not any(
            m in placeholder_set for m in members
        ):
            return False
    return True


def compatible_templates(
    templates: Iterable[Template],
    available: Collection[str],
    registry: Mapping[str, PlaceholderSpec] = PLACEHOLDERS,
) -> list[Template]:
    groups = _DEFAULT_GROUPS if registry is PLACEHOLDERS else required_groups(registry)
    return [t for t in templates if is_compatible(t.placeholder_set, available, groups)]


def filter_by_style(templates: Iterable[Template], style: TemplateStyle) -> list[Template]:
    """
    Allocentric keeps templates without egocentric placeholders; egocentric
    keeps templates with egocentric and without allocentric placeholders.
    """
    if style is TemplateStyle.ALLOCENTRIC:
        keep = {TemplateStyle.ALLOCENTRIC, TemplateStyle.NEUTRAL}
    elif style is TemplateStyle.EGOCENTRIC:
        keep = {TemplateStyle.EGOCENTRIC}
    else:
        raise ValueError(f"can only filter by allocentric or egocentric style, not {style.value}")
    return [t for t in templates if t.style in keep]


def template_features(template: Template) -> frozenset[tuple[str, str]]:
    """(placeholder, style) pairs; a template without placeholders covers its style alone."""
    style = template.style.value
    if not template.placeholder_set:
        return frozenset({("", style)})
    return frozenset((p, style) for p in template.placeholder_set)


def minimal_cover(templates: Sequence[Template]) -> list[Template]:
    """
    Greedy scan keeping each template that adds an uncovered feature, then a
    reverse pass dropping kept templates whose features the others cover.

    The result covers every feature of the input and no kept template can be
    removed without losing one.
    """
    universe: set[tuple[str, str]] = set()
    for t in templates:
        universe |= template_features(t)
    covered: set[tuple[str, str]] = set()
    kept: list[Template] = []
    for t in templates:
        if covered == universe:
            break
        features = template_features(t)
        if not features <= covered:
            kept.append(t)
            covered |= features

    counts: Counter[tuple[str, str]] = Counter()
    for t in kept:
        counts.update(template_features(t))
    for i in range(len(kept) - 1, -1, -1):
        features = template_features(kept[i])
        if all(counts[f] > 1 for f in features):
            counts.subtract(features)
            del kept[i]
    return kept


class TemplatePool:
    """
    Templates bucketed by placeholder set.

    Compatibility is decided once per bucket and cached per available set, so
    a draw costs a cache lookup and a bisect. Non-strict queries keep the
    subset test and the goal group but drop the other required groups.
    """

    def __init__(
        self,
        templates: Iterable[Template],
        registry: Mapping[str, PlaceholderSpec] = PLACEHOLDERS,
    ):
        self._templates = list(templates)
        self._by_id = {t.id: t for t in self._templates}
        self._groups = _DEFAULT_GROUPS if registry is PLACEHOLDERS else required_groups(registry)
        self._buckets: dict[frozenset[str], list[Template]] = {}
        for t in self._templates:
            self._buckets.setdefault(t.placeholder_set, []).append(t)
        self._cache: dict[
            tuple[frozenset[str], bool], tuple[list[list[Template]], list[int]]
        ] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._templates)

    def __iter__(self) -> Iterator[Template]:
        return iter(self._templates)

    @property
    def templates(self) -> list[Template]:
        return list(self._templates)

    @property
    def bucket_count(self) -> int:
        return len(self._buckets)

    def get(self, template_id: str) -> Template | None:
        return self._by_id.get(template_id)

    def _compatible_buckets(
        self, available: Collection[str], strict: bool = True
    ) -> tuple[list[list[Template]], list[int]]:
        key = (frozenset(available), strict)
        groups = (
            self._groups if strict else {k: v for k, v in self._groups.items() if k == "goal"}
        )
        with self._lock:
            cached = self._cache.get(key)
            if cached is not None:
                return cached
            buckets = [
                bucket
                for names, bucket in self._buckets.items()
                if is_compatible(names, key[0], groups)
            ]
            cumulative: list[int] = []
            total = 0
            for bucket in buckets:
                total += len(bucket)
                cumulative.append(total)
            self._cache[key] = (buckets, cumulative)
            return buckets, cumulative

    def compatible(self, available: Collection[str], strict: bool = True) -> list[Template]:
        """Compatible templates in bucket order."""
        buckets, _ = self._compatible_buckets(available, strict)
        return [t for bucket in buckets for t in bucket]

    def count_compatible(self, available: Collection[str], strict: bool = True) -> int:
        _, cumulative = self._compatible_buckets(available, strict)
        return cumulative[-1] if cumulative else 0

    def choose(
        self, available: Collection[str], rng: random.Random, strict: bool = True
    ) -> Template | None:
        """Uniform draw over compatible templates, or None when there are none."""
        buckets, cumulative = self._compatible_buckets(available, strict)
        if not cumulative:
            return None
        index = rng.randrange(cumulative[-1])
        b = bisect.bisect_right(cumulative, index)
        offset = index - (cumulative[b - 1] if b else 0)
        return buckets[b][offset]
