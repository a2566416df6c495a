"""Minimal component slice for checking a property over a set of channels."""

from __future__ import annotations

from dataclasses import dataclass

from .deps import sources
from .model import Architecture, ChannelId, ComponentId, LevelId
from .validate import ChannelClass, classify_channel


@dataclass(frozen=True)
class SliceReport:
    level: LevelId
    property_channels: frozenset[ChannelId]
    out_components: frozenset[ComponentId]
    min_components: frozenset[ComponentId]
    no_irrelevant: bool
    all_needed: bool
    system_inputs_in_property: frozenset[ChannelId]


def _require_channels(a: Architecture, chset) -> frozenset[ChannelId]:
    chset = frozenset(chset)
    for x in sorted(chset):
        a.require_channel(x)
    return chset


def in_set_of_components(
    a: Architecture, level: LevelId, chset
) -> frozenset[ComponentId]:
    """Level components consuming at least one channel from the set."""
    chset = _require_channels(a, chset)
    return frozenset(
        c for c in a.level_components(level) if a.inputs_of(c) & chset
    )


def out_set_of_components(
    a: Architecture, level: LevelId, chset
) -> frozenset[ComponentId]:
    """Level components producing at least one channel from the set."""
    chset = _require_channels(a, chset)
    return frozenset(
        c for c in a.level_components(level) if a.outputs_of(c) & chset
    )


def min_set_of_components(
    a: Architecture, level: LevelId, chset
) -> frozenset[ComponentId]:
    """Producers of the property channels plus everything feeding them."""
    out_set = out_set_of_components(a, level, chset)
    result = set(out_set)
    for c in out_set:
        result |= sources(a, level, c)
    return frozenset(result)


def no_irrelevant_channels(a: Architecture, level: LevelId, chset) -> bool:
    """Every system input in the set is consumed inside the minimal slice."""
    chset = _require_channels(a, chset)
    min_set = min_set_of_components(a, level, chset)
    for x in chset:
        if classify_channel(a, x, level) is ChannelClass.SYSTEM_IN:
            if not any(x in a.inputs_of(z) for z in min_set):
                return False
    return True


def all_needed_in_channels(a: Architecture, level: LevelId, chset) -> bool:
    """Each slice component has an input that is either internal or listed."""
    chset = _require_channels(a, chset)
    min_set = min_set_of_components(a, level, chset)
    for z in min_set:
        ok = any(
            classify_channel(a, x, level) is not ChannelClass.SYSTEM_IN or x in chset
            for x in a.inputs_of(z)
        )
        if not ok:
            return False
    return True


def slice_report(a: Architecture, level: LevelId, chset) -> SliceReport:
    """Assemble the slice, its verdicts, and the property's system inputs."""
    chset = _require_channels(a, chset)
    out_set = out_set_of_components(a, level, chset)
    min_set = min_set_of_components(a, level, chset)
    return SliceReport(
        level=level,
        property_channels=chset,
        out_components=out_set,
        min_components=min_set,
        no_irrelevant=no_irrelevant_channels(a, level, chset),
        all_needed=all_needed_in_channels(a, level, chset),
        system_inputs_in_property=frozenset(
            x for x in chset
            if classify_channel(a, x, level) is ChannelClass.SYSTEM_IN
        ),
    )
