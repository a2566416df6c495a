"""Output-channel correlation and elementary-component classification."""

from __future__ import annotations

from dataclasses import dataclass

from .model import Architecture, ChannelId, ComponentId, LevelId


@dataclass(frozen=True)
class CorrelationSet:
    channel: ChannelId
    correlated: frozenset[ChannelId]


def out_pair_correlated(
    a: Architecture, c: ComponentId, x: ChannelId, y: ChannelId
) -> bool:
    """True when x and y are outputs of c sharing a local-variable dependency."""
    a.require_channel(x)
    a.require_channel(y)
    outputs = a.outputs_of(c)
    return (
        x in outputs
        and y in outputs
        and bool(a.chan_from_var[x] & a.chan_from_var[y])
    )


def out_set_correlated(a: Architecture, x: ChannelId) -> CorrelationSet:
    """Channels fed by a variable that also feeds x."""
    a.require_channel(x)
    correlated = frozenset(
        y for v in a.chan_from_var[x] for y in a.var_to[v]
    )
    return CorrelationSet(channel=x, correlated=correlated)


def is_elementary(a: Architecture, c: ComponentId) -> bool:
    """Single output, or all output pairs share correlated variable deps.

    A component with no outputs counts as elementary (vacuous condition).
    """
    outputs = a.outputs_of(c)
    if len(outputs) == 1:
        return True
    corr = {x: out_set_correlated(a, x).correlated for x in outputs}
    return all(corr[x] & corr[y] for x in outputs for y in outputs)


def elementary_report(
    a: Architecture, level: LevelId
) -> dict[ComponentId, bool]:
    """Elementary verdict for every component on the level, sorted by name."""
    return {
        c: is_elementary(a, c) for c in sorted(a.level_components(level))
    }
