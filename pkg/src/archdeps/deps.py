"""Direct and transitive dependency queries over components and channels.

A component queried on a level it does not belong to has no dependencies on
that level; the result is the empty set, not an error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Architecture, ChannelId, ComponentId, LevelId


@dataclass(frozen=True)
class LevelGraph:
    """One level's direct-dependency graph: edge (Z, C) means Z feeds C."""

    level: LevelId
    nodes: frozenset[ComponentId]
    edges: tuple[tuple[ComponentId, ComponentId], ...]


def dsources(a: Architecture, level: LevelId, c: ComponentId) -> frozenset[ComponentId]:
    """Components on the level whose output is wired directly into c."""
    members = a.level_components(level)
    inputs = a.inputs_of(c)
    if c not in members:
        return frozenset()
    return frozenset(z for z in members if a.outputs_of(z) & inputs)


def dacc(a: Architecture, level: LevelId, c: ComponentId) -> frozenset[ComponentId]:
    """Components on the level directly consuming an output of c."""
    members = a.level_components(level)
    outputs = a.outputs_of(c)
    if c not in members:
        return frozenset()
    return frozenset(z for z in members if outputs & a.inputs_of(z))


def _closure(start: frozenset[str], step) -> frozenset[str]:
    # Worklist closure over one or more relation steps; the start node itself
    # appears in the result only when reachable through a cycle.
    seen: set[str] = set(start)
    todo = list(start)
    while todo:
        node = todo.pop()
        for nxt in step(node):
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return frozenset(seen)


def sources(a: Architecture, level: LevelId, c: ComponentId) -> frozenset[ComponentId]:
    """Every component on the level whose data can reach c (one or more hops)."""
    return _closure(dsources(a, level, c), lambda z: dsources(a, level, z))


def acc(a: Architecture, level: LevelId, c: ComponentId) -> frozenset[ComponentId]:
    """Every component on the level that c's data can reach; dual of sources."""
    return _closure(dacc(a, level, c), lambda z: dacc(a, level, z))


def is_not_dsource(a: Architecture, level: LevelId, s: ComponentId) -> bool:
    """True when no component on the level consumes any output of s."""
    members = a.level_components(level)
    outputs = a.outputs_of(s)
    return all(not (outputs & a.inputs_of(z)) for z in members)


def is_not_dsource_for(
    a: Architecture, level: LevelId, s: ComponentId, c: ComponentId
) -> bool:
    """True when c (on the level) consumes no output of s."""
    members = a.level_components(level)
    outputs = a.outputs_of(s)
    if c not in members:
        return True
    return not (outputs & a.inputs_of(c))


def chan_direct_deps(a: Architecture, x: ChannelId) -> frozenset[ChannelId]:
    """Input channels x depends on directly or through a local variable."""
    a.require_channel(x)
    via_vars = frozenset(
        y for v in a.chan_from_var[x] for y in a.var_from[v]
    )
    return a.chan_from_ch[x] | via_vars


def chan_transitive_deps(a: Architecture, x: ChannelId) -> frozenset[ChannelId]:
    """All channels x depends on through any chain of direct dependencies."""
    return _closure(chan_direct_deps(a, x), lambda y: chan_direct_deps(a, y))


def level_graph(a: Architecture, level: LevelId) -> LevelGraph:
    """Materialize the level's direct-dependency edges in canonical order."""
    members = a.level_components(level)
    edges = sorted(
        (z, c) for c in members for z in dsources(a, level, c)
    )
    return LevelGraph(level=level, nodes=members, edges=tuple(edges))
