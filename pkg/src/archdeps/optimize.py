"""Level transformations: SCC condensation, high-load grouping, refinement."""

from __future__ import annotations

from dataclasses import dataclass

from .deps import dsources
from .model import Architecture, ChannelId, ComponentId, LevelId


@dataclass(frozen=True)
class LevelPartition:
    """Grouping of a level's components, with per-group high-performance marks.

    Groups are ordered by their least member; members are implicit sets.
    """

    source_level: LevelId
    groups: tuple[frozenset[ComponentId], ...]
    high_perf: tuple[bool, ...]


@dataclass(frozen=True)
class RefinementReport:
    ok: bool
    witnesses: tuple[str, ...] = ()


def _canonical(
    a: Architecture, level: LevelId, raw_groups
) -> LevelPartition:
    groups = tuple(sorted((frozenset(g) for g in raw_groups), key=min))
    marks = tuple(any(is_high_perf(a, c) for c in g) for g in groups)
    return LevelPartition(source_level=level, groups=groups, high_perf=marks)


def condense_level(a: Architecture, level: LevelId) -> LevelPartition:
    """Partition the level into strongly connected components of its graph."""
    members = sorted(a.level_components(level))
    succ = {c: sorted(dsources(a, level, c)) for c in members}

    # Tarjan, iterative to stay clear of the recursion limit.
    index: dict[ComponentId, int] = {}
    lowlink: dict[ComponentId, int] = {}
    on_stack: set[ComponentId] = set()
    stack: list[ComponentId] = []
    counter = 0
    sccs: list[frozenset[ComponentId]] = []

    for root in members:
        if root in index:
            continue
        work: list[tuple[ComponentId, int]] = [(root, 0)]
        while work:
            node, i = work.pop()
            if i == 0:
                index[node] = lowlink[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            recurse = False
            children = succ[node]
            while i < len(children):
                child = children[i]
                i += 1
                if child not in index:
                    work.append((node, i))
                    work.append((child, 0))
                    recurse = True
                    break
                if child in on_stack:
                    lowlink[node] = min(lowlink[node], index[child])
            if recurse:
                continue
            if lowlink[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                sccs.append(frozenset(component))
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
    return _canonical(a, level, sccs)


def highload_grouping(a: Architecture, level: LevelId) -> LevelPartition:
    """Group components connected by a high-load channel.

    Two distinct components are related when a high-load channel appears in
    the interface (inputs or outputs) of both; groups are the connected
    components of that relation, so shared inputs also merge.
    """
    members = sorted(a.level_components(level))
    touching: dict[ChannelId, list[ComponentId]] = {}
    for c in members:
        for x in (a.inputs_of(c) | a.outputs_of(c)) & a.highload_channels:
            touching.setdefault(x, []).append(c)

    parent = {c: c for c in members}

    def find(c: ComponentId) -> ComponentId:
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for peers in touching.values():
        for other in peers[1:]:
            ra, rb = find(peers[0]), find(other)
            if ra != rb:
                parent[rb] = ra

    groups: dict[ComponentId, set[ComponentId]] = {}
    for c in members:
        groups.setdefault(find(c), set()).add(c)
    return _canonical(a, level, groups.values())


def is_high_perf(a: Architecture, c: ComponentId) -> bool:
    """Marked directly, or containing (transitively) a marked subcomponent."""
    a.require_component(c)
    todo = [c]
    seen = set()
    while todo:
        node = todo.pop()
        if node in a.highperf_components:
            return True
        if node in seen:
            continue
        seen.add(node)
        todo.extend(a.subcomponents_of(node))
    return False


def is_highload_channel(a: Architecture, x: ChannelId) -> bool:
    a.require_channel(x)
    return x in a.highload_channels


def _atoms(a: Architecture, c: ComponentId) -> frozenset[ComponentId]:
    """Leaves of the subcomponent tree below c (c itself when undecomposed)."""
    subs = a.subcomponents_of(c)
    if not subs:
        return frozenset((c,))
    result: set[ComponentId] = set()
    for s in subs:
        result |= _atoms(a, s)
    return frozenset(result)


def verify_level_refinement(
    a: Architecture, fine: LevelId, coarse: LevelId
) -> RefinementReport:
    """Check that the coarse level is a grouping of the fine level.

    Each coarse component is flattened (through the subcomponent relation)
    to the fine-level components it covers; those member sets must partition
    the fine level exactly.
    """
    fine_members = a.level_components(fine)
    coarse_members = sorted(a.level_components(coarse))
    fine_atoms = {f: _atoms(a, f) for f in fine_members}

    witnesses: list[str] = []
    covered: dict[ComponentId, ComponentId] = {}
    for c in coarse_members:
        atoms = _atoms(a, c)
        group = {f for f in fine_members if fine_atoms[f] <= atoms}
        leftover = atoms - frozenset().union(*(fine_atoms[f] for f in group)) if group else atoms
        if leftover:
            witnesses.append(
                f"{c} covers no fine-level component for: " + ", ".join(sorted(leftover))
            )
        for f in sorted(group):
            if f in covered:
                witnesses.append(f"{f} covered by both {covered[f]} and {c}")
            else:
                covered[f] = c
    uncovered = sorted(fine_members - set(covered))
    for f in uncovered:
        witnesses.append(f"{f} is covered by no component on {coarse}")
    return RefinementReport(ok=not witnesses, witnesses=tuple(witnesses))
