"""Architecture document parsing, canonical serialization, DOT export."""

from __future__ import annotations

import json

from .model import Architecture, ChannelId, LevelId, ModelError

_TOP_LEVEL = (
    "components",
    "levels",
    "chan_from_ch",
    "chan_from_var",
    "var_from",
    "var_to",
    "highload_channels",
    "highperf_components",
)

_COMPONENT_MEMBERS = ("in", "out", "var", "subcomp")


class DocumentError(ModelError):
    """The document text is not a well-formed architecture description."""


def _expect_string_array(value: object, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise DocumentError(f"{where} must be an array of identifier strings")
    return value


def _expect_table(value: object, where: str) -> dict[str, list[str]]:
    if not isinstance(value, dict):
        raise DocumentError(f"{where} must be an object")
    return {
        key: _expect_string_array(members, f"{where}[{key}]")
        for key, members in value.items()
    }


def parse(doc: str) -> Architecture:
    """Parse an architecture description document.

    Raises DocumentError on malformed text (with position for syntax
    errors), UnknownIdentifierError and SubcomponentCycleError per the
    model's closure rules.
    """
    try:
        raw = json.loads(doc)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise DocumentError("top level must be an object")
    unknown = sorted(set(raw) - set(_TOP_LEVEL))
    if unknown:
        raise DocumentError(f"unknown top-level members: {', '.join(unknown)}")

    raw_components = raw.get("components", {})
    if not isinstance(raw_components, dict):
        raise DocumentError("components must be an object")
    components: dict[str, dict[str, list[str]]] = {}
    for name, spec in raw_components.items():
        if not isinstance(spec, dict):
            raise DocumentError(f"components[{name}] must be an object")
        extra = sorted(set(spec) - set(_COMPONENT_MEMBERS))
        if extra:
            raise DocumentError(
                f"components[{name}] has unknown members: {', '.join(extra)}"
            )
        components[name] = {
            member: _expect_string_array(spec.get(member, []), f"components[{name}].{member}")
            for member in _COMPONENT_MEMBERS
        }

    return Architecture.create(
        components=components,
        levels=_expect_table(raw.get("levels", {}), "levels"),
        chan_from_ch=_expect_table(raw.get("chan_from_ch", {}), "chan_from_ch"),
        chan_from_var=_expect_table(raw.get("chan_from_var", {}), "chan_from_var"),
        var_from=_expect_table(raw.get("var_from", {}), "var_from"),
        var_to=_expect_table(raw.get("var_to", {}), "var_to"),
        highload_channels=_expect_string_array(
            raw.get("highload_channels", []), "highload_channels"
        ),
        highperf_components=_expect_string_array(
            raw.get("highperf_components", []), "highperf_components"
        ),
    )


def serialize(a: Architecture) -> str:
    """Canonical document text: total tables, lexicographic order everywhere."""
    doc = {
        "components": {
            name: {
                "in": sorted(rec.inputs),
                "out": sorted(rec.outputs),
                "var": sorted(rec.vars),
                "subcomp": sorted(rec.subcomponents),
            }
            for name, rec in sorted(a.components.items())
        },
        "levels": {lvl: sorted(members) for lvl, members in sorted(a.levels.items())},
        "chan_from_ch": {c: sorted(deps) for c, deps in sorted(a.chan_from_ch.items())},
        "chan_from_var": {c: sorted(deps) for c, deps in sorted(a.chan_from_var.items())},
        "var_from": {v: sorted(deps) for v, deps in sorted(a.var_from.items())},
        "var_to": {v: sorted(deps) for v, deps in sorted(a.var_to.items())},
        "highload_channels": sorted(a.highload_channels),
        "highperf_components": sorted(a.highperf_components),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def export_dot(a: Architecture, level: LevelId) -> str:
    """Render one level as a Graphviz digraph.

    Components become nodes, producer-to-consumer channels become labeled
    edges. High-load channels are drawn thick and red; components requiring
    high-performance execution are filled light green.
    """
    from .optimize import is_high_perf

    members = sorted(a.level_components(level))
    lines = [f'digraph "{level}" {{']
    for node in members:
        attrs = ""
        if is_high_perf(a, node):
            attrs = ' [fillcolor=lightgreen,style=filled]'
        lines.append(f'  "{node}"{attrs};')
    edges: list[tuple[str, str, ChannelId]] = []
    for producer in members:
        for consumer in members:
            for chan in sorted(a.outputs_of(producer) & a.inputs_of(consumer)):
                edges.append((producer, consumer, chan))
    for producer, consumer, chan in sorted(edges):
        attrs = f'label="{chan}"'
        if chan in a.highload_channels:
            attrs += ",penwidth=3,color=red"
        lines.append(f'  "{producer}" -> "{consumer}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
