"""Curve configurations: an upstream normal-crossings union of smooth rational
curves together with the gluing that produces the downstream curve.

Branches are addressed as ``(point_id, slot)`` with slot ``"a"`` or ``"b"``,
matching the order of the point's ``branches`` list in the JSON file.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from itertools import combinations
from typing import Any, Mapping

logger = logging.getLogger(__name__)

SLOTS = ("a", "b")
TOP_LEVEL_KEYS = (
    "name",
    "upstream_components",
    "upstream_points",
    "component_map",
    "point_blocks",
    "branch_classes",
)

Branch = tuple[str, str]


class ConfigError(ValueError):
    """Raised when a configuration document cannot be turned into a model."""


class ConfigSyntaxError(ConfigError):
    def __init__(self, msg: str, line: int, column: int):
        super().__init__(f"syntax error at line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


class SchemaError(ConfigError):
    pass


class UnknownIdError(ConfigError):
    def __init__(self, kind: str, ident: str, where: str):
        super().__init__(f"unknown id {ident!r} ({kind}) referenced in {where}")
        self.ident = ident


class DuplicateIdError(ConfigError):
    def __init__(self, kind: str, ident: str):
        super().__init__(f"duplicate id {ident!r} ({kind})")
        self.ident = ident


@dataclass(frozen=True)
class UpstreamComponent:
    id: str
    label: str = ""


@dataclass(frozen=True)
class UpstreamPoint:
    id: str
    branch_a: str
    branch_b: str
    label: str = ""

    def component(self, slot: str) -> str:
        return self.branch_a if slot == "a" else self.branch_b


@dataclass(frozen=True)
class PointBlock:
    label: str
    points: tuple[str, ...]


@dataclass(frozen=True)
class GluingConfiguration:
    name: str
    upstream_components: tuple[UpstreamComponent, ...]
    upstream_points: tuple[UpstreamPoint, ...]
    component_map: Mapping[str, str]
    point_blocks: tuple[PointBlock, ...]
    branch_classes: tuple[tuple[Branch, ...], ...]
    _points_by_id: dict[str, UpstreamPoint] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "_points_by_id", {p.id: p for p in self.upstream_points})

    def point(self, point_id: str) -> UpstreamPoint:
        return self._points_by_id[point_id]

    def branch_component(self, branch: Branch) -> str:
        """Upstream component carrying ``branch``."""
        return self.point(branch[0]).component(branch[1])

    def branch_image(self, branch: Branch) -> str:
        """Downstream component carrying ``branch``."""
        return self.component_map[self.branch_component(branch)]

    @property
    def downstream_components(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.component_map.values())))


@dataclass(frozen=True)
class Counts:
    n1: int
    n2: int
    n3: int
    m1: int
    m2: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.n1, self.n2, self.n3, self.m1, self.m2)

    def __str__(self) -> str:
        return f"n1={self.n1} n2={self.n2} n3={self.n3} m1={self.m1} m2={self.m2}"


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


# -- parsing -----------------------------------------------------------------


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise SchemaError(msg)


def _check_keys(obj: Any, required: tuple[str, ...], optional: tuple[str, ...], where: str) -> None:
    _expect(isinstance(obj, dict), f"{where}: expected an object")
    unknown = set(obj) - set(required) - set(optional)
    _expect(not unknown, f"{where}: unknown field(s) {sorted(unknown)}")
    missing = [k for k in required if k not in obj]
    _expect(not missing, f"{where}: missing field(s) {missing}")


def _string(x: Any, where: str) -> str:
    _expect(isinstance(x, str), f"{where}: expected a string")
    return x


def parse_configuration(text: str | bytes) -> GluingConfiguration:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return configuration_from_dict(doc)


def configuration_from_dict(doc: Any) -> GluingConfiguration:
    _check_keys(doc, TOP_LEVEL_KEYS, (), "configuration")
    name = _string(doc["name"], "name")

    _expect(isinstance(doc["upstream_components"], list), "upstream_components: expected a list")
    comps: list[UpstreamComponent] = []
    for k, c in enumerate(doc["upstream_components"]):
        where = f"upstream_components[{k}]"
        _check_keys(c, ("id",), ("label",), where)
        comps.append(UpstreamComponent(_string(c["id"], where + ".id"), _string(c.get("label", ""), where + ".label")))
    comp_ids = _unique([c.id for c in comps], "upstream component")

    _expect(isinstance(doc["upstream_points"], list), "upstream_points: expected a list")
    points: list[UpstreamPoint] = []
    for k, p in enumerate(doc["upstream_points"]):
        where = f"upstream_points[{k}]"
        _check_keys(p, ("id", "branches"), ("label",), where)
        br = p["branches"]
        _expect(isinstance(br, list) and len(br) == 2, f"{where}.branches: expected two component ids")
        a, b = (_string(x, where + ".branches") for x in br)
        for cid in (a, b):
            if cid not in comp_ids:
                raise UnknownIdError("upstream component", cid, where)
        points.append(UpstreamPoint(_string(p["id"], where + ".id"), a, b, _string(p.get("label", ""), where + ".label")))
    point_ids = _unique([p.id for p in points], "upstream point")

    cmap = doc["component_map"]
    _expect(isinstance(cmap, dict), "component_map: expected an object")
    for up, down in cmap.items():
        if up not in comp_ids:
            raise UnknownIdError("upstream component", up, "component_map")
        _string(down, f"component_map[{up!r}]")

    _expect(isinstance(doc["point_blocks"], list), "point_blocks: expected a list")
    blocks: list[PointBlock] = []
    for k, blk in enumerate(doc["point_blocks"]):
        where = f"point_blocks[{k}]"
        _check_keys(blk, ("label", "points"), (), where)
        _expect(isinstance(blk["points"], list), f"{where}.points: expected a list")
        members = tuple(_string(x, where + ".points") for x in blk["points"])
        for pid in members:
            if pid not in point_ids:
                raise UnknownIdError("upstream point", pid, where)
        blocks.append(PointBlock(_string(blk["label"], where + ".label"), members))
    _unique([b.label for b in blocks], "point block label")

    _expect(isinstance(doc["branch_classes"], list), "branch_classes: expected a list")
    classes: list[tuple[Branch, ...]] = []
    for k, cls in enumerate(doc["branch_classes"]):
        where = f"branch_classes[{k}]"
        _expect(isinstance(cls, list), f"{where}: expected a list of branches")
        members = []
        for br in cls:
            _expect(
                isinstance(br, list) and len(br) == 2 and br[1] in SLOTS,
                f"{where}: a branch is [pointId, \"a\"|\"b\"]",
            )
            pid = _string(br[0], where)
            if pid not in point_ids:
                raise UnknownIdError("upstream point", pid, where)
            members.append((pid, br[1]))
        classes.append(tuple(members))

    return GluingConfiguration(
        name=name,
        upstream_components=tuple(comps),
        upstream_points=tuple(points),
        component_map=MappingProxyType(dict(cmap)),
        point_blocks=tuple(blocks),
        branch_classes=tuple(classes),
    )


def _unique(ids: list[str], kind: str) -> set[str]:
    seen: set[str] = set()
    for i in ids:
        if i in seen:
            raise DuplicateIdError(kind, i)
        seen.add(i)
    return seen


def configuration_to_dict(config: GluingConfiguration) -> dict[str, Any]:
    def with_label(d: dict[str, Any], label: str) -> dict[str, Any]:
        if label:
            d["label"] = label
        return d

    return {
        "name": config.name,
        "upstream_components": [with_label({"id": c.id}, c.label) for c in config.upstream_components],
        "upstream_points": [
            {"id": p.id, **({"label": p.label} if p.label else {}), "branches": [p.branch_a, p.branch_b]}
            for p in config.upstream_points
        ],
        "component_map": dict(config.component_map),
        "point_blocks": [{"label": b.label, "points": list(b.points)} for b in config.point_blocks],
        "branch_classes": [[[pid, slot] for pid, slot in cls] for cls in config.branch_classes],
    }


def serialize_configuration(config: GluingConfiguration) -> str:
    return json.dumps(configuration_to_dict(config), indent=2, ensure_ascii=False) + "\n"


# -- validation --------------------------------------------------------------


def validate(config: GluingConfiguration) -> list[Violation]:
    """Check the gluing invariants. An empty list means the configuration is valid."""
    out: list[Violation] = []
    comp_ids = [c.id for c in config.upstream_components]

    for cid in comp_ids:
        if cid not in config.component_map:
            out.append(Violation("unmapped-component", f"upstream component {cid!r} has no downstream image"))

    for p in config.upstream_points:
        if p.branch_a == p.branch_b:
            out.append(Violation(
                "not-normal-crossings",
                f"point {p.id!r}: both branches on {p.branch_a!r}; upstream must be normal crossings",
            ))

    block_of: dict[str, str] = {}
    for blk in config.point_blocks:
        if not blk.points:
            out.append(Violation("empty-block", f"point block {blk.label!r} has no points"))
        for pid in blk.points:
            if pid in block_of:
                out.append(Violation("block-partition", f"point {pid!r} lies in blocks {block_of[pid]!r} and {blk.label!r}"))
            block_of[pid] = blk.label
    for p in config.upstream_points:
        if p.id not in block_of:
            out.append(Violation(
                "block-partition",
                f"point {p.id!r} is in no point block (every downstream point must come from upstream intersection points)",
            ))

    class_of: dict[Branch, int] = {}
    for k, cls in enumerate(config.branch_classes):
        if not cls:
            out.append(Violation("class-partition", f"branch class {k} is empty"))
        for br in cls:
            if br in class_of:
                out.append(Violation("class-partition", f"branch {list(br)} lies in classes {class_of[br]} and {k}"))
            class_of[br] = k
    for p in config.upstream_points:
        for slot in SLOTS:
            if (p.id, slot) not in class_of:
                out.append(Violation("class-partition", f"branch {[p.id, slot]} is in no branch class"))
    if out:
        return out

    for k, cls in enumerate(config.branch_classes):
        blocks = {block_of[pid] for pid, _ in cls}
        if len(blocks) > 1:
            out.append(Violation("class-refines-blocks", f"branch class {k} spans point blocks {sorted(blocks)}"))
        images = {config.branch_image(br) for br in cls}
        if len(images) > 1:
            out.append(Violation(
                "class-image",
                f"branch class {k} lies over distinct downstream components {sorted(images)}",
            ))

    for p in config.upstream_points:
        if class_of[(p.id, "a")] == class_of[(p.id, "b")]:
            out.append(Violation(
                "point-branches-share-class",
                f"point {p.id!r}: its two branches share branch class {class_of[(p.id, 'a')]}",
            ))

    for blk in config.point_blocks:
        n = len({class_of[(pid, s)] for pid in blk.points for s in SLOTS})
        if n > 3:
            out.append(Violation(
                "too-many-branches",
                f"point block {blk.label!r} yields {n} branch classes; "
                "at most 3 components through a point",
            ))

    if not out:
        for side in ("upstream", "downstream"):
            if component_count(config, side) > 1:
                logger.warning("%s: %s curve is disconnected", config.name, side)
    return out


def connection_warnings(config: GluingConfiguration) -> list[str]:
    """Non-fatal findings: disconnected upstream or downstream curve."""
    return [
        f"{side} curve has {k} connected components; kernel-rank claims assume 1"
        for side in ("upstream", "downstream")
        if (k := component_count(config, side)) > 1
    ]


def component_count(config: GluingConfiguration, side: str) -> int:
    """Connected components of the incidence graph on one side."""
    if side == "upstream":
        nodes = [c.id for c in config.upstream_components]
        edges = [(p.branch_a, p.branch_b) for p in config.upstream_points]
    else:
        nodes = list(config.downstream_components)
        edges = [
            (config.component_map[p.branch_a], config.component_map[p.branch_b])
            for p in config.upstream_points
        ]
    parent = {v: v for v in nodes}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in nodes})


# -- derived downstream structure --------------------------------------------


@dataclass(frozen=True)
class DownstreamPoint:
    label: str
    classes: tuple[tuple[Branch, ...], ...]
    components: tuple[str, ...]  # downstream component of each class, aligned with ``classes``

    @property
    def branch_multiset(self) -> tuple[str, ...]:
        return tuple(sorted(self.components))

    def distinct_pairs(self) -> list[tuple[int, int]]:
        """Class index pairs on two different components, ordered by component."""
        pairs = []
        for i, j in combinations(range(len(self.classes)), 2):
            if self.components[i] != self.components[j]:
                if self.components[j] < self.components[i]:
                    i, j = j, i
                pairs.append((i, j))
        return sorted(pairs, key=lambda ij: (self.components[ij[0]], self.components[ij[1]], ij))

    def node_pairs(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i, j in combinations(range(len(self.classes)), 2)
            if self.components[i] == self.components[j]
        ]

    def is_triple(self) -> bool:
        return len(self.classes) == 3 and len(set(self.components)) == 3


@dataclass(frozen=True)
class DownstreamView:
    points: tuple[DownstreamPoint, ...]
    nodal: Mapping[str, bool]

    @property
    def nodal_components(self) -> list[str]:
        return [c for c, flag in self.nodal.items() if flag]


def downstream_view(config: GluingConfiguration) -> DownstreamView:
    """One downstream point per point block, in label order; classes sorted by
    (downstream component, member branches)."""
    classes_by_block: dict[str, list[tuple[Branch, ...]]] = {}
    block_of = {pid: blk.label for blk in config.point_blocks for pid in blk.points}
    for cls in config.branch_classes:
        classes_by_block.setdefault(block_of[cls[0][0]], []).append(tuple(sorted(cls)))

    points = []
    for blk in sorted(config.point_blocks, key=lambda b: b.label):
        classes = sorted(classes_by_block.get(blk.label, []), key=lambda c: (config.branch_image(c[0]), c))
        points.append(DownstreamPoint(
            label=blk.label,
            classes=tuple(classes),
            components=tuple(config.branch_image(c[0]) for c in classes),
        ))
    nodal = {c: False for c in config.downstream_components}
    for pt in points:
        for i, _ in pt.node_pairs():
            nodal[pt.components[i]] = True
    return DownstreamView(tuple(points), nodal)


def counts(config: GluingConfiguration) -> Counts:
    view = downstream_view(config)
    return Counts(
        n1=len(config.downstream_components),
        n2=sum(len(pt.distinct_pairs()) for pt in view.points),
        n3=sum(1 for pt in view.points if pt.is_triple()),
        m1=len(config.upstream_components),
        m2=len(config.upstream_points),
    )


def node_pair_count(config: GluingConfiguration) -> int:
    return sum(len(pt.node_pairs()) for pt in downstream_view(config).points)
