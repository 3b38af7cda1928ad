"""Mayer-Vietoris complexes of a gluing, in degree zero, as integer matrices.

Each direct summand (one per component, intersection entry, or triple point)
is a single copy of the abstract coefficient group, so every map is an
integer matrix acting on column vectors.

Orderings are fixed so that dumps are reproducible:

* downstream components sorted by name, upstream components by id;
* upstream points sorted by (block label, point id);
* downstream entries sorted by (block label, component pair, class indices);
* triple points sorted by block label.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TextIO

from .configmodel import Branch, GluingConfiguration, component_count, downstream_view
from .exactalg import IntMatrix, kernel_basis, spans_full_lattice

MATRIX_NAMES = ("phi_downstream", "dQ", "phi_upstream", "nu1", "eps3")


@dataclass(frozen=True)
class Entry:
    """A downstream intersection entry: a pair of branch classes on distinct components."""

    block: str
    low: str  # downstream component with the smaller name
    high: str
    classes: tuple[tuple[Branch, ...], tuple[Branch, ...]]


@dataclass(frozen=True)
class ComplexPair:
    phi_downstream: IntMatrix  # n2 x n1
    dQ: IntMatrix  # n3 x n2
    phi_upstream: IntMatrix  # m2 x m1
    nu1: IntMatrix  # m1 x n1
    eps3: IntMatrix  # m2 x n2
    downstream_components: tuple[str, ...]
    upstream_components: tuple[str, ...]
    upstream_points: tuple[str, ...]
    entries: tuple[Entry, ...]
    triples: tuple[str, ...]
    node_pairs: int
    connected: bool = True

    def matrices(self) -> dict[str, IntMatrix]:
        return {name: getattr(self, name) for name in MATRIX_NAMES}


def build_complexes(config: GluingConfiguration) -> ComplexPair:
    view = downstream_view(config)
    down = config.downstream_components
    down_index = {c: i for i, c in enumerate(down)}
    up = tuple(sorted(c.id for c in config.upstream_components))
    up_index = {c: i for i, c in enumerate(up)}

    block_of = {pid: blk.label for blk in config.point_blocks for pid in blk.points}
    points = tuple(sorted((p.id for p in config.upstream_points), key=lambda pid: (block_of[pid], pid)))

    entries: list[Entry] = []
    entry_of_classes: dict[frozenset, int] = {}
    triples: list[str] = []
    dq_rows: list[tuple[int, int, int]] = []
    node_pairs = 0
    for pt in view.points:
        local: dict[tuple[int, int], int] = {}
        for i, j in pt.distinct_pairs():
            local[(i, j)] = len(entries)
            entry_of_classes[frozenset((pt.classes[i], pt.classes[j]))] = len(entries)
            entries.append(Entry(pt.label, pt.components[i], pt.components[j], (pt.classes[i], pt.classes[j])))
        node_pairs += len(pt.node_pairs())
        if pt.is_triple():
            # classes are sorted by component, so 0 < 1 < 2 is i < j < k
            triples.append(pt.label)
            dq_rows.append((local[(1, 2)], local[(0, 2)], local[(0, 1)]))

    n1, n2, m1, m2 = len(down), len(entries), len(up), len(points)

    phi_down = [[0] * n1 for _ in range(n2)]
    for e, ent in enumerate(entries):
        phi_down[e][down_index[ent.low]] = 1
        phi_down[e][down_index[ent.high]] = -1

    dq = [[0] * n2 for _ in range(len(dq_rows))]
    for t, (jk, ik, ij) in enumerate(dq_rows):
        dq[t][jk], dq[t][ik], dq[t][ij] = 1, -1, 1

    # upstream signs follow the downstream order of the images; ties by upstream id
    phi_up = [[0] * m1 for _ in range(m2)]
    for q, pid in enumerate(points):
        p = config.point(pid)
        r, s = sorted((p.branch_a, p.branch_b), key=lambda c: (down_index[config.component_map[c]], c))
        phi_up[q][up_index[r]] = 1
        phi_up[q][up_index[s]] = -1

    nu1 = [[0] * n1 for _ in range(m1)]
    for r, cid in enumerate(up):
        nu1[r][down_index[config.component_map[cid]]] = 1

    class_of = {br: cls for pt in view.points for cls in pt.classes for br in cls}
    eps3 = [[0] * n2 for _ in range(m2)]
    for q, pid in enumerate(points):
        key = frozenset((class_of[(pid, "a")], class_of[(pid, "b")]))
        e = entry_of_classes.get(key)
        if e is not None:
            eps3[q][e] = 1

    return ComplexPair(
        phi_downstream=IntMatrix.from_rows(phi_down, cols=n1),
        dQ=IntMatrix.from_rows(dq, cols=n2),
        phi_upstream=IntMatrix.from_rows(phi_up, cols=m1),
        nu1=IntMatrix.from_rows(nu1, cols=n1),
        eps3=IntMatrix.from_rows(eps3, cols=n2),
        downstream_components=down,
        upstream_components=up,
        upstream_points=points,
        entries=tuple(entries),
        triples=tuple(triples),
        node_pairs=node_pairs,
        connected=component_count(config, "upstream") == 1 and component_count(config, "downstream") == 1,
    )


def h0_Q_rank(pair: ComplexPair) -> int:
    """Rank of the degree-zero cohomology of Q, i.e. of ker dQ."""
    dq = pair.dQ
    if dq.rows and not spans_full_lattice(dq):
        raise AssertionError("dQ is not surjective over the integers; the gluing model is inconsistent")
    return dq.cols - dq.rows


def h0_kernel_rank(pair: ComplexPair, side: str) -> int:
    if side == "upstream":
        return len(kernel_basis(pair.phi_upstream))
    if side == "downstream":
        return len(kernel_basis(pair.phi_downstream))
    raise ValueError(f"side must be 'upstream' or 'downstream', not {side!r}")


def check_commutativity(pair: ComplexPair) -> bool:
    return (
        pair.eps3 @ pair.phi_downstream == pair.phi_upstream @ pair.nu1
        and (pair.dQ @ pair.phi_downstream).is_zero()
    )


def dump_matrices(pair: ComplexPair, stream: TextIO) -> None:
    """Write ``name rows cols`` followed by the rows, for each matrix in turn."""
    for name, m in pair.matrices().items():
        stream.write(f"{name} {m.rows} {m.cols}\n")
        for i in range(m.rows):
            stream.write(" ".join(str(x) for x in m.row(i)) + "\n")
