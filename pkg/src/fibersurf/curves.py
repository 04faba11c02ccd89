"""Fiber dual graphs: curves, configurations, singular points and surface models.

A fiber of a surface fibered over the line is stored on its smooth minimal
resolution as a weighted dual graph.  Every curve records its
self-intersection, its canonical degree and its multiplicity in the fiber
cycle; the off-diagonal intersection numbers live in ``edges``.

All values are immutable after construction.  Operations elsewhere in the
package return new values.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Mapping

import networkx as nx

from . import linalg
from .errors import UnknownCurveError, UnknownFiberError

_DIGITS = re.compile(r"(\d+)")


def natural_key(curve_id: str) -> tuple:
    """Sort key that orders ``E2`` before ``E10``."""
    parts = _DIGITS.split(str(curve_id))
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p != "")


def edge_key(a: str, b: str) -> frozenset:
    if a == b:
        raise ValueError(f"self-edge on {a!r}; use Curve.self_int")
    return frozenset((a, b))


@dataclass(frozen=True)
class Curve:
    id: str
    self_int: int
    k_deg: int
    genus: int = 0
    fiber_mult: int = 1

    def label(self) -> str:
        return f"{self.id} [{self.self_int}, {self.k_deg}, {self.fiber_mult}]"


@dataclass(frozen=True)
class Configuration:
    """Dual graph of one fiber on a smooth surface.

    ``edges`` maps an unordered pair of curve ids to their (positive)
    intersection number; missing pairs are disjoint.  Treat it as read-only.
    """

    curves: tuple[Curve, ...] = ()
    edges: Mapping[frozenset, int] = field(default_factory=dict)
    base_label: str = "z"

    def __post_init__(self):
        curves = tuple(self.curves)
        ids = [c.id for c in curves]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate curve ids in {ids}")
        known = set(ids)
        clean = {}
        for pair, weight in dict(self.edges).items():
            pair = frozenset(pair)
            if len(pair) != 2:
                raise ValueError(f"edge {set(pair)} must join two distinct curves")
            for cid in pair:
                if cid not in known:
                    raise UnknownCurveError(cid, self.base_label)
            if weight < 0:
                raise ValueError(f"negative intersection number on {sorted(pair)}")
            if weight:
                clean[pair] = int(weight)
        object.__setattr__(self, "curves", curves)
        object.__setattr__(self, "edges", clean)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.curves)

    def __len__(self) -> int:
        return len(self.curves)

    def __contains__(self, curve_id) -> bool:
        return any(c.id == curve_id for c in self.curves)

    def curve(self, curve_id: str) -> Curve:
        for c in self.curves:
            if c.id == curve_id:
                return c
        raise UnknownCurveError(curve_id, self.base_label)

    def edge(self, a: str, b: str) -> int:
        if a == b:
            return self.curve(a).self_int
        return self.edges.get(frozenset((a, b)), 0)

    def neighbors(self, curve_id: str) -> dict[str, int]:
        self.curve(curve_id)
        out = {}
        for pair, w in self.edges.items():
            if curve_id in pair:
                (other,) = pair - {curve_id}
                out[other] = w
        return dict(sorted(out.items(), key=lambda kv: natural_key(kv[0])))

    def sorted_ids(self) -> list[str]:
        return sorted(self.ids, key=natural_key)

    def fresh_id(self, prefix: str = "E") -> str:
        pattern = re.compile(rf"^{re.escape(prefix)}(\d+)$")
        used = [int(m.group(1)) for m in map(pattern.match, self.ids) if m]
        return f"{prefix}{max(used, default=0) + 1}"

    def with_curves(self, curves: Iterable[Curve], edges: Mapping[frozenset, int]) -> "Configuration":
        return Configuration(tuple(curves), edges, self.base_label)

    def relabeled(self, base_label: str) -> "Configuration":
        return replace(self, base_label=base_label)


def generic_fiber(base_label: str = "z", curve_id: str = "C") -> Configuration:
    """Smooth fiber of a ruled surface: one curve with C.C = 0, K.C = -2."""
    return Configuration((Curve(curve_id, 0, -2, 0, 1),), {}, base_label)


def intersection_matrix(config: Configuration) -> list[list[int]]:
    ids = config.ids
    return [[config.edge(a, b) for b in ids] for a in ids]


def fiber_cycle(config: Configuration) -> list[int]:
    return [c.fiber_mult for c in config.curves]


def k_dot_fiber(config: Configuration) -> int:
    return sum(c.fiber_mult * c.k_deg for c in config.curves)


def dual_graph(
    config: Configuration, ids: Iterable[str] | None = None, marked: Iterable[str] = ()
) -> nx.Graph:
    """Labeled networkx graph of ``config`` restricted to ``ids``.

    Curves in ``marked`` get a distinguishing flag in their node label.
    """
    keep = set(config.ids if ids is None else ids)
    marked = set(marked)
    g = nx.Graph()
    for c in config.curves:
        if c.id in keep:
            g.add_node(c.id, label=(c.self_int, c.k_deg, c.fiber_mult, c.genus, c.id in marked))
    for pair, w in config.edges.items():
        if pair <= keep:
            a, b = sorted(pair, key=natural_key)
            g.add_edge(a, b, weight=w)
    return g


def is_connected(config: Configuration, ids: Iterable[str] | None = None) -> bool:
    g = dual_graph(config, ids)
    return g.number_of_nodes() > 0 and nx.is_connected(g)


def is_snc_tree(config: Configuration) -> bool:
    if not config.curves:
        return False
    if any(w != 1 for w in config.edges.values()):
        return False
    return nx.is_tree(dual_graph(config))


@dataclass(frozen=True)
class Violation:
    check: str
    curve_ids: tuple[str, ...]
    detail: str

    def to_record(self) -> dict:
        return {"check": self.check, "curves": list(self.curve_ids), "detail": self.detail}


def validate(config: Configuration, snc: bool = False) -> list[Violation]:
    """Check the fiber invariants; an empty list means the fiber is valid.

    Checked: adjunction per curve, positive multiplicities, ``F.C_i = 0``,
    ``K.F = -2``, connectedness, and Zariski's lemma (negative semidefinite
    with radical spanned by the fiber cycle).  With ``snc=True`` the dual
    graph must also be a tree with unit weights.
    """
    out: list[Violation] = []
    for c in config.curves:
        if c.fiber_mult < 1:
            out.append(Violation("multiplicity", (c.id,), f"fiber_mult={c.fiber_mult}"))
        if c.genus != 0:
            out.append(Violation("genus", (c.id,), f"genus={c.genus}; fiber components are rational"))
        if 2 * c.genus - 2 != c.self_int + c.k_deg:
            out.append(
                Violation(
                    "adjunction",
                    (c.id,),
                    f"2g-2={2 * c.genus - 2} but C^2+K.C={c.self_int + c.k_deg}",
                )
            )
    if not config.curves:
        out.append(Violation("empty", (), "fiber has no components"))
        return out

    matrix = intersection_matrix(config)
    cycle = fiber_cycle(config)
    for cid, value in zip(config.ids, linalg.matvec(matrix, cycle)):
        if value != 0:
            out.append(Violation("fiber_orthogonality", (cid,), f"F.{cid}={value}"))
    kf = k_dot_fiber(config)
    if kf != -2:
        out.append(Violation("canonical_degree", config.ids, f"K.F={kf}"))

    connected = is_connected(config)
    if not connected:
        out.append(Violation("connected", config.ids, "dual graph is disconnected"))
    elif not any(v.check == "fiber_orthogonality" for v in out):
        # F.C_i = 0 with F > 0 on a connected graph: the form is negative
        # semidefinite with radical <F> iff any corank-one principal block
        # is negative definite.
        minor = [row[1:] for row in matrix[1:]]
        if not linalg.is_negative_definite(minor):
            out.append(Violation("zariski", config.ids, "form is not negative semidefinite of corank 1"))
    if snc and not is_snc_tree(config):
        out.append(Violation("snc_tree", config.ids, "dual graph is not a unit-weight tree"))
    return out


def _match_nodes(a, b):
    return a["label"] == b["label"]


def _match_edges(a, b):
    return a["weight"] == b["weight"]


def is_isomorphic(
    a: Configuration, b: Configuration, marked_a: Iterable[str] = (), marked_b: Iterable[str] = ()
) -> bool:
    """Labeled isomorphism: preserves self_int, k_deg, fiber_mult, genus and edge weights.

    If ``marked_a``/``marked_b`` are given (e.g. the contracted curves), the
    bijection must also send one marked set onto the other.
    """
    if len(a) != len(b) or len(a.edges) != len(b.edges):
        return False
    if canonical_hash(a, marked_a) != canonical_hash(b, marked_b):
        return False
    return nx.is_isomorphic(
        dual_graph(a, marked=marked_a),
        dual_graph(b, marked=marked_b),
        node_match=_match_nodes,
        edge_match=_match_edges,
    )


def canonical_hash(config: Configuration, marked: Iterable[str] = ()) -> str:
    """Isomorphism-invariant hash; isomorphic configurations always share it."""
    g = dual_graph(config, marked=marked)
    for node, data in g.nodes(data=True):
        data["h"] = ",".join(map(str, data["label"]))
    for _, _, data in g.edges(data=True):
        data["w"] = str(data["weight"])
    return nx.weisfeiler_lehman_graph_hash(g, node_attr="h", edge_attr="w", iterations=3)


# --- singular models ---------------------------------------------------------


@dataclass(frozen=True, order=True)
class ADEType:
    family: str
    rank: int

    def __post_init__(self):
        valid = (
            (self.family == "A" and self.rank >= 1)
            or (self.family == "D" and self.rank >= 4)
            or (self.family == "E" and self.rank in (6, 7, 8))
        )
        if not valid:
            raise ValueError(f"no Dynkin diagram {self.family}{self.rank}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class SingularPoint:
    """A Du Val point: the contracted (-2)-curves and how survivors meet them."""

    ade_type: ADEType
    contracted_ids: tuple[str, ...]
    attachments: Mapping[str, tuple[int, ...]] = field(default_factory=dict, compare=False)

    def to_record(self) -> dict:
        return {
            "type": str(self.ade_type),
            "curves": list(self.contracted_ids),
            "attachments": {k: list(v) for k, v in self.attachments.items()},
        }


@dataclass(frozen=True)
class SurfaceModel:
    """A fibered surface over the line, stored through its minimal resolution.

    Only marked fibers are represented; every other fiber is a smooth
    rational curve.  ``contractions[label]`` lists the Du Val points lying on
    the fiber over ``label``.
    """

    marked_points: tuple[str, ...] = ()
    fibers: Mapping[str, Configuration] = field(default_factory=dict)
    contractions: Mapping[str, tuple[SingularPoint, ...]] = field(default_factory=dict)

    def __post_init__(self):
        points = tuple(self.marked_points)
        if len(set(points)) != len(points):
            raise ValueError(f"duplicate marked points in {points}")
        fibers = dict(self.fibers)
        if set(fibers) != set(points):
            raise ValueError("fibers must be given exactly for the marked points")
        contractions = {label: tuple(self.contractions.get(label, ())) for label in points}
        for label, pts in contractions.items():
            seen: set[str] = set()
            for p in pts:
                overlap = seen & set(p.contracted_ids)
                if overlap:
                    raise ValueError(f"contracted sets overlap on {sorted(overlap)} in fiber {label!r}")
                seen |= set(p.contracted_ids)
                for cid in p.contracted_ids:
                    fibers[label].curve(cid)
        object.__setattr__(self, "marked_points", points)
        object.__setattr__(self, "fibers", fibers)
        object.__setattr__(self, "contractions", contractions)

    @classmethod
    def ruled(cls, labels: Iterable[str] = ()) -> "SurfaceModel":
        labels = tuple(labels)
        return cls(labels, {q: generic_fiber(q) for q in labels}, {})

    def fiber(self, label: str) -> Configuration:
        try:
            return self.fibers[label]
        except KeyError:
            raise UnknownFiberError(label) from None

    def singular_points(self, label: str) -> tuple[SingularPoint, ...]:
        self.fiber(label)
        return self.contractions[label]

    def contracted_ids(self, label: str) -> set[str]:
        return {cid for p in self.singular_points(label) for cid in p.contracted_ids}

    def surviving_ids(self, label: str) -> list[str]:
        gone = self.contracted_ids(label)
        return [cid for cid in self.fiber(label).sorted_ids() if cid not in gone]

    def is_irreducible(self, label: str) -> bool:
        return len(self.surviving_ids(label)) == 1

    def is_mori(self) -> bool:
        return all(self.is_irreducible(q) for q in self.marked_points)

    def with_fiber(
        self, label: str, config: Configuration, points: Iterable[SingularPoint] | None = None
    ) -> "SurfaceModel":
        self.fiber(label)
        fibers = dict(self.fibers)
        fibers[label] = config.relabeled(label)
        contractions = dict(self.contractions)
        if points is not None:
            contractions[label] = tuple(points)
        return SurfaceModel(self.marked_points, fibers, contractions)

    def with_marked(self, labels: Iterable[str]) -> "SurfaceModel":
        new = [q for q in labels]
        clash = [q for q in new if q in self.fibers]
        if clash:
            raise ValueError(f"points already marked: {clash}")
        fibers = dict(self.fibers)
        fibers.update({q: generic_fiber(q) for q in new})
        return SurfaceModel(self.marked_points + tuple(new), fibers, self.contractions)

    def iter_fibers(self) -> Iterator[tuple[str, Configuration]]:
        for q in self.marked_points:
            yield q, self.fibers[q]


@dataclass(frozen=True)
class FiberType:
    """Row of the fiber table: ``Reduced``, ``A1A1`` or ``D(i)`` with i >= 3."""

    kind: str
    rank: int | None = None

    @classmethod
    def D(cls, rank: int) -> "FiberType":
        if rank < 3:
            raise ValueError("D-type fibers start at D3")
        return cls("D", rank)

    def __str__(self) -> str:
        return f"D{self.rank}" if self.kind == "D" else self.kind


REDUCED = FiberType("Reduced")
A1A1 = FiberType("A1A1")
