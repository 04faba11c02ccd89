"""Du Val contractions on a fiber and intersection numbers on the singular model."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import networkx as nx

from . import linalg
from .curves import (
    ADEType,
    Configuration,
    SingularPoint,
    SurfaceModel,
    dual_graph,
    natural_key,
)
from .errors import ContractionOverlapError, NotADEError, PreconditionError

is_negative_definite = linalg.is_negative_definite


def _arm_length(g: nx.Graph, center: str, start: str) -> int:
    length, prev, cur = 1, center, start
    while True:
        nxt = [n for n in g.neighbors(cur) if n != prev]
        if not nxt:
            return length
        prev, cur = cur, nxt[0]
        length += 1


def classify_ade(config: Configuration, ids: Iterable[str]) -> ADEType | None:
    """Dynkin type of the curves ``ids``, or ``None`` if they are not a Du Val configuration.

    >>> from fibersurf.curves import Configuration, Curve
    >>> c = Configuration((Curve("a", -2, 0),), {})
    >>> str(classify_ade(c, ["a"]))
    'A1'
    """
    ids = sorted(set(ids), key=natural_key)
    if not ids:
        return None
    for cid in ids:
        c = config.curve(cid)
        if (c.self_int, c.k_deg, c.genus) != (-2, 0, 0):
            return None
    g = dual_graph(config, ids)
    if any(d["weight"] != 1 for _, _, d in g.edges(data=True)):
        return None
    if not nx.is_tree(g):
        return None
    n = len(ids)
    degrees = dict(g.degree())
    branch = [v for v, d in degrees.items() if d >= 3]
    if not branch:
        return ADEType("A", n)
    if len(branch) > 1 or degrees[branch[0]] > 3:
        return None
    center = branch[0]
    arms = sorted(_arm_length(g, center, nb) for nb in g.neighbors(center))
    if arms[:2] == [1, 1]:
        return ADEType("D", n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return ADEType("E", n)
    return None


def make_singular_point(config: Configuration, ids: Iterable[str]) -> SingularPoint:
    ids = tuple(sorted(set(ids), key=natural_key))
    ade = classify_ade(config, ids)
    if ade is None:
        raise NotADEError(f"curves {list(ids)} in fiber {config.base_label!r} are not a Du Val configuration")
    inside = set(ids)
    attachments = {}
    for cid in config.sorted_ids():
        if cid in inside:
            continue
        row = tuple(config.edge(cid, e) for e in ids)
        if any(row):
            attachments[cid] = row
    return SingularPoint(ade, ids, attachments)


def contract_ade(model: SurfaceModel, fiber_label: str, curve_ids: Iterable[str]) -> SurfaceModel:
    """Contract one Du Val configuration in a fiber, adding a singular point."""
    config = model.fiber(fiber_label)
    ids = set(curve_ids)
    for cid in ids:
        config.curve(cid)
    taken = model.contracted_ids(fiber_label)
    if ids & taken:
        raise ContractionOverlapError(f"curves {sorted(ids & taken, key=natural_key)} are already contracted")
    touching = sorted(
        {e for cid in ids for e in config.neighbors(cid) if e in taken}, key=natural_key
    )
    if touching:
        raise ContractionOverlapError(
            f"curves {sorted(ids, key=natural_key)} meet the contracted curves {touching}; "
            "contract their union as one point instead"
        )
    point = make_singular_point(config, ids)
    return model.with_fiber(fiber_label, config, model.singular_points(fiber_label) + (point,))


def _contracted_order(model: SurfaceModel, fiber_label: str) -> list[str]:
    return sorted(model.contracted_ids(fiber_label), key=natural_key)


def _require_surviving(model: SurfaceModel, fiber_label: str, curve_id: str) -> None:
    model.fiber(fiber_label).curve(curve_id)
    if curve_id in model.contracted_ids(fiber_label):
        raise PreconditionError(f"curve {curve_id!r} is contracted on the singular model")


def mumford_pullback(model: SurfaceModel, fiber_label: str, a: str) -> dict[str, Fraction]:
    """Coefficients ``l_j`` with ``(A + sum l_j E_j) . E_k = 0`` for every contracted ``E_k``."""
    _require_surviving(model, fiber_label, a)
    config = model.fiber(fiber_label)
    exc = _contracted_order(model, fiber_label)
    if not exc:
        return {}
    matrix = [[config.edge(e, f) for f in exc] for e in exc]
    rhs = [-config.edge(a, e) for e in exc]
    return dict(zip(exc, linalg.solve(matrix, rhs)))


def intersection_on_singular(model: SurfaceModel, fiber_label: str, a: str, b: str) -> Fraction:
    _require_surviving(model, fiber_label, b)
    config = model.fiber(fiber_label)
    lam = mumford_pullback(model, fiber_label, a)
    return Fraction(config.edge(a, b)) + sum(
        (coef * config.edge(e, b) for e, coef in lam.items()), Fraction(0)
    )


def k_degree_on_singular(model: SurfaceModel, fiber_label: str, a: str) -> int:
    # Du Val contractions are crepant, so K is unchanged on survivors.
    _require_surviving(model, fiber_label, a)
    return model.fiber(fiber_label).curve(a).k_deg


def resolve(model: SurfaceModel, fiber_label: str) -> Configuration:
    return model.fiber(fiber_label)
