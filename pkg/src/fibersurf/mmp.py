"""Relative minimal model program over the base and the table of Mori fibers."""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .birational import blow_down, is_minus_one_curve, strict_support
from .curves import (
    A1A1,
    REDUCED,
    ADEType,
    Configuration,
    FiberType,
    SurfaceModel,
    dual_graph,
    natural_key,
)
from .errors import (
    ClassificationError,
    MMPStuckError,
    NotContractibleError,
    PreconditionError,
)
from .singularities import intersection_on_singular, make_singular_point


@dataclass(frozen=True)
class MMPStep:
    fiber: str
    curve: str
    contracted: tuple[str, ...]

    def to_record(self) -> dict:
        return {"fiber": self.fiber, "curve": self.curve, "contracted": list(self.contracted)}


def relative_mmp_smooth(config: Configuration) -> tuple[Configuration, list[str]]:
    """Blow down (-1)-curves, lowest id first, until the fiber is a single smooth curve."""
    log: list[str] = []
    while len(config) > 1:
        candidates = [cid for cid in config.sorted_ids() if is_minus_one_curve(config.curve(cid))]
        if not candidates:
            raise MMPStuckError(
                f"fiber {config.base_label!r} has {len(config)} components and no (-1)-curve"
            )
        config = blow_down(config, candidates[0])
        log.append(candidates[0])
    if not config.curves:
        raise MMPStuckError("empty fiber")
    last = config.curves[0]
    if (last.self_int, last.k_deg, last.fiber_mult) != (0, -2, 1):
        raise MMPStuckError(f"relative MMP ended at {last.label()}, not a smooth ruling")
    return config, log


def _descend(model: SurfaceModel, label: str, c: str) -> tuple[SurfaceModel, tuple[str, ...]]:
    # Irreducible multiple fiber: contract the support on the resolution; the
    # Du Val curve it met becomes the new support (inverse of an elementary
    # transformation).
    config = model.fiber(label)
    points = model.singular_points(label)
    if config.curve(c).fiber_mult < 2 or not points:
        raise NotContractibleError(
            f"fiber {label!r} is reduced and irreducible; only the whole fiber is K-negative"
        )
    down = blow_down(config, c)
    released = []
    survivors = []
    for cid in sorted(model.contracted_ids(label), key=natural_key):
        if down.curve(cid).self_int == -2:
            survivors.append(cid)
        else:
            released.append(cid)
    if len(released) != 1:
        raise NotContractibleError(
            f"contracting {c!r} in fiber {label!r} releases {released}; the result is not a Mori fiber"
        )
    new_points = []
    for comp in nx.connected_components(dual_graph(down, survivors)):
        new_points.append(make_singular_point(down, comp))
    new_points.sort(key=lambda p: natural_key(p.contracted_ids[0]))
    return model.with_fiber(label, down, new_points), (c,)


def _exhaust(model: SurfaceModel, label: str, c: str) -> tuple[SurfaceModel, tuple[str, ...]]:
    config = model.fiber(label)
    self_sq = intersection_on_singular(model, label, c, c)
    if self_sq >= 0:
        raise NotContractibleError(f"curve {c!r} has C^2={self_sq} >= 0 on the singular model")
    attached = []
    kept = []
    for point in model.singular_points(label):
        if any(config.edge(c, e) for e in point.contracted_ids):
            attached.append(point)
        else:
            kept.append(point)
    union = {c} | {e for p in attached for e in p.contracted_ids}
    order = []
    while union:
        ready = [cid for cid in sorted(union, key=natural_key) if is_minus_one_curve(config.curve(cid))]
        if not ready:
            left = sorted(union, key=natural_key)
            raise NotContractibleError(
                f"contracting {c!r} in fiber {label!r} would leave {left}: the image point is not smooth"
            )
        config = blow_down(config, ready[0])
        union.discard(ready[0])
        order.append(ready[0])
    refreshed = []
    for point in kept:
        again = make_singular_point(config, point.contracted_ids)
        if again.ade_type != point.ade_type:
            raise NotContractibleError(f"contraction of {c!r} changed the singular point {point.contracted_ids}")
        refreshed.append(again)
    return model.with_fiber(label, config, refreshed), tuple(order)


def _step(model: SurfaceModel, label: str, c: str) -> tuple[SurfaceModel, tuple[str, ...]]:
    config = model.fiber(label)
    config.curve(c)
    if c in model.contracted_ids(label):
        raise PreconditionError(f"curve {c!r} is contracted on the singular model")
    if config.curve(c).k_deg >= 0:
        raise NotContractibleError(f"curve {c!r} has K.C={config.curve(c).k_deg} >= 0")
    if model.is_irreducible(label):
        return _descend(model, label, c)
    return _exhaust(model, label, c)


def extremal_contraction_singular(model: SurfaceModel, fiber_label: str, c: str) -> SurfaceModel:
    """Contract the K-negative curve ``c`` of the singular fiber.

    On a reducible fiber, ``c`` together with the Du Val points it meets is
    blown down on the resolution by iterated (-1)-contractions; the step is
    refused unless that set is used up, i.e. unless the image point is
    smooth.  On an irreducible fiber of type ``D(i)`` the step contracts the
    support on the resolution and yields the fiber ``D(i-1)`` (``A1A1`` from
    ``D3``).
    """
    return _step(model, fiber_label, c)[0]


def to_mori_fiber(model: SurfaceModel) -> tuple[SurfaceModel, list[MMPStep]]:
    """Run the MMP fiber by fiber until every fiber is irreducible on the singular model."""
    log: list[MMPStep] = []
    for label in model.marked_points:
        while not model.is_irreducible(label):
            config = model.fiber(label)
            for cid in model.surviving_ids(label):
                if config.curve(cid).k_deg >= 0:
                    continue
                try:
                    model, gone = _exhaust(model, label, cid)
                except NotContractibleError:
                    continue
                log.append(MMPStep(label, cid, gone))
                break
            else:
                raise MMPStuckError(
                    f"fiber {label!r} is reducible but no K-negative curve contracts to a smooth point"
                )
    return model, log


def classify_mori_fiber(model: SurfaceModel, fiber_label: str) -> FiberType:
    support = strict_support(model, fiber_label)
    config = model.fiber(fiber_label)
    mult = config.curve(support).fiber_mult
    points = model.singular_points(fiber_label)
    types = sorted(p.ade_type for p in points)
    if mult == 1:
        if points or len(config) != 1:
            raise ClassificationError(
                f"reduced fiber {fiber_label!r} is not a smooth curve in the smooth locus"
            )
        return REDUCED
    if mult != 2:
        raise ClassificationError(f"fiber {fiber_label!r} has support multiplicity {mult} > 2")
    if len(points) == 2:
        if types != [ADEType("A", 1), ADEType("A", 1)]:
            raise ClassificationError(f"two singular points of types {[str(t) for t in types]} on {fiber_label!r}")
        return A1A1
    if len(points) == 1:
        (t,) = types
        if t == ADEType("A", 3):
            return FiberType.D(3)
        if t.family == "D":
            return FiberType.D(t.rank)
        raise ClassificationError(f"one singular point of type {t} on {fiber_label!r}")
    raise ClassificationError(f"fiber {fiber_label!r} carries {len(points)} singular points")


def count_nonreduced(model: SurfaceModel) -> int:
    if not model.is_mori():
        raise PreconditionError("count_nonreduced needs a Mori fiber model; run to_mori_fiber first")
    return sum(
        1
        for label in model.marked_points
        if model.fiber(label).curve(strict_support(model, label)).fiber_mult >= 2
    )
