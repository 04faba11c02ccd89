"""Blow-ups, blow-downs and the elementary transformation of a non-reduced fiber.

Points are named symbolically: a generic point of a curve, or the
intersection point of two curves.  When two curves meet with multiplicity
greater than one, blowing up "their" intersection point lowers the weight by
one; individual intersection points are not tracked.
"""
from __future__ import annotations

from dataclasses import replace

from .curves import Configuration, Curve, SurfaceModel, edge_key, natural_key
from .errors import NoSuchEdgeError, NotContractibleError, PreconditionError
from .singularities import contract_ade, make_singular_point


def blow_up_on_curve(config: Configuration, c: str, new_id: str | None = None) -> Configuration:
    """Blow up a generic point of ``c``; the new curve is appended last."""
    old = config.curve(c)
    new_id = new_id or config.fresh_id()
    if new_id in config:
        raise ValueError(f"curve id {new_id!r} already in use")
    curves = [replace(x, self_int=x.self_int - 1, k_deg=x.k_deg + 1) if x.id == c else x for x in config.curves]
    curves.append(Curve(new_id, -1, -1, 0, old.fiber_mult))
    edges = dict(config.edges)
    edges[edge_key(c, new_id)] = 1
    return config.with_curves(curves, edges)


def blow_up_on_edge(config: Configuration, c: str, d: str, new_id: str | None = None) -> Configuration:
    """Blow up the intersection point of ``c`` and ``d``."""
    cc, dd = config.curve(c), config.curve(d)
    if c == d or config.edge(c, d) < 1:
        raise NoSuchEdgeError(f"curves {c!r} and {d!r} do not meet in fiber {config.base_label!r}")
    new_id = new_id or config.fresh_id()
    if new_id in config:
        raise ValueError(f"curve id {new_id!r} already in use")
    curves = [
        replace(x, self_int=x.self_int - 1, k_deg=x.k_deg + 1) if x.id in (c, d) else x
        for x in config.curves
    ]
    curves.append(Curve(new_id, -1, -1, 0, cc.fiber_mult + dd.fiber_mult))
    edges = dict(config.edges)
    edges[edge_key(c, d)] -= 1
    edges[edge_key(c, new_id)] = 1
    edges[edge_key(d, new_id)] = 1
    return config.with_curves(curves, edges)


def is_minus_one_curve(curve: Curve) -> bool:
    return curve.self_int == -1 and curve.k_deg == -1 and curve.genus == 0


def blow_down(config: Configuration, e: str) -> Configuration:
    """Contract the (-1)-curve ``e`` to a smooth point (Castelnuovo)."""
    curve = config.curve(e)
    if not is_minus_one_curve(curve):
        raise NotContractibleError(
            f"curve {e!r} is not a (-1)-curve: C^2={curve.self_int}, K.C={curve.k_deg}, g={curve.genus}"
        )
    meet = config.neighbors(e)
    curves = []
    for x in config.curves:
        if x.id == e:
            continue
        w = meet.get(x.id, 0)
        curves.append(replace(x, self_int=x.self_int + w * w, k_deg=x.k_deg - w) if w else x)
    edges = {pair: w for pair, w in config.edges.items() if e not in pair}
    others = list(meet)
    for i, a in enumerate(others):
        for b in others[i + 1 :]:
            key = edge_key(a, b)
            edges[key] = edges.get(key, 0) + meet[a] * meet[b]
    return config.with_curves(curves, edges)


def elementary_transform(model: SurfaceModel, fiber_label: str, c: str) -> SurfaceModel:
    """Blow up a smooth point on ``c`` and contract the strict transform of ``c``.

    The strict transform of ``c`` joins the Du Val points it meets into a
    single singular point; the new exceptional curve becomes the support of
    the fiber.  On an ``A1A1`` fiber this produces ``D3``, on ``D(i)`` it
    produces ``D(i+1)``.
    """
    config = model.fiber(fiber_label)
    curve = config.curve(c)
    taken = model.contracted_ids(fiber_label)
    if c in taken:
        raise PreconditionError(f"curve {c!r} is contracted; blow up a point of a surviving curve")
    if curve.fiber_mult < 2:
        raise PreconditionError(
            f"fiber {fiber_label!r} is reduced along {c!r}; elementary transformations need a multiple support"
        )
    blown = blow_up_on_curve(config, c)
    merged = {c}
    kept = []
    for point in model.singular_points(fiber_label):
        if any(blown.edge(c, e) for e in point.contracted_ids):
            merged |= set(point.contracted_ids)
        else:
            kept.append(point)
    if blown.curve(c).k_deg != 0:
        raise NotContractibleError(
            f"strict transform of {c!r} has K.C={blown.curve(c).k_deg}; contraction would not be crepant"
        )
    point = make_singular_point(blown, merged)
    return model.with_fiber(fiber_label, blown, kept + [point])


def strict_support(model: SurfaceModel, fiber_label: str) -> str:
    """The single surviving curve of an irreducible fiber."""
    surviving = model.surviving_ids(fiber_label)
    if len(surviving) != 1:
        raise PreconditionError(
            f"fiber {fiber_label!r} is reducible on the singular model: {sorted(surviving, key=natural_key)}"
        )
    return surviving[0]


def _refresh_points(model: SurfaceModel, fiber_label: str, config: Configuration):
    return [make_singular_point(config, p.contracted_ids) for p in model.singular_points(fiber_label)]


def blow_up_model(model: SurfaceModel, fiber_label: str, c: str, d: str | None = None) -> SurfaceModel:
    """Blow up a smooth point of the singular model: generic on ``c`` or at ``c`` meets ``d``.

    Points on contracted curves are singular points of the model and are refused.
    """
    config = model.fiber(fiber_label)
    taken = model.contracted_ids(fiber_label)
    for cid in (c,) if d is None else (c, d):
        config.curve(cid)
        if cid in taken:
            raise PreconditionError(
                f"curve {cid!r} is contracted in fiber {fiber_label!r}; its points are not smooth points"
            )
    blown = blow_up_on_curve(config, c) if d is None else blow_up_on_edge(config, c, d)
    return model.with_fiber(fiber_label, blown, _refresh_points(model, fiber_label, blown))


def make_nonreduced(model: SurfaceModel, fiber_label: str) -> SurfaceModel:
    """Turn a smooth fiber into an ``A1A1`` fiber: blow up twice, contract the two (-2)-curves."""
    config = model.fiber(fiber_label)
    if len(config) != 1 or model.singular_points(fiber_label):
        raise PreconditionError(f"fiber {fiber_label!r} is not a smooth irreducible fiber")
    (c,) = config.ids
    if config.curve(c).fiber_mult != 1:
        raise PreconditionError(f"fiber {fiber_label!r} is already multiple")
    first = blow_up_on_curve(config, c)
    e1 = first.curves[-1].id
    second = blow_up_on_edge(first, c, e1)
    out = model.with_fiber(fiber_label, second, [])
    out = contract_ade(out, fiber_label, [c])
    return contract_ade(out, fiber_label, [e1])
