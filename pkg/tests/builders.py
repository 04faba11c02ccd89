"""Hand-built fibers shared by the tests."""
from __future__ import annotations

from hypothesis import strategies as st

from fibersurf.birational import (
    blow_up_on_curve,
    blow_up_on_edge,
    elementary_transform,
    make_nonreduced,
    strict_support,
)
from fibersurf.curves import Configuration, Curve, SurfaceModel, edge_key, generic_fiber, natural_key


def config_from(curves, edges, label="z") -> Configuration:
    """Build a configuration from ``(id, self, K, mult)`` tuples and ``(a, b[, w])`` edges."""
    cs = tuple(Curve(cid, s, k, 0, m) for cid, s, k, m in curves)
    es = {}
    for e in edges:
        a, b, *w = e
        es[edge_key(a, b)] = w[0] if w else 1
    return Configuration(cs, es, label)


def a1a1_config(label="z") -> Configuration:
    return config_from(
        [("s", -1, -1, 2), ("a", -2, 0, 1), ("b", -2, 0, 1)],
        [("s", "a"), ("s", "b")],
        label,
    )


def d3_config(label="z") -> Configuration:
    # chain 1 - s - 2 of (-2)-curves, support 3 meeting s
    return config_from(
        [("1", -2, 0, 1), ("2", -2, 0, 1), ("s", -2, 0, 2), ("3", -1, -1, 2)],
        [("1", "s"), ("2", "s"), ("s", "3")],
        label,
    )


def a1a1_model(label="q") -> SurfaceModel:
    return make_nonreduced(SurfaceModel.ruled([label]), label)


def d_model(i: int, label="q") -> SurfaceModel:
    model = a1a1_model(label)
    for _ in range(i - 2):
        model = elementary_transform(model, label, strict_support(model, label))
    return model


def example_model(labels=("q1", "q2", "q3", "q4")) -> SurfaceModel:
    model = SurfaceModel.ruled(labels)
    for q in labels:
        model = make_nonreduced(model, q)
    return model


# (on_edge, index) pairs; index is taken modulo the available choices
blow_ups = st.lists(st.tuples(st.booleans(), st.integers(0, 50)), max_size=7)


def grow(steps) -> Configuration:
    config = generic_fiber()
    for on_edge, pick in steps:
        if on_edge and config.edges:
            pairs = sorted(config.edges, key=lambda p: sorted(map(natural_key, p)))
            c, d = sorted(pairs[pick % len(pairs)], key=natural_key)
            config = blow_up_on_edge(config, c, d)
        else:
            ids = config.sorted_ids()
            config = blow_up_on_curve(config, ids[pick % len(ids)])
    return config
