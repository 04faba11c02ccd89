import pytest
from builders import a1a1_config, a1a1_model, blow_ups, config_from, d_model, grow
from hypothesis import given, settings
from hypothesis import strategies as st

from fibersurf.birational import (
    blow_down,
    blow_up_model,
    blow_up_on_curve,
    blow_up_on_edge,
    elementary_transform,
    make_nonreduced,
    strict_support,
)
from fibersurf.curves import (
    SurfaceModel,
    fiber_cycle,
    generic_fiber,
    intersection_matrix,
    k_dot_fiber,
    natural_key,
    validate,
)
from fibersurf.errors import NoSuchEdgeError, NotContractibleError, PreconditionError
from fibersurf.linalg import matvec
from fibersurf.mmp import classify_mori_fiber


def data(config):
    return {c.id: (c.self_int, c.k_deg, c.fiber_mult) for c in config.curves}


def test_generic_blow_up():
    out = blow_up_on_curve(generic_fiber(), "C")
    assert data(out) == {"C": (-1, -1, 1), "E1": (-1, -1, 1)}
    assert out.edge("C", "E1") == 1


def test_step_two_graph():
    first = blow_up_on_curve(generic_fiber(), "C")
    second = blow_up_on_edge(first, "C", "E1")
    assert data(second) == {"C": (-2, 0, 1), "E1": (-2, 0, 1), "E2": (-1, -1, 2)}
    assert set(second.edges) == {frozenset(("C", "E2")), frozenset(("E1", "E2"))}
    assert k_dot_fiber(first) == k_dot_fiber(second) == -2
    cycle = fiber_cycle(second)
    assert matvec(intersection_matrix(second), cycle) == [0, 0, 0]


def test_blow_up_errors():
    with pytest.raises(NoSuchEdgeError):
        blow_up_on_edge(generic_fiber(), "C", "C")
    config = blow_up_on_curve(blow_up_on_curve(generic_fiber(), "C"), "C")
    with pytest.raises(NoSuchEdgeError):
        blow_up_on_edge(config, "E1", "E2")
    with pytest.raises(ValueError):
        blow_up_on_curve(config, "C", new_id="E1")


def test_heavy_edge_loses_one():
    config = config_from([("a", -1, -1, 1), ("b", -1, -1, 1)], [("a", "b", 2)])
    out = blow_up_on_edge(config, "a", "b")
    assert out.edge("a", "b") == 1
    assert out.curve("E1").fiber_mult == 2


def test_blow_down_chain():
    once = blow_down(a1a1_config(), "s")
    assert data(once) == {"a": (-1, -1, 1), "b": (-1, -1, 1)}
    assert once.edge("a", "b") == 1
    assert validate(once) == []
    twice = blow_down(once, "a")
    assert data(twice) == {"b": (0, -2, 1)}
    assert twice.edges == {}


def test_blow_down_refuses_non_exceptional():
    with pytest.raises(NotContractibleError):
        blow_down(a1a1_config(), "a")
    with pytest.raises(NotContractibleError):
        blow_down(generic_fiber(), "C")


def test_a1a1_model():
    model = a1a1_model()
    assert strict_support(model, "q") == "E2"
    assert sorted(str(p.ade_type) for p in model.singular_points("q")) == ["A1", "A1"]
    assert classify_mori_fiber(model, "q").kind == "A1A1"


def test_make_nonreduced_twice_fails():
    with pytest.raises(PreconditionError):
        make_nonreduced(a1a1_model(), "q")


@pytest.mark.parametrize("i", range(3, 10))
def test_transform_raises_rank(i):
    before = d_model(i)
    assert str(classify_mori_fiber(before, "q")) == f"D{i}"
    after = elementary_transform(before, "q", strict_support(before, "q"))
    assert str(classify_mori_fiber(after, "q")) == f"D{i + 1}"
    assert validate(after.fiber("q"), snc=True) == []


def test_first_transform_gives_d3():
    model = a1a1_model()
    out = elementary_transform(model, "q", "E2")
    (point,) = out.singular_points("q")
    assert str(point.ade_type) == "A3"
    assert str(classify_mori_fiber(out, "q")) == "D3"
    assert out.surviving_ids("q") == ["E3"]


def test_transform_on_reduced_fiber_fails():
    model = SurfaceModel.ruled(["p"])
    with pytest.raises(PreconditionError):
        elementary_transform(model, "p", "C")


def test_transform_on_contracted_curve_fails():
    with pytest.raises(PreconditionError):
        elementary_transform(a1a1_model(), "q", "C")


def test_blow_up_model_refuses_singular_points():
    model = a1a1_model()
    with pytest.raises(PreconditionError):
        blow_up_model(model, "q", "C")
    with pytest.raises(PreconditionError):
        blow_up_model(model, "q", "C", "E2")
    out = blow_up_model(model, "q", "E2")
    assert len(out.fiber("q")) == 4
    assert len(out.singular_points("q")) == 2


def _edge_choices(config):
    return [
        tuple(sorted(p, key=natural_key))
        for p in sorted(config.edges, key=lambda p: sorted(map(natural_key, p)))
    ]


@settings(max_examples=100, deadline=None)
@given(blow_ups, st.booleans(), st.integers(0, 40))
def test_blow_up_then_down_is_identity(steps, on_edge, pick):
    config = grow(steps)
    edges = _edge_choices(config)
    if on_edge and edges:
        c, d = edges[pick % len(edges)]
        up = blow_up_on_edge(config, c, d)
    else:
        ids = config.sorted_ids()
        up = blow_up_on_curve(config, ids[pick % len(ids)])
    assert len(up) == len(config) + 1
    assert blow_down(up, up.curves[-1].id) == config
