"""Brute-force verification of the fiber propositions at bounded depth.

All fibers reachable from a smooth fiber by a bounded number of point
blow-ups are enumerated up to labeled isomorphism.  Each one is checked for
the (-2)-adjacency bound on exceptional curves, for Zariski's lemma, and,
over every way of contracting all but one curve to Du Val points, for the
table of non-reduced Mori fibers.  The reports state the depth they cover;
nothing is claimed beyond it.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import networkx as nx

from . import birational
from .curves import (
    Configuration,
    SurfaceModel,
    canonical_hash,
    dual_graph,
    generic_fiber,
    is_isomorphic,
    natural_key,
    validate,
)
from .errors import ClassificationError
from .mmp import classify_mori_fiber
from .script import ConstructionScript, Op, apply_op
from .singularities import (
    classify_ade,
    intersection_on_singular,
    k_degree_on_singular,
    make_singular_point,
)

MAX_DEPTH = 8
DEFAULT_DEPTH = 5
ROOT = "C"


@dataclass(frozen=True)
class Enumerated:
    config: Configuration
    log: tuple[str, ...]
    exceptional: tuple[str, ...]

    @property
    def level(self) -> int:
        return len(self.log)


def _children(item: Enumerated) -> Iterator[Enumerated]:
    config = item.config
    for cid in config.sorted_ids():
        child = birational.blow_up_on_curve(config, cid)
        new = child.curves[-1].id
        yield Enumerated(child, item.log + (f"blowup_curve {cid}",), item.exceptional + (new,))
    for pair in sorted(config.edges, key=lambda p: sorted(map(natural_key, p))):
        c, d = sorted(pair, key=natural_key)
        child = birational.blow_up_on_edge(config, c, d)
        new = child.curves[-1].id
        yield Enumerated(child, item.log + (f"blowup_edge {c} {d}",), item.exceptional + (new,))


def enumerate_blowup_sequences(depth: int) -> Iterator[Enumerated]:
    """Yield every fiber reachable by exactly k blow-ups, for k = 0..depth.

    Fibers at the same level are deduplicated up to labeled isomorphism; the
    first one found (in a fixed order) is kept together with its history.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if depth > MAX_DEPTH:
        raise ValueError(f"depth is capped at {MAX_DEPTH}")
    level = [Enumerated(generic_fiber("z", ROOT), (), ())]
    yield from level
    for _ in range(depth):
        buckets: dict[str, list[Enumerated]] = {}
        nxt: list[Enumerated] = []
        for item in level:
            for child in _children(item):
                key = canonical_hash(child.config)
                bucket = buckets.setdefault(key, [])
                if any(is_isomorphic(child.config, other.config) for other in bucket):
                    continue
                bucket.append(child)
                nxt.append(child)
        level = nxt
        yield from level


def count_by_level(depth: int) -> list[int]:
    counts = [0] * (depth + 1)
    for item in enumerate_blowup_sequences(depth):
        counts[item.level] += 1
    return counts


@dataclass
class Report:
    name: str
    depth: int
    checked: int = 0
    violations: list[dict] = field(default_factory=list)
    seen: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.violations

    def flag(self, item: Enumerated | None, detail: str, **extra) -> None:
        record = {"detail": detail, **extra}
        if item is not None:
            record["history"] = list(item.log)
        self.violations.append(record)

    def to_record(self) -> dict:
        return {
            "check": self.name,
            "depth": self.depth,
            "scope": f"all blow-up sequences of length <= {self.depth} from a smooth fiber",
            "checked": self.checked,
            "violations": self.violations,
            "seen": {str(k): v for k, v in sorted(self.seen.items(), key=lambda kv: str(kv[0]))},
            "ok": self.ok,
        }


def chain_adjacency_violations(config: Configuration, exceptional: Iterable[str]) -> list[str]:
    """Exceptional (-2)-curves meeting three or more other exceptional (-2)-curves."""
    exc = set(exceptional)
    minus_two = {cid for cid in exc if config.curve(cid).self_int == -2}
    bad = []
    for cid in sorted(minus_two, key=natural_key):
        if len([n for n in config.neighbors(cid) if n in minus_two]) > 2:
            bad.append(cid)
    return bad


def verify_chain_adjacency(depth: int, items: Iterable[Enumerated] | None = None) -> Report:
    report = Report("chain_adjacency", depth)
    for item in enumerate_blowup_sequences(depth) if items is None else items:
        report.checked += 1
        for cid in chain_adjacency_violations(item.config, item.exceptional):
            report.flag(item, f"(-2)-curve {cid} meets more than 2 exceptional (-2)-curves", curve=cid)
    return report


def mori_models(config: Configuration) -> Iterator[SurfaceModel]:
    """Every singular model in which ``config`` becomes an irreducible fiber.

    One curve survives; the others must all be contracted to Du Val points,
    one per connected component.
    """
    label = config.base_label
    for support in config.sorted_ids():
        rest = [cid for cid in config.sorted_ids() if cid != support]
        if any(config.curve(cid).self_int != -2 or config.curve(cid).k_deg != 0 for cid in rest):
            continue
        comps = [sorted(c, key=natural_key) for c in nx.connected_components(dual_graph(config, rest))]
        if any(classify_ade(config, comp) is None for comp in comps):
            continue
        points = sorted((make_singular_point(config, comp) for comp in comps), key=lambda p: natural_key(p.contracted_ids[0]))
        yield SurfaceModel((label,), {label: config}, {label: tuple(points)})


def _check_mori_fiber(model: SurfaceModel, item: Enumerated, table: Report, mumford: Report) -> None:
    label = model.marked_points[0]
    (support,) = model.surviving_ids(label)
    config = model.fiber(label)
    mult = config.curve(support).fiber_mult
    points = model.singular_points(label)
    types = sorted(str(p.ade_type) for p in points)
    table.checked += 1
    if mult > 2:
        table.flag(item, f"support {support} has multiplicity {mult}", rule="multiplicity")
    if len(points) > 2:
        table.flag(item, f"{len(points)} singular points on one fiber", rule="singular_count")
    if len(points) == 2 and types != ["A1", "A1"]:
        table.flag(item, f"two singular points of types {types}", rule="two_points_A1")
    if len(points) == 1 and not (types[0] == "A3" or types[0].startswith("D")):
        table.flag(item, f"single singular point of type {types[0]}", rule="one_point_D")
    try:
        kind = classify_mori_fiber(model, label)
    except ClassificationError as exc:
        table.flag(item, str(exc), rule="table")
    else:
        table.seen[str(kind)] += 1
    if points:
        mumford.checked += 1
        c2 = intersection_on_singular(model, label, support, support)
        kc = k_degree_on_singular(model, label, support)
        if c2 != 0 or kc * mult != -2 or (mult == 2 and kc != -1):
            mumford.flag(item, f"support {support}: C^2={c2}, K.C={kc}, mult={mult}")
        mumford.seen["C^2=0, K.C=-1"] += c2 == Fraction(0) and kc == -1


def verify_fiber_table(depth: int, items: Iterable[Enumerated] | None = None) -> Report:
    return run_suite(depth, items)["fiber_table"]


def run_suite(depth: int = DEFAULT_DEPTH, items: Iterable[Enumerated] | None = None) -> dict[str, Report]:
    """Run every bounded-depth check over one shared enumeration."""
    items = list(enumerate_blowup_sequences(depth) if items is None else items)
    zariski = Report("zariski", depth)
    table = Report("fiber_table", depth)
    mumford = Report("mumford", depth)
    for item in items:
        zariski.checked += 1
        for v in validate(item.config, snc=True):
            zariski.flag(item, v.detail, rule=v.check)
        for model in mori_models(item.config):
            _check_mori_fiber(model, item, table, mumford)
    chain = verify_chain_adjacency(depth, items)
    levels = Report("enumeration", depth)
    levels.checked = len(items)
    for i in items:
        levels.seen[f"level {i.level}"] += 1
    return {"enumeration": levels, "chain_adjacency": chain, "zariski": zariski, "fiber_table": table, "mumford": mumford}


def _bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def negative_definite_bruteforce(matrix: Sequence[Sequence[int]]) -> bool:
    """Independent negative-definiteness test: fraction-free determinant of every leading block."""
    n = len(matrix)
    if n > 12:
        raise ValueError("brute-force check is limited to 12x12")
    for k in range(1, n + 1):
        d = _bareiss_det([row[:k] for row in matrix[:k]])
        if d == 0 or (d > 0) != (k % 2 == 0):
            return False
    return True


# --- random constructions ----------------------------------------------------


@dataclass(frozen=True)
class RandomConstruction:
    script: ConstructionScript
    stage: int  # number of ops that build the Mori fiber model

    @property
    def stage_script(self) -> ConstructionScript:
        return self.script.prefix(self.stage)


def random_construction(
    seed: int,
    r_range: tuple[int, int] = (4, 6),
    max_transforms: int = 3,
    max_blowups: int = 4,
    max_reduced: int = 2,
) -> RandomConstruction:
    """A seeded construction: non-reduced fibers, then blow-ups, then (-2)-chain contractions."""
    rng = random.Random(seed)
    r = rng.randint(*r_range)
    multiple = [f"q{i}" for i in range(1, r + 1)]
    reduced = [f"p{i}" for i in range(1, rng.randint(0, max_reduced) + 1)]
    ops = [Op("ruled"), Op("mark", tuple(multiple + reduced))]
    model = None
    for op in ops:
        model = apply_op(model, op)

    def push(op: Op) -> None:
        nonlocal model
        model = apply_op(model, op)
        ops.append(op)

    for q in multiple:
        push(Op("make_nonreduced", (q,)))
        for _ in range(rng.randint(0, max_transforms)):
            push(Op("elem_transform", (q, birational.strict_support(model, q))))
    stage = len(ops)

    for q in multiple + reduced:
        new: list[str] = []
        for _ in range(rng.randint(0, max_blowups)):
            config = model.fiber(q)
            alive = set(model.surviving_ids(q))
            choices = [("blowup_curve", (q, cid)) for cid in sorted(alive, key=natural_key)]
            choices += [
                ("blowup_edge", (q,) + tuple(sorted(pair, key=natural_key)))
                for pair in sorted(config.edges, key=lambda p: sorted(map(natural_key, p)))
                if pair <= alive
            ]
            kind, args = rng.choice(choices)
            push(Op(kind, args))
            new.append(model.fiber(q).curves[-1].id)
        config = model.fiber(q)
        minus_two = [cid for cid in new if config.curve(cid).self_int == -2]
        chosen = [cid for cid in minus_two if rng.random() < 0.7]
        for comp in nx.connected_components(dual_graph(config, chosen)):
            comp = sorted(comp, key=natural_key)
            if classify_ade(config, comp) is not None:
                push(Op("contract", (q,) + tuple(comp)))
    return RandomConstruction(ConstructionScript(tuple(ops)), stage)
