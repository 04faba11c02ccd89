"""End-to-end acceptance checks; each prints one PASS/FAIL line."""
import random
import time

from builders import a1a1_model

from fibersurf.birational import blow_down, blow_up_on_curve, blow_up_on_edge, elementary_transform, strict_support
from fibersurf.curves import A1A1, FiberType, generic_fiber, is_isomorphic, natural_key
from fibersurf.mmp import classify_mori_fiber, count_nonreduced, to_mori_fiber
from fibersurf.oracle import random_construction, run_suite
from fibersurf.pluriforms import (
    genus_cover,
    invariant_dim_identity,
    pluriform_dim,
    pluriform_dim_of_model,
)
from fibersurf.script import EXAMPLE_SCRIPT, parse_script, run_script


def test_criterion_1_four_point_example(record_criterion):
    start = time.perf_counter()
    model = run_script(parse_script(EXAMPLE_SCRIPT))
    mori, log = to_mori_fiber(model)
    types = [classify_mori_fiber(mori, q) for q in mori.marked_points]
    points = sum(len(mori.singular_points(q)) for q in mori.marked_points)
    a1 = all(str(p.ade_type) == "A1" for q in mori.marked_points for p in mori.singular_points(q))
    dims = tuple(pluriform_dim_of_model(model, m) for m in range(1, 7))
    elapsed = time.perf_counter() - start
    ok = types == [A1A1] * 4 and points == 8 and a1 and dims == (0, 1, 0, 1, 0, 1) and elapsed < 1
    record_criterion(1, "four A1A1 fibers, dims (0,1,0,1,0,1)", ok, f"dims={dims}, {elapsed:.3f}s")
    assert ok


def _expected(m, r):
    # monomials x^i y^(d-i), 0 <= i <= d, of degree d = -2m + [m/2] r
    d = -2 * m + (m // 2) * r
    return len(range(d + 1))


def test_criterion_2_dimension_table(record_criterion):
    table = {(m, r): pluriform_dim(m, r) for r in range(4, 11) for m in range(1, 11)}
    checks = [
        all(table[m, r] == _expected(m, r) for (m, r) in table),
        all(table[m, 4] == (1 if m % 2 == 0 else 0) for m in range(1, 11)),
        table[2, 5] == 2 and table[3, 5] == 0,
        all(table[m, 5] > 0 for m in range(4, 11)),
        all(table[m, r] > 0 for r in range(6, 11) for m in range(2, 11)),
    ]
    ok = all(checks)
    record_criterion(2, "dimension table 4<=r<=10, 1<=m<=10", ok, f"{len(table)} values")
    assert ok


def test_criterion_3_transitions(record_criterion):
    start = time.perf_counter()
    model = a1a1_model()
    seen = []
    for _ in range(8):
        model = elementary_transform(model, "q", strict_support(model, "q"))
        seen.append(classify_mori_fiber(model, "q"))
    elapsed = time.perf_counter() - start
    ok = seen == [FiberType.D(i) for i in range(3, 11)] and elapsed < 1
    record_criterion(3, "A1A1 -> D3 -> ... -> D10", ok, f"{' '.join(map(str, seen))}, {elapsed:.3f}s")
    assert ok


def test_criterion_4_mmp_round_trip(record_criterion):
    start = time.perf_counter()
    failures = []
    for seed in range(50):
        rc = random_construction(seed, r_range=(4, 6), max_blowups=4)
        full = run_script(rc.script)
        stage = run_script(rc.stage_script)
        mori, _ = to_mori_fiber(full)
        for q in stage.marked_points:
            same = is_isomorphic(mori.fiber(q), stage.fiber(q), mori.contracted_ids(q), stage.contracted_ids(q))
            types_match = sorted(p.ade_type for p in mori.singular_points(q)) == sorted(
                p.ade_type for p in stage.singular_points(q)
            )
            if not (same and types_match):
                failures.append((seed, q))
        if count_nonreduced(mori) != len([q for q in stage.marked_points if q.startswith("q")]):
            failures.append((seed, "r"))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10
    record_criterion(4, "50 seeded MMP round trips", ok, f"{len(failures)} mismatches, {elapsed:.2f}s")
    assert ok


_suite_cache = {}


def _suite():
    if not _suite_cache:
        start = time.perf_counter()
        _suite_cache["reports"] = run_suite(6)
        _suite_cache["elapsed"] = time.perf_counter() - start
    return _suite_cache["reports"], _suite_cache["elapsed"]


def test_criterion_5_oracle_depth_6(record_criterion):
    reports, elapsed = _suite()
    table = reports["fiber_table"]
    kinds = set(table.seen)
    allowed = {"Reduced", "A1A1"} | {f"D{i}" for i in range(3, 7)}
    bad = {name: len(r.violations) for name, r in reports.items() if not r.ok}
    ok = not bad and kinds <= allowed and elapsed < 60
    detail = f"{reports['enumeration'].checked} fibers, types {sorted(kinds, key=natural_key)}, {elapsed:.1f}s"
    record_criterion(5, "depth-6 oracle suite, zero violations", ok, detail + (f", violations {bad}" if bad else ""))
    assert ok


def test_criterion_6_mumford_values(record_criterion):
    reports, _ = _suite()
    mumford = reports["mumford"]
    agreeing = mumford.seen["C^2=0, K.C=-1"]
    ok = mumford.ok and mumford.checked > 0 and agreeing == mumford.checked
    record_criterion(6, "support C^2 = 0, K.C = -1 on every singular Mori fiber", ok, f"{agreeing}/{mumford.checked}")
    assert ok


def test_criterion_7_cover_numerics(record_criterion):
    sweep = [(r, m) for r in range(4, 13) for m in range(1, 9)]
    failing = [(r, m) for r, m in sweep if not invariant_dim_identity(r, m)]
    ok = genus_cover(4) == 1 and not failing
    record_criterion(7, "genus_cover(4) = 1 and identity over 4<=r<=12, 1<=m<=8", ok, f"{len(sweep)} pairs")
    assert ok


def test_criterion_8_inverse_pairs(record_criterion):
    rng = random.Random(20261014)
    mismatches = 0
    for _ in range(1000):
        config = generic_fiber()
        for _ in range(rng.randint(0, 6)):
            config = _random_blow_up(config, rng)
        up = _random_blow_up(config, rng)
        if blow_down(up, up.curves[-1].id) != config:
            mismatches += 1
    ok = mismatches == 0
    record_criterion(8, "1000 blow-up/blow-down round trips", ok, f"{mismatches} mismatches")
    assert ok


def _random_blow_up(config, rng):
    edges = sorted(config.edges, key=lambda p: sorted(map(natural_key, p)))
    if edges and rng.random() < 0.5:
        c, d = sorted(rng.choice(edges), key=natural_key)
        return blow_up_on_edge(config, c, d)
    return blow_up_on_curve(config, rng.choice(config.sorted_ids()))
