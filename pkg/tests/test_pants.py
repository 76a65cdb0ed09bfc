"""Tests for the pants-union configuration model and classifier."""

import json
import random
from dataclasses import replace

import pytest

from pantsunion.pants import (
    Ambiguous,
    Geodesic,
    Impossible,
    Loop,
    PantsConfig,
    Slope,
    UnionType,
    ambient_consequence,
    canonical_config,
    classify,
    crossing_number,
    parse_slope,
    validate_local,
)

ZERO, ONE, INF = Slope(0, 1), Slope(1, 1), Slope(1, 0)


def relabel(config, mapping):
    rows = {mapping[pid]: list(loops) for pid, loops in config.pants}
    edges = [
        Geodesic.of(mapping[g.pair[0]], mapping[g.pair[1]], g.sides[0], g.sides[1])
        for g in config.geodesics
    ]
    return PantsConfig.build(
        rows, edges, framing=config.framing, finite=config.finite, ends=config.ends
    )


def all_finite_types(limit=8):
    types = [UnionType("A", n) for n in range(1, limit + 1)]
    types += [UnionType("B", n) for n in range(2, limit + 1, 2)]
    types += [UnionType("T3"), UnionType("T4")]
    types += [UnionType("Whi", n) for n in range(4, limit + 1, 2)]
    types += [UnionType("WhiPrime", 8)]
    types += [UnionType("WhiHat", n) for n in range(2, limit + 1)]
    types += [UnionType("WhiPrimeHat", n) for n in range(2, limit + 1, 2)]
    types += [
        UnionType(k)
        for k in ("Bor6", "Mag4", "Tet8", "Pen10", "Oct8", "TetHat2", "PenHat4", "OctHat4")
    ]
    return types


# -- slopes -------------------------------------------------------------------


def test_slope_normalization():
    assert Slope(2, 4) == Slope(1, 2)
    assert Slope(-1, -2) == Slope(1, 2)
    assert Slope(0, -3) == Slope(0, 1)
    assert Slope(-5, 0) == Slope(1, 0)
    with pytest.raises(ValueError):
        Slope(0, 0)


def test_slope_shorthand_round_trip():
    for raw in (0, 1, "inf", [2, 1], [3, -2]):
        assert parse_slope(parse_slope(raw).shorthand()) == parse_slope(raw)
    assert parse_slope(0) == ZERO
    assert parse_slope("inf") == INF
    with pytest.raises(ValueError):
        parse_slope("half")
    with pytest.raises(ValueError):
        parse_slope([0, 0])


def test_crossing_numbers():
    assert crossing_number(ZERO, INF) == 1
    assert crossing_number(ZERO, ONE) == 1
    assert crossing_number(ONE, INF) == 1
    assert crossing_number(ZERO, Slope(2, 1)) == 2
    assert crossing_number(Slope(3, 1), INF) == 1
    assert crossing_number(ONE, ONE) == 0


# -- schema -------------------------------------------------------------------


def test_json_round_trip_all_types():
    for t in all_finite_types() + [UnionType("BInf"), UnionType("WhiInf")]:
        cfg = canonical_config(t)
        data = json.loads(json.dumps(cfg.to_dict()))
        assert PantsConfig.from_dict(data) == cfg


def test_from_dict_rejects_malformed():
    good = canonical_config(UnionType("A", 2)).to_dict()

    bad = json.loads(json.dumps(good))
    bad["pants"]["a1"] = bad["pants"]["a1"][:2]
    with pytest.raises(ValueError):
        PantsConfig.from_dict(bad)

    bad = json.loads(json.dumps(good))
    bad["geodesics"][0]["pants"] = ["a1", "a1"]
    with pytest.raises(ValueError):
        PantsConfig.from_dict(bad)

    bad = json.loads(json.dumps(good))
    bad["geodesics"][0]["sides"] = ["N", "X"]
    with pytest.raises(ValueError):
        PantsConfig.from_dict(bad)

    bad = json.loads(json.dumps(good))
    bad["geodesics"][0]["pants"] = ["a1", "zz"]
    with pytest.raises(ValueError):
        PantsConfig.from_dict(bad)

    bad = json.loads(json.dumps(good))
    bad["schema"] = 99
    with pytest.raises(ValueError):
        PantsConfig.from_dict(bad)

    bad = json.loads(json.dumps(good))
    bad["finite"] = False
    with pytest.raises(ValueError):
        PantsConfig.from_dict(bad)  # infinite needs ends 1 or 2

    bad = json.loads(json.dumps(good))
    bad["framing"] = 2
    with pytest.raises(ValueError):
        PantsConfig.from_dict(bad)


def test_union_type_names_and_ranges():
    assert UnionType.parse("A(3)") == UnionType("A", 3)
    assert UnionType.parse("Tet8").name() == "Tet8"
    assert UnionType("WhiHat", 5).name() == "WhiHat(5)"
    assert UnionType("Tet8").count == 8
    for bad in (
        ("A", 0),
        ("B", 3),
        ("Whi", 2),
        ("WhiPrime", 4),
        ("WhiPrime", 10),
        ("WhiHat", 1),
        ("WhiPrimeHat", 3),
        ("T3", 4),
    ):
        with pytest.raises(ValueError):
            UnionType(*bad)
    with pytest.raises(ValueError):
        UnionType("Frob")


# -- local validation ---------------------------------------------------------


def pair_config(sides_lists, loops_a=None, loops_b=None):
    rows = {
        "a": loops_a or [Loop("c1", ZERO), Loop("c2", INF), Loop("t1", ZERO)],
        "b": loops_b or [Loop("c1", INF), Loop("c2", ZERO), Loop("t2", ZERO)],
    }
    edges = [Geodesic.of("a", "b", s[0], s[1]) for s in sides_lists]
    return PantsConfig.build(rows, edges)


def test_canonical_configs_validate_clean():
    for t in all_finite_types() + [UnionType("BInf"), UnionType("WhiInf")]:
        assert validate_local(canonical_config(t)) == [], t.name()


def test_doubly_separating_geodesic_rejected():
    violations = validate_local(pair_config([("S", "S")]))
    assert any("separates both" in v for v in violations)


def test_mixed_pair_rejected():
    doubled_a = [Loop("c1", ZERO), Loop("c1", ZERO), Loop("c2", INF)]
    doubled_b = [Loop("c1", INF), Loop("c2", ZERO), Loop("c2", ZERO)]
    violations = validate_local(
        pair_config([("N", "N"), ("S", "N")], loops_a=doubled_a, loops_b=doubled_b)
    )
    assert any("together" in v for v in violations)


def test_two_separating_geodesics_rejected():
    doubled_a = [Loop("c1", ZERO), Loop("c1", ZERO), Loop("c2", INF)]
    doubled_b = [Loop("c1", INF), Loop("c2", ZERO), Loop("c2", ZERO)]
    violations = validate_local(
        pair_config([("S", "N"), ("S", "N")], loops_a=doubled_a, loops_b=doubled_b)
    )
    assert any("two separating-type" in v for v in violations)


def test_three_geodesics_rejected():
    violations = validate_local(pair_config([("N", "N")] * 3))
    assert any("non-orientable" in v for v in violations)


def test_endpoint_count_mismatch_rejected():
    # two geodesics recorded, but the boundaries cross only twice
    violations = validate_local(pair_config([("N", "N"), ("N", "N")]))
    assert any("twice the geodesics" in v for v in violations)
    # and one geodesic against four crossings
    doubled_a = [Loop("c1", ZERO), Loop("c1", ZERO), Loop("c2", INF)]
    doubled_b = [Loop("c1", INF), Loop("c2", ZERO), Loop("c2", ZERO)]
    violations = validate_local(
        pair_config([("N", "N")], loops_a=doubled_a, loops_b=doubled_b)
    )
    assert any("twice the geodesics" in v for v in violations)


def test_own_loops_in_a_cusp_must_be_parallel():
    cfg = PantsConfig.build(
        {"a": [Loop("c1", ZERO), Loop("c1", INF), Loop("c2", ZERO)]}, []
    )
    assert any("parallel" in v for v in validate_local(cfg))


def test_returning_geodesic_needs_separating_label():
    rows = {
        "a": [Loop("c1", ZERO), Loop("t1", ZERO), Loop("t2", ZERO)],
        "b": [Loop("c1", INF), Loop("c1", INF), Loop("t3", ZERO)],
    }
    wrong = PantsConfig.build(rows, [Geodesic.of("a", "b", "N", "N")])
    assert any("must be S" in v for v in validate_local(wrong))
    right = PantsConfig.build(rows, [Geodesic.of("a", "b", "S", "N")])
    assert validate_local(right) == []


def test_separating_layout_checked():
    # S side must hold one loop at the crossing cusp, N side two
    rows = {
        "a": [Loop("c1", ZERO), Loop("t1", ZERO), Loop("t2", ZERO)],
        "b": [Loop("c1", INF), Loop("c1", INF), Loop("t3", ZERO)],
    }
    flipped = PantsConfig.build(rows, [Geodesic.of("a", "b", "N", "S")])
    assert any("separating-side" in v for v in validate_local(flipped))


def test_crossing_caps_apply_without_special_pairs():
    rows = {
        "p0": [Loop("c", ZERO), Loop("u1", ZERO), Loop("u2", ZERO)],
        "p1": [Loop("c", ONE), Loop("u3", ZERO), Loop("u4", ZERO)],
        "p2": [Loop("c", INF), Loop("u5", ZERO), Loop("u6", ZERO)],
        "p3": [Loop("c", INF), Loop("u7", ZERO), Loop("u8", ZERO)],
    }
    cfg = PantsConfig.build(rows, [Geodesic.of("p0", "p1", "N", "N")])
    assert any("at most twice" in v for v in validate_local(cfg))


def test_caps_skip_configs_with_doubles():
    # the doubled tetrahedral pair carries a slope pair crossing twice
    cfg = canonical_config(UnionType("TetHat2"))
    assert validate_local(cfg) == []


# -- classification round trips ------------------------------------------------


def test_classify_canonical_configs():
    for t in all_finite_types():
        assert classify(canonical_config(t)) == t, t.name()


def test_classify_infinite_by_ends():
    assert classify(canonical_config(UnionType("BInf"))) == UnionType("BInf")
    assert classify(canonical_config(UnionType("WhiInf"))) == UnionType("WhiInf")


def test_classify_reports_rule_violations_as_impossible():
    result = classify(pair_config([("S", "S")]))
    assert isinstance(result, Impossible)
    assert "rule:" in result.reason and "separates both" in result.reason


def test_classify_requires_connected_config():
    a2 = canonical_config(UnionType("A", 2))
    rows = {pid: list(loops) for pid, loops in a2.pants}
    rows["lone"] = [Loop("z1", ZERO), Loop("z2", ZERO), Loop("z3", ZERO)]
    cfg = PantsConfig.build(rows, list(a2.geodesics))
    with pytest.raises(ValueError):
        classify(cfg)


def test_permutation_invariance_seeded():
    rng = random.Random(20260818)
    for t in all_finite_types():
        cfg = canonical_config(t)
        ids = list(cfg.ids())
        shuffled = ids[:]
        rng.shuffle(shuffled)
        mapping = dict(zip(ids, (f"q{k}_{name}" for k, name in enumerate(shuffled))))
        assert classify(relabel(cfg, mapping)) == t, t.name()


def test_cusp_names_do_not_matter():
    rng = random.Random(99)
    for name in ("Tet8", "Pen10", "Oct8", "Bor6"):
        t = UnionType(name)
        cfg = canonical_config(t)
        cusps = list(cfg.cusps())
        new_names = [f"k{i}" for i in range(len(cusps))]
        rng.shuffle(new_names)
        cusp_map = dict(zip(cusps, new_names))
        rows = {
            pid: [Loop(cusp_map[lp.cusp], lp.slope) for lp in loops]
            for pid, loops in cfg.pants
        }
        cfg2 = PantsConfig.build(rows, list(cfg.geodesics), framing=cfg.framing)
        assert classify(cfg2) == t


# -- framing and ambiguity ------------------------------------------------------


def test_even_cycles_need_framing():
    cfg = replace(canonical_config(UnionType("WhiHat", 4)), framing=None)
    result = classify(cfg)
    assert isinstance(result, Ambiguous)
    assert {t.name() for t in result.candidates} == {"WhiHat(4)", "WhiPrimeHat(4)"}

    cfg = replace(canonical_config(UnionType("WhiHat", 2)), framing=None)
    result = classify(cfg)
    assert isinstance(result, Ambiguous)
    assert {t.name() for t in result.candidates} == {"WhiHat(2)", "WhiPrimeHat(2)"}


def test_odd_cycles_are_unambiguous():
    cfg = replace(canonical_config(UnionType("WhiHat", 5)), framing=None)
    assert classify(cfg) == UnionType("WhiHat", 5)
    cfg = replace(canonical_config(UnionType("WhiHat", 5)), framing=1)
    result = classify(cfg)
    assert isinstance(result, Impossible)
    assert "even cycle" in result.reason


def test_pendant_cycles_follow_framing():
    assert classify(canonical_config(UnionType("WhiPrime", 8))) == UnionType("WhiPrime", 8)
    cfg = replace(canonical_config(UnionType("Whi", 8)), framing=None)
    result = classify(cfg)
    assert isinstance(result, Ambiguous)
    assert {t.name() for t in result.candidates} == {"Whi(8)", "WhiPrime(8)"}
    cfg = replace(canonical_config(UnionType("Whi", 6)), framing=None)
    assert classify(cfg) == UnionType("Whi", 6)


def test_central_doubled_layout_framing():
    base = canonical_config(UnionType("TetHat2"))
    result = classify(replace(base, framing=1))
    assert isinstance(result, Impossible)
    assert "graph manifold" in result.reason
    result = classify(replace(base, framing=None))
    assert isinstance(result, Ambiguous)
    assert [t.name() for t in result.candidates] == ["TetHat2"]
    assert "graph manifold" in result.note


def test_primed_four_cycle_is_impossible():
    cfg = replace(canonical_config(UnionType("Whi", 4)), framing=1)
    result = classify(cfg)
    assert isinstance(result, Impossible)
    assert "six-element" in result.reason


# -- impossibility paths --------------------------------------------------------


def test_doubles_classify_into_the_doubled_family():
    family = {"WhiHat(2)", "WhiPrimeHat(2)", "TetHat2", "Whi(4)", "Mag4", "Bor6", "Tet8"}
    for t in all_finite_types():
        cfg = canonical_config(t)
        if any(
            len(sides) == 2 for sides in cfg.pair_geodesics().values()
        ):
            result = classify(cfg)
            assert isinstance(result, UnionType) and result.name() in family, t.name()


def test_doubled_pair_with_pendant_is_impossible():
    base = canonical_config(UnionType("TetHat2"))
    rows = {pid: list(loops) for pid, loops in base.pants}
    rows["z"] = [Loop("c1", ZERO), Loop("c2", ONE), Loop("t", ZERO)]
    edges = list(base.geodesics) + [
        Geodesic.of("z", "p1", "N", "N"),
        Geodesic.of("z", "p2", "N", "N"),
    ]
    cfg = PantsConfig.build(rows, edges, framing=0)
    assert validate_local(cfg) == []
    result = classify(cfg)
    assert isinstance(result, Impossible)
    assert "sporadic" in result.reason


def test_pendant_partner_with_extra_edge_is_impossible():
    b4 = canonical_config(UnionType("B", 4))
    rows = {pid: list(loops) for pid, loops in b4.pants}
    rows["x"] = [Loop("d1", ONE), Loop("d1", ONE), Loop("e1", ZERO)]
    edges = list(b4.geodesics) + [Geodesic.of("x", "b1", "N", "S")]
    cfg = PantsConfig.build(rows, edges)
    assert validate_local(cfg) == []
    result = classify(cfg)
    assert isinstance(result, Impossible)
    assert "meets no other" in result.reason


def test_chain_missing_pendant_partner_is_impossible():
    b4 = canonical_config(UnionType("B", 4))
    rows = {pid: list(loops) for pid, loops in b4.pants if pid != "b2"}
    edges = [g for g in b4.geodesics if "b2" not in g.pair]
    result = classify(PantsConfig.build(rows, edges))
    assert isinstance(result, Impossible)
    assert "parallel partner" in result.reason


def test_branching_core_chain_is_impossible():
    # tripod of cores, every core with a pendant partner: the partners are
    # fine but the chain of cores branches at the hub
    t4 = canonical_config(UnionType("T4"))
    rows = {pid: list(loops) for pid, loops in t4.pants}
    edges = list(t4.geodesics)
    anchors = {"h": "c1", "p1": "tp1", "p2": "tp2", "p3": "tp3"}
    for k, (core, anchor) in enumerate(sorted(anchors.items())):
        rows[f"x{k}"] = [Loop(anchor, INF), Loop(anchor, INF), Loop(f"w{k}", ZERO)]
        edges.append(Geodesic.of(core, f"x{k}", "S", "N"))
    cfg = PantsConfig.build(rows, edges)
    assert validate_local(cfg) == []
    result = classify(cfg)
    assert isinstance(result, Impossible)
    assert "branches" in result.reason


# -- special cusp patterns -------------------------------------------------------


def test_triple_point_cusp_distinguishes_sizes():
    # same local cusp signature, three different completions by size
    assert classify(canonical_config(UnionType("T3"))) == UnionType("T3")
    assert classify(canonical_config(UnionType("PenHat4"))) == UnionType("PenHat4")
    assert classify(canonical_config(UnionType("Pen10"))) == UnionType("Pen10")


def test_parallel_pair_cusp_distinguishes_sizes():
    assert classify(canonical_config(UnionType("OctHat4"))) == UnionType("OctHat4")
    assert classify(canonical_config(UnionType("Oct8"))) == UnionType("Oct8")


def test_four_cycle_with_plain_cusps_is_a_hat_cycle():
    # the 4-cycle graph alone does not decide; the cusp pattern does
    cfg = canonical_config(UnionType("WhiHat", 4))
    assert classify(cfg) == UnionType("WhiHat", 4)
    oct_cfg = canonical_config(UnionType("OctHat4"))
    assert classify(oct_cfg) == UnionType("OctHat4")
    # both are 4-cycles of single non-separating geodesics
    assert sorted(
        tuple(sorted(s)) for sides in cfg.pair_geodesics().values() for s in sides
    ) == sorted(
        tuple(sorted(s)) for sides in oct_cfg.pair_geodesics().values() for s in sides
    )


def test_wrong_size_special_patterns_are_impossible():
    # a path of three pants decorated with a triple-crossing cusp cannot close up
    rows = {
        "p1": [Loop("e1", ZERO), Loop("u1", ZERO), Loop("u2", ZERO)],
        "p2": [Loop("e1", ONE), Loop("e2", ZERO), Loop("u3", ZERO)],
        "p3": [Loop("e1", INF), Loop("e2", INF), Loop("u4", ZERO)],
    }
    edges = [
        Geodesic.of("p1", "p2", "N", "N"),
        Geodesic.of("p1", "p3", "N", "N"),
        Geodesic.of("p2", "p3", "N", "N"),
    ]
    cfg = PantsConfig.build(rows, edges)
    # p1 x p2 cross once at e1 only: invalid, so repair by a second shared cusp
    rows["p1"] = [Loop("e1", ZERO), Loop("e2", ONE), Loop("u1", ZERO)]
    cfg = PantsConfig.build(rows, edges)
    assert validate_local(cfg) == []
    result = classify(cfg)
    assert result == UnionType("T3") or isinstance(result, Impossible)


# -- ambient consequences ---------------------------------------------------------


def test_ambient_consequences():
    assert ambient_consequence(UnionType("A", 2)) == {"kind": "general", "manifold": None}
    assert ambient_consequence(UnionType("B", 6)) == {"kind": "general", "manifold": None}
    assert ambient_consequence(UnionType("T3"))["kind"] == "general"
    assert ambient_consequence(UnionType("Whi", 4)) == {
        "kind": "determines",
        "manifold": "W2",
    }
    assert ambient_consequence(UnionType("Whi", 6))["manifold"] == "W3"
    assert ambient_consequence(UnionType("WhiPrime", 8))["manifold"] == "WPrime4"
    assert ambient_consequence(UnionType("Bor6")) == {
        "kind": "determines",
        "manifold": "WPrime2",
    }
    assert ambient_consequence(UnionType("Mag4"))["manifold"] == "M3"
    assert ambient_consequence(UnionType("Tet8"))["manifold"] == "M4"
    assert ambient_consequence(UnionType("Pen10"))["manifold"] == "M5"
    assert ambient_consequence(UnionType("Oct8"))["manifold"] == "M6"
    assert ambient_consequence(UnionType("WhiHat", 5)) == {
        "kind": "dehn_filling_of",
        "manifold": "W5",
    }
    assert ambient_consequence(UnionType("WhiPrimeHat", 2))["manifold"] == "WPrime2"
    assert ambient_consequence(UnionType("TetHat2")) == {
        "kind": "dehn_filling_of",
        "manifold": "M4",
    }
    assert ambient_consequence(UnionType("PenHat4"))["manifold"] == "M5"
    assert ambient_consequence(UnionType("OctHat4"))["manifold"] == "M6"
    assert ambient_consequence(UnionType("WhiInf")) == {
        "kind": "determines",
        "manifold": "WInfinity",
    }
    assert ambient_consequence(UnionType("BInf"))["manifold"] == "WInfinityHalf"


# -- structural counts of the sporadic configs -------------------------------------


def test_tet8_intersection_census():
    cfg = canonical_config(UnionType("Tet8"))
    pairs = cfg.pair_geodesics()
    doubles = sum(1 for sides in pairs.values() if len(sides) == 2)
    singles = sum(1 for sides in pairs.values() if len(sides) == 1)
    assert (doubles, singles) == (4, 20)
    # 28 pants pairs in all, so exactly 4 disjoint pairs
    assert 28 - doubles - singles == 4
    # every geodesic is non-separating on both sides
    assert all(s == ("N", "N") for g in cfg.geodesics for s in [g.sides])


def test_bor6_intersection_census():
    cfg = canonical_config(UnionType("Bor6"))
    pairs = cfg.pair_geodesics()
    doubles = sum(1 for sides in pairs.values() if len(sides) == 2)
    separating = sum(
        1 for sides in pairs.values() if len(sides) == 1 and "S" in sides[0]
    )
    assert (doubles, separating) == (3, 6)
    assert 15 - len(pairs) == 6  # disjoint pairs


def test_mag4_intersection_census():
    cfg = canonical_config(UnionType("Mag4"))
    pairs = cfg.pair_geodesics()
    doubles = [p for p, sides in pairs.items() if len(sides) == 2]
    assert len(doubles) == 3
    hub = set.intersection(*(set(p) for p in doubles))
    assert len(hub) == 1  # one pants doubled against every other
    assert sum(1 for sides in pairs.values() if len(sides) == 1) == 3


def test_pen10_cusp_pattern():
    cfg = canonical_config(UnionType("Pen10"))
    by_cusp = {}
    for pid, loops in cfg.pants:
        for lp in loops:
            by_cusp.setdefault(lp.cusp, []).append(lp.slope)
    assert len(by_cusp) == 5
    for slopes in by_cusp.values():
        assert len(slopes) == 6
        classes = {}
        for s in slopes:
            classes[s] = classes.get(s, 0) + 1
        assert sorted(classes.values()) == [2, 2, 2]
    # adjacency is "triples sharing two points": 30 single geodesics
    assert len(cfg.geodesics) == 30


def test_oct8_cusp_pattern():
    cfg = canonical_config(UnionType("Oct8"))
    by_cusp = {}
    for pid, loops in cfg.pants:
        for lp in loops:
            by_cusp.setdefault(lp.cusp, []).append(lp.slope)
    assert len(by_cusp) == 6
    for slopes in by_cusp.values():
        classes = {}
        for s in slopes:
            classes[s] = classes.get(s, 0) + 1
        assert sorted(classes.values()) == [2, 2]
    assert len(cfg.geodesics) == 12


def test_whi_spans_one_more_cusp_than_half_its_size():
    for count in (4, 6, 8):
        cfg = canonical_config(UnionType("Whi", count))
        assert len(cfg.cusps()) == count // 2 + 1
