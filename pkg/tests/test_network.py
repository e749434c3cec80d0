import random

import pytest

from oracles import oracle_all_path_signs
from stance_net.assertions import PolarityAssertion
from stance_net.errors import InputError
from stance_net.network import (
    EVENT,
    build_network,
    coverage_report,
    edge_record,
    network_from_record,
    network_to_record,
    partition,
    resolve_all,
    resolve_direct,
    resolve_path,
    to_dot,
)
from stance_net.targets import Target, TargetKind, TargetSet


def ts_of(*ids):
    return TargetSet(
        key_phrases=tuple(
            Target(id=i, kind=TargetKind.KEY_PHRASE, surface_forms=frozenset({i}))
            for i in ids
        ),
        key_players=(),
        threshold=0.0,
    )


def A(frm, to, sign):
    return PolarityAssertion(
        from_ref=frm, to_ref=to, sign=sign, doc="d0", sentence=0, rule="Simple"
    )


class TestBuildNetwork:
    def test_majority_with_conflict_flag(self):
        net = build_network(
            [A("a", EVENT, 1), A("a", EVENT, 1), A("a", EVENT, -1)], ts_of("a")
        )
        edge = net.edge_between("a", EVENT)
        assert edge.sign == 1
        assert edge.support == (2, 1)
        assert edge.conflicted

    def test_tie_drops_edge(self):
        net = build_network([A("a", "b", 1), A("a", "b", -1)], ts_of("a", "b"))
        assert net.edge_between("a", "b") is None
        assert net.dropped_pairs == [("a", "b")]

    def test_single_negative(self):
        net = build_network([A("a", EVENT, -1)], ts_of("a"))
        edge = net.edge_between("a", EVENT)
        assert edge.sign == -1 and edge.support == (0, 1) and not edge.conflicted

    def test_unknown_target_rejected(self):
        with pytest.raises(InputError, match="unknown target"):
            build_network([A("a", "ghost", 1)], ts_of("a"))

    def test_all_targets_become_nodes(self):
        net = build_network([A("a", EVENT, 1)], ts_of("a", "b", "c"))
        assert net.nodes == {"a", "b", "c", EVENT}
        assert net.edge_participants() == {"a"}


class TestResolveDirect:
    def test_direct_edge(self):
        net = resolve_direct(build_network([A("a", EVENT, 1)], ts_of("a")))
        assert net.resolved == {"a": 1}
        assert net.pass1_direct == {"a"}

    def test_enemy_of_friend(self):
        net = resolve_direct(
            build_network([A("a", EVENT, 1), A("b", "a", -1)], ts_of("a", "b"))
        )
        assert net.resolved["b"] == -1

    def test_enemy_of_enemy(self):
        net = resolve_direct(
            build_network(
                [A("a", EVENT, 1), A("b", "a", -1), A("c", "b", -1)],
                ts_of("a", "b", "c"),
            )
        )
        assert net.resolved["c"] == 1

    def test_conflicting_derivations_exclude_target(self):
        net = resolve_direct(
            build_network(
                [
                    A("a", EVENT, 1),
                    A("c", EVENT, -1),
                    A("h", "a", 1),
                    A("h", "c", 1),
                ],
                ts_of("a", "c", "h"),
            )
        )
        assert net.resolved == {"a": 1, "c": -1}
        assert "h" in net.unresolved
        assert len(net.contradictions) == 1

    def test_exclusion_blocks_downstream(self):
        net = resolve_direct(
            build_network(
                [
                    A("a", EVENT, 1),
                    A("c", EVENT, -1),
                    A("h", "a", 1),
                    A("h", "c", 1),
                    A("k", "h", 1),
                ],
                ts_of("a", "c", "h", "k"),
            )
        )
        assert "k" in net.unresolved

    def test_direct_edge_authoritative_over_derivation(self):
        net = resolve_direct(
            build_network(
                [A("a", EVENT, 1), A("b", EVENT, 1), A("a", "b", -1)],
                ts_of("a", "b"),
            )
        )
        assert net.resolved == {"a": 1, "b": 1}
        assert net.contradictions == []


class TestResolvePath:
    def test_two_negatives_positive(self):
        net = build_network(
            [A("t0", "t1", -1), A("t1", EVENT, -1)], ts_of("t0", "t1")
        )
        assert resolve_path(net, "t0") == 1

    def test_three_hop_mixed(self):
        net = build_network(
            [A("t0", "t1", 1), A("t1", "t2", -1), A("t2", EVENT, 1)],
            ts_of("t0", "t1", "t2"),
        )
        assert resolve_path(net, "t0") == -1

    def test_isolated_none(self):
        net = build_network([A("a", EVENT, 1)], ts_of("a", "lonely"))
        assert resolve_path(net, "lonely") is None

    def test_hypothetical_edges_materialized(self):
        net = build_network(
            [A("t0", "t1", 1), A("t1", "t2", -1), A("t2", EVENT, 1)],
            ts_of("t0", "t1", "t2"),
        )
        resolve_path(net, "t0")
        h0 = net.edge_between("t0", EVENT)
        h1 = net.edge_between("t1", EVENT)
        assert h0.hypothetical and h0.sign == -1 and h0.support == (0, 0)
        assert h1.hypothetical and h1.sign == -1
        # real edge untouched
        assert not net.edge_between("t2", EVENT).hypothetical

    def test_reversed_path_same_sign(self):
        assertions = [A("t0", "t1", -1), A("t1", "t2", 1), A("t2", EVENT, -1)]
        reversed_assertions = [A(a.to_ref, a.from_ref, a.sign) for a in assertions]
        one = resolve_path(build_network(assertions, ts_of("t0", "t1", "t2")), "t0")
        other = resolve_path(
            build_network(reversed_assertions, ts_of("t0", "t1", "t2")), "t0"
        )
        assert one == other == 1


class TestPartition:
    def test_star(self):
        net = resolve_all(
            build_network([A("a", EVENT, 1), A("b", EVENT, -1)], ts_of("a", "b"))
        )
        part, violations = partition(net)
        assert part.g_plus == {"a"} and part.g_minus == {"b"}
        assert violations == []

    def test_friend_of_friend(self):
        net = resolve_all(
            build_network([A("a", EVENT, 1), A("a", "b", 1)], ts_of("a", "b"))
        )
        part, violations = partition(net)
        assert "b" in part.g_plus
        assert violations == []

    def test_frustrated_triangle_reports_violation(self):
        net = resolve_all(
            build_network(
                [A("a", EVENT, 1), A("b", EVENT, 1), A("a", "b", -1)],
                ts_of("a", "b"),
            )
        )
        part, violations = partition(net)
        assert part.g_plus == {"a", "b"}
        assert len(violations) == 1


class TestCoverage:
    def test_all_direct(self):
        net = resolve_all(
            build_network([A("a", EVENT, 1), A("b", EVENT, -1)], ts_of("a", "b"))
        )
        report = coverage_report(net, 2)
        assert report == {"pass1": 1.0, "pass2": 0.0, "unresolved": 0.0}

    def test_chain_with_isolated(self):
        net = resolve_all(
            build_network(
                [A("a", EVENT, 1), A("b", "a", 1)], ts_of("a", "b", "c")
            )
        )
        report = coverage_report(net, 3)
        assert report["pass1"] == pytest.approx(1 / 3)
        assert report["pass2"] == pytest.approx(1 / 3)
        assert report["unresolved"] == pytest.approx(1 / 3)

    def test_sums_to_one(self):
        rng = random.Random(5)
        for _ in range(20):
            ids = [f"t{i}" for i in range(rng.randint(1, 6))]
            assertions = []
            for t in ids:
                if rng.random() < 0.6:
                    assertions.append(A(t, EVENT, rng.choice([1, -1])))
            net = resolve_all(build_network(assertions, ts_of(*ids)))
            report = coverage_report(net, len(ids))
            assert sum(report.values()) == pytest.approx(1.0, abs=1e-9)

    def test_zero_targets_rejected(self):
        net = build_network([], ts_of("a"))
        with pytest.raises(InputError):
            coverage_report(net, 0)


def random_balanced_case(rng):
    """A hidden two-camp assignment plus edges consistent with it."""
    n_targets = rng.randint(1, 9)
    ids = [f"t{i}" for i in range(n_targets)]
    side = {t: rng.choice([1, -1]) for t in ids}
    side[EVENT] = 1
    nodes = ids + [EVENT]
    possible = [
        (a, b) for i, a in enumerate(nodes) for b in nodes[i + 1 :]
    ]
    rng.shuffle(possible)
    n_edges = rng.randint(0, min(len(possible), n_targets + 3))
    edge_signs = {}
    for a, b in possible[:n_edges]:
        edge_signs[(a, b)] = side[a] * side[b]
    assertions = [A(a, b, s) for (a, b), s in edge_signs.items()]
    return ids, side, edge_signs, assertions


class TestBalancedOracle:
    def test_resolution_matches_all_paths_oracle(self):
        rng = random.Random(1234)
        for _ in range(120):
            ids, side, edge_signs, assertions = random_balanced_case(rng)
            net = resolve_all(build_network(assertions, ts_of(*ids)))
            _, violations = partition(net)
            assert violations == []
            for t in ids:
                signs = oracle_all_path_signs(edge_signs, EVENT, t)
                if signs:
                    assert signs == {side[t]}
                    assert net.resolved[t] == side[t]
                else:
                    assert t not in net.resolved

    def test_insertion_order_irrelevant(self):
        rng = random.Random(77)
        for _ in range(25):
            _, _, _, assertions = random_balanced_case(rng)
            ids = sorted(
                {r for a in assertions for r in (a.from_ref, a.to_ref)} - {EVENT}
            )
            if not ids:
                continue
            base = resolve_all(build_network(assertions, ts_of(*ids))).resolved
            shuffled = list(assertions)
            rng.shuffle(shuffled)
            again = resolve_all(build_network(shuffled, ts_of(*ids))).resolved
            assert again == base

    def test_consistent_edge_monotonic(self):
        rng = random.Random(99)
        for _ in range(25):
            ids, side, edge_signs, assertions = random_balanced_case(rng)
            if len(ids) < 2:
                continue
            before = resolve_all(build_network(assertions, ts_of(*ids))).resolved
            a, b = rng.sample(ids, 2)
            extra = A(a, b, side[a] * side[b])
            after = resolve_all(
                build_network(assertions + [extra], ts_of(*ids))
            ).resolved
            for t, s in before.items():
                assert after[t] == s


class TestSerialization:
    def test_round_trip(self):
        ts = ts_of("a", "b", "c")
        net = resolve_all(
            build_network(
                [A("a", EVENT, 1), A("b", "a", -1), A("b", "c", 1)], ts
            )
        )
        _, violations = partition(net)
        record = network_to_record(net, ts, ["demonetization"], violations)
        loaded, loaded_ts, aliases = network_from_record(record)
        assert aliases == ["demonetization"]
        assert {t.id for t in loaded_ts.all_targets()} == {"a", "b", "c"}
        assert loaded.resolved == net.resolved
        assert set(loaded.edges) == set(net.edges)
        assert network_to_record(loaded, loaded_ts, aliases, violations) == record

    def test_edge_record_shape(self):
        net = build_network([A("a", EVENT, -1)], ts_of("a"))
        record = edge_record(net.edge_between("a", EVENT))
        assert set(record) == {
            "from",
            "to",
            "sign",
            "support",
            "conflicted",
            "hypothetical",
        }

    def test_malformed_record(self):
        with pytest.raises(InputError):
            network_from_record({"edges": []})

    def test_dot_output(self):
        net = resolve_all(
            build_network([A("a", EVENT, 1), A("b", "a", -1)], ts_of("a", "b"))
        )
        dot = to_dot(net)
        assert dot.startswith("graph")
        assert '"EVENT"' in dot and '[label="-"]' in dot

    def test_reserved_event_id(self):
        with pytest.raises(InputError, match="reserved"):
            build_network([], ts_of(EVENT))
