"""Pass II: the signed target network and balance propagation.

Assertions aggregate into one undirected edge per node pair (majority
sign; exact ties drop the pair).  Polarity toward the event then spreads
by the balance rules: a target with a direct event edge takes that sign,
and a neighbor of a resolved target takes the product of the edge sign
and the neighbor's sign, to fixpoint.

Direct event edges are authoritative.  When two derivations disagree
about a target that has no direct edge, the target is excluded and
propagation restarts without it; evidence that contradicts a direct
edge is left for partition() to report as a balance violation.

Unresolved targets can still be closed through resolve_path(): the sign
product along a shortest path to the event, materializing hypothetical
event edges for every node on the path so exports show the inference
chain.  Resolved signs split targets into the positive and negative
camps; on balanced evidence the split never cuts a positive edge or
joins a negative one.
"""

from collections import deque
from dataclasses import dataclass, field

from .errors import InputError
from .targets import Target, TargetSet

EVENT = "EVENT"


@dataclass
class SignedEdge:
    a: str
    b: str
    sign: int
    support: tuple[int, int]  # (positive, negative) assertion counts
    conflicted: bool = False
    hypothetical: bool = False


@dataclass
class SignedNetwork:
    nodes: set[str]
    edges: dict[tuple[str, str], SignedEdge]
    resolved: dict[str, int] = field(default_factory=dict)
    unresolved: set[str] = field(default_factory=set)
    excluded: set[str] = field(default_factory=set)
    pass1_direct: set[str] = field(default_factory=set)
    path_resolved: set[str] = field(default_factory=set)
    dropped_pairs: list[tuple[str, str]] = field(default_factory=list)
    contradictions: list[str] = field(default_factory=list)

    def edge_between(self, a: str, b: str) -> SignedEdge | None:
        return self.edges.get(_pair(a, b))

    def edge_participants(self) -> set[str]:
        out = set()
        for edge in self.edges.values():
            if not edge.hypothetical:
                out.update((edge.a, edge.b))
        out.discard(EVENT)
        return out


@dataclass(frozen=True)
class Partition:
    g_plus: frozenset[str]
    g_minus: frozenset[str]


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def build_network(assertions, targets: TargetSet) -> SignedNetwork:
    """Aggregate assertions into a signed graph over all targets + event."""
    known = {t.id for t in targets.all_targets()}
    if EVENT in known:
        raise InputError(f"'{EVENT}' is a reserved node id")
    tallies: dict[tuple[str, str], list[int]] = {}
    for assertion in assertions:
        a, b = assertion.from_ref, assertion.to_ref
        for ref in (a, b):
            if ref != EVENT and ref not in known:
                raise InputError(f"assertion references unknown target '{ref}'")
        if a == b:
            raise InputError(f"self-loop assertion on '{a}'")
        tally = tallies.setdefault(_pair(a, b), [0, 0])
        if assertion.sign > 0:
            tally[0] += 1
        else:
            tally[1] += 1

    network = SignedNetwork(nodes=known | {EVENT}, edges={})
    for (a, b), (pos, neg) in sorted(tallies.items()):
        if pos == neg:
            network.dropped_pairs.append((a, b))
            continue
        network.edges[(a, b)] = SignedEdge(
            a=a,
            b=b,
            sign=1 if pos > neg else -1,
            support=(pos, neg),
            conflicted=pos > 0 and neg > 0,
        )
    network.unresolved = network.edge_participants()
    return network


def _adjacency(network: SignedNetwork, hypothetical: bool = False) -> dict[str, list[tuple[str, int]]]:
    adj: dict[str, list[tuple[str, int]]] = {}
    for edge in network.edges.values():
        if edge.hypothetical and not hypothetical:
            continue
        adj.setdefault(edge.a, []).append((edge.b, edge.sign))
        adj.setdefault(edge.b, []).append((edge.a, edge.sign))
    for neighbors in adj.values():
        neighbors.sort()
    return adj


def _propagate(
    network: SignedNetwork, excluded: set[str]
) -> tuple[dict[str, int], set[str], str | None]:
    """One full propagation; returns (resolved, direct, contradicted-node)."""
    adj = _adjacency(network)
    resolved: dict[str, int] = {}
    direct: set[str] = set()
    for neighbor, sign in adj.get(EVENT, []):
        if neighbor not in excluded:
            resolved[neighbor] = sign
            direct.add(neighbor)
    queue = deque(sorted(resolved))
    while queue:
        g = queue.popleft()
        for h, sign in adj.get(g, []):
            if h == EVENT or h in excluded or h in direct:
                continue
            derived = sign * resolved[g]
            if h not in resolved:
                resolved[h] = derived
                queue.append(h)
            elif resolved[h] != derived:
                return resolved, direct, h
    return resolved, direct, None


def resolve_direct(network: SignedNetwork) -> SignedNetwork:
    """Seed from direct event edges and propagate to fixpoint, in place.

    A target whose derivations disagree is excluded and everything is
    re-derived without it, so no polarity the evidence contradicts
    survives.
    """
    excluded = set(network.excluded)
    for _ in range(len(network.nodes) + 1):
        resolved, direct, contradicted = _propagate(network, excluded)
        if contradicted is None:
            break
        excluded.add(contradicted)
        network.contradictions.append(
            f"conflicting derivations for '{contradicted}'; left unresolved"
        )
    network.resolved = resolved
    network.pass1_direct = direct
    network.excluded = excluded
    network.unresolved = network.edge_participants() - set(resolved)
    return network


def resolve_path(network: SignedNetwork, target: str) -> int | None:
    """Close one target through a shortest path to the event.

    Returns the sign product along the path, or None when no path
    avoids excluded nodes.  Every path node without an event edge gets a
    hypothetical one carrying its own suffix product.
    """
    if target in network.resolved:
        return network.resolved[target]
    if target in network.excluded or target == EVENT:
        return None
    adj = _adjacency(network)
    parents: dict[str, str] = {target: target}
    queue = deque([target])
    while queue:
        node = queue.popleft()
        if node == EVENT:
            break
        for neighbor, _sign in adj.get(node, []):
            if neighbor in parents or neighbor in network.excluded:
                continue
            parents[neighbor] = node
            queue.append(neighbor)
    if EVENT not in parents:
        return None

    path = [EVENT]
    while path[-1] != target:
        path.append(parents[path[-1]])
    path.reverse()  # target ... EVENT

    suffix = 1
    for i in range(len(path) - 2, -1, -1):
        edge = network.edge_between(path[i], path[i + 1])
        suffix *= edge.sign
        node = path[i]
        if network.edge_between(node, EVENT) is None:
            a, b = _pair(node, EVENT)
            network.edges[(a, b)] = SignedEdge(
                a=a, b=b, sign=suffix, support=(0, 0), hypothetical=True
            )
    sign = suffix
    network.resolved[target] = sign
    network.path_resolved.add(target)
    network.unresolved.discard(target)
    return sign


def resolve_all(network: SignedNetwork) -> SignedNetwork:
    """Full Pass-II resolution: direct propagation, then path closure."""
    resolve_direct(network)
    for target in sorted(network.unresolved):
        resolve_path(network, target)
    return network


def partition(network: SignedNetwork) -> tuple[Partition, list[str]]:
    """Split resolved targets by sign and check the balance condition.

    A positive evidence edge inside a split pair, or a negative one
    inside a same-sign pair, is reported as a violation; violations are
    possible only when the input evidence is unbalanced.
    """
    g_plus = frozenset(t for t, s in network.resolved.items() if s > 0)
    g_minus = frozenset(t for t, s in network.resolved.items() if s < 0)
    violations = []
    for (a, b), edge in sorted(network.edges.items()):
        if edge.hypothetical or EVENT in (a, b):
            continue
        if a not in network.resolved or b not in network.resolved:
            continue
        same_group = network.resolved[a] == network.resolved[b]
        if edge.sign > 0 and not same_group:
            violations.append(f"positive edge {a} -- {b} crosses the partition")
        elif edge.sign < 0 and same_group:
            violations.append(f"negative edge {a} -- {b} joins one group")
    return Partition(g_plus=g_plus, g_minus=g_minus), violations


def coverage_report(network: SignedNetwork, total_targets: int) -> dict:
    """Fractions of targets resolved directly, by propagation, and not
    at all; the three always sum to 1."""
    if total_targets <= 0:
        raise InputError("coverage needs at least one target")
    direct = len(network.pass1_direct & set(network.resolved))
    resolved = len(network.resolved)
    return {
        "pass1": direct / total_targets,
        "pass2": (resolved - direct) / total_targets,
        "unresolved": (total_targets - resolved) / total_targets,
    }


def network_to_record(
    network: SignedNetwork,
    targets: TargetSet,
    event_aliases: list[str],
    violations: list[str],
) -> dict:
    """Self-contained JSON form: everything classification needs later."""
    return {
        "event_aliases": sorted(event_aliases),
        "threshold": targets.threshold,
        "targets": [
            {
                "id": t.id,
                "kind": t.kind.value,
                "surface_forms": sorted(t.surface_forms),
                "importance": t.importance,
            }
            for t in targets.all_targets()
        ],
        "edges": [edge_record(e) for _, e in sorted(network.edges.items())],
        "resolved": dict(sorted(network.resolved.items())),
        "unresolved": sorted(network.unresolved),
        "excluded": sorted(network.excluded),
        "pass1_direct": sorted(network.pass1_direct),
        "dropped_pairs": [list(p) for p in sorted(network.dropped_pairs)],
        "contradictions": list(network.contradictions),
        "violations": list(violations),
    }


def edge_record(edge: SignedEdge) -> dict:
    return {
        "from": edge.a,
        "to": edge.b,
        "sign": edge.sign,
        "support": list(edge.support),
        "conflicted": edge.conflicted,
        "hypothetical": edge.hypothetical,
    }


def network_from_record(record: dict) -> tuple[SignedNetwork, TargetSet, list[str]]:
    from .targets import TargetKind

    try:
        phrases = []
        players = []
        for t in record["targets"]:
            target = Target(
                id=t["id"],
                kind=TargetKind(t["kind"]),
                surface_forms=frozenset(t["surface_forms"]),
                importance=t.get("importance"),
            )
            (phrases if target.kind is TargetKind.KEY_PHRASE else players).append(target)
        targets = TargetSet(
            key_phrases=tuple(phrases),
            key_players=tuple(players),
            threshold=record.get("threshold", 0.0),
        )
        edges = {}
        for e in record["edges"]:
            edge = SignedEdge(
                a=e["from"],
                b=e["to"],
                sign=int(e["sign"]),
                support=tuple(e["support"]),
                conflicted=bool(e.get("conflicted", False)),
                hypothetical=bool(e.get("hypothetical", False)),
            )
            edges[_pair(edge.a, edge.b)] = edge
        network = SignedNetwork(
            nodes={t.id for t in targets.all_targets()} | {EVENT},
            edges=edges,
            resolved={k: int(v) for k, v in record["resolved"].items()},
            unresolved=set(record["unresolved"]),
            excluded=set(record.get("excluded", [])),
            pass1_direct=set(record.get("pass1_direct", [])),
            dropped_pairs=[tuple(p) for p in record.get("dropped_pairs", [])],
            contradictions=list(record.get("contradictions", [])),
        )
        return network, targets, list(record["event_aliases"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed network record: {exc}") from exc


def to_dot(network: SignedNetwork) -> str:
    """Graphviz rendering with the sign as an edge attribute."""
    lines = ["graph stance_network {"]
    for node in sorted(network.nodes):
        shape = "doublecircle" if node == EVENT else "ellipse"
        lines.append(f'  "{node}" [shape={shape}];')
    for (a, b), edge in sorted(network.edges.items()):
        sign = "+" if edge.sign > 0 else "-"
        style = ", style=dashed" if edge.hypothetical else ""
        lines.append(f'  "{a}" -- "{b}" [label="{sign}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
