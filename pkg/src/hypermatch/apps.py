"""Consumers of hypergraph maximal matching on plain graphs.

Three drivers live here.  Approximate maximum matching runs phases of
Hopcroft-Karp style augmentation where each phase packs a maximal set of
vertex-disjoint augmenting paths of one fixed odd length; the packing is
exactly a hypergraph maximal matching once every path is written as the
set of its exposed endpoints and traversed matching edges.  Bounded
out-degree orientation repeatedly reverses edge-disjoint directed paths
from nodes above the target bound to nodes below it, again selected as a
hypergraph maximal matching with source and sink multi-edges
materialized as slot vertices.  The orientation in turn splits the edge
set into pseudo-forests, one per out-going slot.

All path enumeration is explicit depth-first search with a hard cap;
blowing the cap raises PathBudgetError rather than silently truncating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import Graph, Matching, Verdict, build_hypergraph
from .ledger import RoundLedger
from .rounding import almost_maximal_matching, maximal_matching

DEFAULT_PATH_CAP = 500_000
ORIENTATION_ROUND_FACTOR = 4


class PathBudgetError(RuntimeError):
    """Augmenting-path enumeration exceeded its configured cap."""


class OrientationBoundError(RuntimeError):
    """Out-degree bound still violated after the iteration cap.

    Signals that the arboricity bound handed in was below the true
    arboricity of the graph.
    """


@dataclass(frozen=True)
class AugmentingPathSet:
    """Paths as node sequences, pairwise disjoint in the declared mode."""

    paths: tuple[tuple[int, ...], ...]
    mode: str


def validate_path_set(ps: AugmentingPathSet) -> Verdict:
    """Check simplicity of each path and pairwise disjointness.

    Mode "vertex" forbids any shared node between two paths; mode "edge"
    forbids shared (undirected) edges but allows shared nodes.
    """
    if ps.mode not in ("vertex", "edge"):
        return Verdict(False, f"unknown mode {ps.mode!r}")
    seen: set = set()
    for path in ps.paths:
        if len(path) < 2:
            return Verdict(False, f"path {path} has no edge")
        if len(set(path)) != len(path):
            return Verdict(False, f"path {path} repeats a node")
        if ps.mode == "vertex":
            items = set(path)
        else:
            items = {frozenset(pair) for pair in zip(path, path[1:])}
        if seen & items:
            return Verdict(False, f"path {path} overlaps an earlier path")
        seen |= items
    return Verdict(True)


def _alternating_paths(
    g: Graph,
    mate: dict[int, int],
    dead: set[int],
    length: int,
    cap: int,
) -> list[tuple[int, ...]]:
    """Simple alternating paths with exactly ``length`` edges between two
    exposed nodes, each reported once (smaller endpoint first)."""
    found: list[tuple[int, ...]] = []
    path: list[int] = []
    on_path: set[int] = set()

    def extend(edges_used: int) -> None:
        v = path[-1]
        if edges_used == length:
            if v not in mate and path[0] < v:
                found.append(tuple(path))
                if len(found) > cap:
                    raise PathBudgetError(
                        f"more than {cap} augmenting paths of length {length}"
                    )
            return
        if edges_used % 2 == 1:
            u = mate.get(v)
            if u is None or u in on_path or u in dead:
                return
            path.append(u)
            on_path.add(u)
            extend(edges_used + 1)
            on_path.discard(u)
            path.pop()
        else:
            for u in g.adjacency[v]:
                if u in on_path or u in dead or mate.get(v) == u:
                    continue
                path.append(u)
                on_path.add(u)
                extend(edges_used + 1)
                on_path.discard(u)
                path.pop()

    for start in range(g.n):
        if start in mate or start in dead:
            continue
        path = [start]
        on_path = {start}
        extend(0)
    return found


def approx_max_graph_matching(
    g: Graph,
    eps: Fraction | int,
    almost_maximal: bool = False,
    ledger: RoundLedger | None = None,
    path_cap: int = DEFAULT_PATH_CAP,
) -> Matching:
    """Matching of size at least OPT/(1+eps), for 0 < eps <= 1.

    Runs one phase per odd length 1, 3, ..., 2*ceil(1/eps)-1.  A phase
    enumerates every augmenting path of that exact length, packs a
    maximal vertex-disjoint subset via hypergraph maximal matching (one
    hypergraph vertex per exposed endpoint and per matching edge), and
    flips all packed paths.  Shortest-augmenting-path length afterwards
    exceeds the phase length, which is what the size bound rests on.

    With almost_maximal=True each phase settles for an almost maximal
    packing and permanently discards the nodes of the few paths left
    unblocked; the guarantee weakens to OPT/(1+2*eps).
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError(f"eps must be in (0, 1], got {eps}")
    k = math.ceil(1 / eps)
    mate: dict[int, int] = {}
    matched_ids: set[int] = set()
    dead: set[int] = set()
    pair_to_id = {edge: eid for eid, edge in enumerate(g.edges)}
    for length in range(1, 2 * k, 2):
        if ledger is not None:
            ledger.charge(
                "augmenting_phase", length, "radius-l path enumeration"
            )
        paths = _alternating_paths(g, mate, dead, length, path_cap)
        if not paths:
            continue
        exposed = sorted(
            v for v in range(g.n) if v not in mate and v not in dead
        )
        elem_of_node = {v: i for i, v in enumerate(exposed)}
        elem_of_medge = {
            eid: len(exposed) + i for i, eid in enumerate(sorted(matched_ids))
        }
        members_list: list[frozenset[int]] = []
        rep_paths: list[tuple[int, ...]] = []
        seen_members: set[frozenset[int]] = set()
        for p in paths:
            members = {elem_of_node[p[0]], elem_of_node[p[-1]]}
            for j in range(1, length, 2):
                members.add(elem_of_medge[pair_to_id[tuple(sorted(p[j : j + 2]))]])
            frozen = frozenset(members)
            if frozen in seen_members:
                continue
            seen_members.add(frozen)
            members_list.append(frozen)
            rep_paths.append(p)
        hyp = build_hypergraph(len(exposed) + len(matched_ids), members_list)
        if almost_maximal:
            slack = eps / (4 * max(1, g.max_degree) ** k)
            mm, unblocked = almost_maximal_matching(hyp, slack, ledger)
        else:
            mm = maximal_matching(hyp, ledger)
            unblocked = frozenset()
        selected = AugmentingPathSet(
            paths=tuple(rep_paths[i] for i in sorted(mm.edges)), mode="vertex"
        )
        verdict = validate_path_set(selected)
        if not verdict:
            raise RuntimeError(f"packed paths not vertex-disjoint: {verdict.reason}")
        before = len(matched_ids)
        for p in selected.paths:
            for j in range(length):
                eid = pair_to_id[tuple(sorted(p[j : j + 2]))]
                if j % 2 == 0:
                    matched_ids.add(eid)
                    mate[p[j]] = p[j + 1]
                    mate[p[j + 1]] = p[j]
                else:
                    matched_ids.discard(eid)
        assert len(matched_ids) == before + len(selected.paths)
        for hid in unblocked:
            dead.update(rep_paths[hid])
    return Matching(frozenset(matched_ids))


@dataclass(frozen=True)
class Orientation:
    """One (tail, head) pair per edge id plus the resulting out-degrees."""

    directions: tuple[tuple[int, int], ...]
    out_degrees: tuple[int, ...]
    bound: int


def validate_orientation(g: Graph, o: Orientation) -> Verdict:
    if len(o.directions) != g.m:
        return Verdict(False, f"expected {g.m} directions, got {len(o.directions)}")
    if len(o.out_degrees) != g.n:
        return Verdict(False, f"expected {g.n} out-degrees")
    recount = [0] * g.n
    for eid, (tail, head) in enumerate(o.directions):
        if tuple(sorted((tail, head))) != g.edges[eid]:
            return Verdict(
                False, f"direction {tail}->{head} does not match edge {eid}"
            )
        recount[tail] += 1
    if tuple(recount) != o.out_degrees:
        return Verdict(False, "stored out-degrees disagree with directions")
    worst = max(o.out_degrees, default=0)
    if worst > o.bound:
        return Verdict(False, f"out-degree {worst} exceeds bound {o.bound}")
    return Verdict(True)


def _directed_paths(
    out_adj: list[list[tuple[int, int]]],
    starts: list[int],
    ends: set[int],
    length: int,
    cap: int,
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Simple directed paths with exactly ``length`` edges from a start
    node to an end node, as (node sequence, edge id sequence) pairs."""
    found: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    nodes: list[int] = []
    eids: list[int] = []
    on_path: set[int] = set()

    def extend(remaining: int) -> None:
        v = nodes[-1]
        if remaining == 0:
            if v in ends:
                found.append((tuple(nodes), tuple(eids)))
                if len(found) > cap:
                    raise PathBudgetError(
                        f"more than {cap} directed paths of length {length}"
                    )
            return
        for head, eid in out_adj[v]:
            if head in on_path:
                continue
            nodes.append(head)
            eids.append(eid)
            on_path.add(head)
            extend(remaining - 1)
            on_path.discard(head)
            eids.pop()
            nodes.pop()

    for s in starts:
        nodes = [s]
        eids = []
        on_path = {s}
        extend(length)
    return found


def low_outdegree_orientation(
    g: Graph,
    lam: int,
    eps: Fraction | int,
    ledger: RoundLedger | None = None,
    path_cap: int = DEFAULT_PATH_CAP,
) -> Orientation:
    """Orient every edge so each node has out-degree <= ceil((1+eps)*lam).

    Starts from the lexicographic orientation and, in iteration i,
    reverses a maximal edge-disjoint set of directed paths of inner
    length 1+i that lead from a node above the bound to one below it.
    Each node's excess units and slack units enter the path hypergraph
    as private slot vertices, so disjointness covers the implicit
    source and sink multi-edges as well.  If excess survives all
    ceil(4*log2(n)/eps) iterations the arboricity bound was too small
    and OrientationBoundError is raised.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if lam < 0:
        raise ValueError(f"arboricity bound must be >= 0, got {lam}")
    bound = math.ceil((1 + eps) * lam)
    directions = [tuple(edge) for edge in g.edges]
    outdeg = [0] * g.n
    for tail, _ in directions:
        outdeg[tail] += 1
    iteration_cap = math.ceil(
        ORIENTATION_ROUND_FACTOR * math.log2(max(2, g.n)) / float(eps)
    )
    for i in range(iteration_cap):
        excess = [max(0, outdeg[v] - bound) for v in range(g.n)]
        total_excess = sum(excess)
        if total_excess == 0:
            break
        inner_length = 1 + i
        if ledger is not None:
            ledger.charge(
                "orientation_iteration",
                inner_length + 2,
                "augmenting paths of length 3+i",
            )
        deficit = [max(0, bound - outdeg[v]) for v in range(g.n)]
        out_adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        for eid, (tail, head) in enumerate(directions):
            out_adj[tail].append((head, eid))
        starts = [v for v in range(g.n) if excess[v] > 0]
        ends = {v for v in range(g.n) if deficit[v] > 0}
        paths = _directed_paths(out_adj, starts, ends, inner_length, path_cap)
        if not paths:
            continue
        slot_id: dict[tuple[str, int, int], int] = {}
        next_id = g.m
        for v in range(g.n):
            for j in range(excess[v]):
                slot_id[("s", v, j)] = next_id
                next_id += 1
            for j in range(deficit[v]):
                slot_id[("t", v, j)] = next_id
                next_id += 1
        members_list: list[set[int]] = []
        path_of_member: list[int] = []
        for pidx, (nodes, eids) in enumerate(paths):
            for j in range(excess[nodes[0]]):
                for j2 in range(deficit[nodes[-1]]):
                    members_list.append(
                        set(eids)
                        | {slot_id[("s", nodes[0], j)], slot_id[("t", nodes[-1], j2)]}
                    )
                    path_of_member.append(pidx)
                    if len(members_list) > path_cap:
                        raise PathBudgetError(
                            f"more than {path_cap} path/slot combinations"
                        )
        hyp = build_hypergraph(next_id, members_list)
        mm = maximal_matching(hyp, ledger)
        if not mm.edges:
            continue
        chosen = AugmentingPathSet(
            paths=tuple(paths[path_of_member[hid]][0] for hid in sorted(mm.edges)),
            mode="edge",
        )
        verdict = validate_path_set(chosen)
        if not verdict:
            raise RuntimeError(f"packed paths not edge-disjoint: {verdict.reason}")
        before = [outdeg[v] for v in range(g.n)]
        for hid in sorted(mm.edges):
            nodes, eids = paths[path_of_member[hid]]
            for eid in eids:
                tail, head = directions[eid]
                directions[eid] = (head, tail)
            outdeg[nodes[0]] -= 1
            outdeg[nodes[-1]] += 1
        assert all(
            outdeg[v] <= bound for v in range(g.n) if before[v] <= bound
        ), "reversal pushed a satisfied node above the bound"
        new_excess = sum(max(0, outdeg[v] - bound) for v in range(g.n))
        assert new_excess == total_excess - len(mm.edges)
    total_excess = sum(max(0, outdeg[v] - bound) for v in range(g.n))
    if total_excess > 0:
        raise OrientationBoundError(
            f"out-degree above {bound} persists after {iteration_cap} iterations;"
            f" the arboricity bound {lam} is too small"
        )
    result = Orientation(
        directions=tuple(directions),
        out_degrees=tuple(outdeg),
        bound=bound,
    )
    verdict = validate_orientation(g, result)
    if not verdict:
        raise RuntimeError(f"orientation invalid: {verdict.reason}")
    return result


def pseudo_forest_decomposition(
    g: Graph, o: Orientation
) -> tuple[frozenset[int], ...]:
    """Split the edges into o.bound classes, each a pseudo-forest.

    Class k holds every edge that is the k-th outgoing edge of its tail
    (outgoing edges ordered by edge id), so each node has out-degree at
    most one within a class and every connected component carries at
    most one cycle.
    """
    verdict = validate_orientation(g, o)
    if not verdict:
        raise ValueError(f"orientation invalid: {verdict.reason}")
    outgoing: list[list[int]] = [[] for _ in range(g.n)]
    for eid, (tail, _) in enumerate(o.directions):
        outgoing[tail].append(eid)
    classes: list[set[int]] = [set() for _ in range(o.bound)]
    for v in range(g.n):
        for k, eid in enumerate(sorted(outgoing[v])):
            classes[k].add(eid)
    return tuple(frozenset(c) for c in classes)


def validate_pseudo_forest(g: Graph, edge_ids: frozenset[int]) -> Verdict:
    """Each connected component of the edge subset has at most one cycle,
    in other words no more edges than nodes."""
    parent: dict[int, int] = {}

    def find(v: int) -> int:
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    edge_count: dict[int, int] = {}
    for eid in edge_ids:
        u, v = g.edges[eid]
        for w in (u, v):
            if w not in parent:
                parent[w] = w
    for eid in edge_ids:
        u, v = g.edges[eid]
        ru, rv = find(u), find(v)
        count = edge_count.pop(ru, 0) + 1
        if ru != rv:
            count += edge_count.pop(rv, 0)
            parent[rv] = ru
        edge_count[ru] = count
    for root, count in edge_count.items():
        size = sum(1 for v in parent if find(v) == root)
        if count > size:
            return Verdict(
                False,
                f"component of node {root} has {count} edges on {size} nodes",
            )
    return Verdict(True)
