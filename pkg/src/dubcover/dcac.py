"""Area clustering: partition the pass graph into k connected, balanced clusters
by breadth-first growth, then plan each cluster with the single-robot solver."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .dcrc import Tour
from .dcs import Solver, dcs, travel
from .decompose import bcd
from .gridmap import OccupancyGrid, Point
from .passes import Pass, PassGraph, generate_passes, pass_graph


@dataclass
class Cluster:
    id: int
    pass_ids: list[int]
    size: float
    seed: int | None = None

    @property
    def empty(self) -> bool:
        return not self.pass_ids


def bfs_tree_weight(graph: PassGraph, members: set[int], root: int,
                    adj: dict[int, list[int]] | None = None) -> float:
    """Weight of the BFS tree grown from ``root`` inside the induced subgraph."""
    adj = graph.adjacency() if adj is None else adj
    seen = {root}
    queue = deque([root])
    total = 0.0
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in members and v not in seen:
                seen.add(v)
                total += graph.cost(u, v)
                queue.append(v)
    return total


def _forest_weight(graph, members, adj) -> float:
    left = set(members)
    total = 0.0
    while left:
        root = min(left)
        comp = _reachable(root, left, adj)
        total += bfs_tree_weight(graph, comp, root, adj)
        left -= comp
    return total


def _reachable(root: int, members: set[int], adj) -> set[int]:
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v in members and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def _apportion(weights: list[float], counts: list[int], k: int) -> list[int]:
    """Largest-remainder split of ``k`` clusters over components: one each first,
    never more clusters than a component has vertices."""
    alloc = [1] * len(weights)
    spare = k - len(weights)
    while spare > 0:
        room = [i for i in range(len(weights)) if alloc[i] < counts[i]]
        if not room:
            break
        w = {i: weights[i] for i in room}
        if sum(w.values()) <= 0:
            w = {i: float(counts[i]) for i in room}
        total = sum(w.values())
        quota = {i: spare * w[i] / total for i in room}
        add = {i: min(int(quota[i]), counts[i] - alloc[i]) for i in room}
        rest = spare - sum(add.values())
        for i in sorted(room, key=lambda i: (-(quota[i] - int(quota[i])), i)):
            if rest == 0:
                break
            if alloc[i] + add[i] < counts[i]:
                add[i] += 1
                rest -= 1
        if not any(add.values()):
            break
        for i in room:
            alloc[i] += add[i]
        spare = rest
    return alloc


def _grow(graph, adj, remaining: set[int], seed: int, target: float, must_leave: int) -> list[int]:
    """Breadth-first growth from ``seed``; a discovered vertex joins only if its
    tree edge brings the cluster weight strictly closer to ``target``. A
    vertex passed over can still join later through another tree edge."""
    members = [seed]
    taken = {seed}
    size = 0.0
    queue = deque([seed])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in remaining or v in taken:
                continue
            if len(remaining) - len(taken) <= must_leave:
                return members
            inc = graph.cost(u, v)
            if abs(size + inc - target) >= abs(size - target):
                continue
            taken.add(v)
            members.append(v)
            size += inc
            queue.append(v)
    return members


def _cluster_target(graph, members: set[int], adj, k: int) -> float:
    """Remaining tree weight per cluster, net of the k - 1 tree edges that will
    end up between clusters (priced at the mean tree-edge weight)."""
    weight = _forest_weight(graph, members, adj)
    n_edges = len(members) - len(_split_sets(members, adj))
    if n_edges == 0:
        return 0.0
    cut = (k - 1) * weight / n_edges
    return max(weight - cut, 0.0) / k


def _split_component(graph, adj, comp, k: int, v_s) -> list[list[int]]:
    """Cut one connected vertex set into ``k`` connected groups.

    After a cluster is grown, the unassigned vertices may fall apart into
    pieces. Pieces lighter than half a cluster share (and the lightest pieces
    whenever there are more pieces than clusters left) are folded into the
    cluster that cut them off; the others share the remaining clusters in
    proportion to their weight and are split recursively.
    """
    remaining = set(comp)
    if k <= 1 or len(remaining) <= 1:
        seed = _nearest(graph, remaining, v_s)
        return [[seed] + sorted(remaining - {seed})] + [[] for _ in range(k - 1)]
    seed = _nearest(graph, remaining, v_s)
    target = _cluster_target(graph, remaining, adj, k)
    members = _grow(graph, adj, remaining, seed, target, must_leave=k - 1)
    remaining -= set(members)

    pieces = []
    left = set(remaining)
    while left:
        piece = _reachable(min(left), left, adj)
        left -= piece
        pieces.append((_forest_weight(graph, piece, adj), min(piece), piece))
    pieces.sort(key=lambda t: (t[0], t[1]))
    # keep at least one piece so every remaining cluster has somewhere to grow
    while len(pieces) > 1 and (len(pieces) > k - 1 or pieces[0][0] < 0.5 * target):
        if sum(len(p) for _, _, p in pieces[1:]) < k - 1:
            break
        members.extend(sorted(pieces.pop(0)[2]))
    if not pieces:
        return [members] + [[] for _ in range(k - 1)]

    alloc = _apportion([w for w, _, _ in pieces], [len(p) for _, _, p in pieces], k - 1)
    groups = [members]
    for (_, _, piece), kp in zip(pieces, alloc):
        groups.extend(_split_component(graph, adj, piece, kp, v_s))
    while len(groups) < k:
        groups.append([])
    return groups


def _nearest(graph: PassGraph, candidates, v_s) -> int:
    return min(candidates, key=lambda v: (travel(graph.positions[v], v_s), v))


def _repair_connectivity(graph, adj, groups: list[list[int]]) -> None:
    """Hand pieces cut off from their cluster's seed to an adjacent cluster."""
    owner = {v: i for i, g in enumerate(groups) for v in g}
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(groups):
            if not g:
                continue
            members = set(g)
            main = _reachable(g[0], members, adj)
            stray = members - main
            if not stray:
                continue
            piece = _reachable(min(stray), stray, adj)
            targets = sorted({owner[w] for u in piece for w in adj[u] if owner[w] != i})
            if not targets:
                continue
            dest = min(targets, key=lambda j: (len(groups[j]), j))
            groups[i] = [v for v in g if v not in piece]
            groups[dest].extend(sorted(piece))
            for v in piece:
                owner[v] = dest
            changed = True


def bfs_clustering(graph: PassGraph, k: int, v_s) -> list[Cluster]:
    """Partition pass-graph vertices into ``k`` clusters.

    Each cluster grows breadth-first from the unassigned pass nearest the
    depot until its BFS-tree weight is as close as it gets to the remaining
    tree weight divided by the clusters still to form. Clusters never span
    graph components unless ``k`` is smaller than the number of components;
    components receive clusters in proportion to their tree weight.
    """
    if k < 1:
        raise ValueError(f"need at least one robot, got k={k}")
    if not graph.vertices:
        raise ValueError("cannot cluster an empty pass graph")
    adj = graph.adjacency()
    comps = graph.components()
    weights = [_forest_weight(graph, set(c), adj) for c in comps]

    groups: list[list[int]] = []
    if k >= len(comps):
        alloc = _apportion(weights, [len(c) for c in comps], k)
        for comp, kc in zip(comps, alloc):
            groups.extend(_split_component(graph, adj, comp, kc, v_s))
    else:
        order = sorted(range(len(comps)), key=lambda i: (-weights[i], -len(comps[i]), i))
        groups = [list(comps[i]) for i in order[:k]]
        sizes = [weights[i] for i in order[:k]]
        for i in order[k:]:
            j = min(range(k), key=lambda g: (sizes[g], g))
            groups[j].extend(comps[i])
            sizes[j] += weights[i]
    _repair_connectivity(graph, adj, groups)
    while len(groups) < k:
        groups.append([])

    clusters = []
    for i, g in enumerate(groups):
        if not g:
            clusters.append(Cluster(i, [], 0.0, None))
            continue
        size = 0.0
        for comp in _split_sets(set(g), adj):
            size += bfs_tree_weight(graph, comp, g[0] if g[0] in comp else min(comp), adj)
        clusters.append(Cluster(i, sorted(g), size, g[0]))
    return clusters


def _split_sets(members: set[int], adj) -> list[set[int]]:
    left = set(members)
    out = []
    while left:
        comp = _reachable(min(left), left, adj)
        out.append(comp)
        left -= comp
    return out


def tours_from_clusters(clusters: list[Cluster], passes: list[Pass], r: float, v_s,
                        solver: Solver = "heuristic", seed: int = 0) -> list[Tour]:
    lookup = {p.id: p for p in passes}
    tours = []
    for c in clusters:
        if c.empty:
            tours.append(Tour(c.id, [], [], Point(*v_s)))
            continue
        route = dcs([lookup[i] for i in c.pass_ids], r, solver, seed)
        tours.append(Tour(c.id, route.nodes, route.transitions, Point(*v_s)))
    return tours


def dcac(k: int, grid: OccupancyGrid, r: float, s: float, solver: Solver = "heuristic",
         seed: int = 0) -> list[Tour]:
    if k < 1:
        raise ValueError(f"need at least one robot, got k={k}")
    cells = bcd(grid)
    passes = generate_passes(cells, s)
    if not passes:
        raise ValueError("map has no free space to cover")
    clusters = bfs_clustering(pass_graph(passes, cells), k, grid.depot)
    return tours_from_clusters(clusters, passes, r, grid.depot, solver, seed)
