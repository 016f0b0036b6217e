"""Halin graphs: construction from a plane tree, end supports, and the
constructive zero forcing set of size 3(|ES| - 1).

Input is always a tree plus a plane embedding (a rotation system); the leaf
cycle is the order leaves appear on the outer face walk. Internal vertices
keep their tree degree in the Halin graph, so the tree must have every
internal vertex of degree >= 3 (wheels, i.e. stars, are rejected: the end
support bound is vacuous at |ES| = 1).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .forcing import ForcingCertificate, closure
from .graphs import SimpleGraph


class DegenerateTree(ValueError):
    """Tree cannot produce a Halin graph in scope (star / degree-2 interior)."""


class NotForcing(RuntimeError):
    """Constructed set failed engine verification; an implementation bug."""


@dataclass(frozen=True)
class HalinStructure:
    n: int
    tree_edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]  # neighbor order per vertex
    leaf_cycle: tuple[int, ...]
    graph: SimpleGraph
    leaves: frozenset[int]
    supports: frozenset[int]
    deg_prime: tuple[int, ...]  # number of non-leaf neighbors, per vertex
    end_support: frozenset[int]
    reduced_nodes: tuple[int, ...]
    reduced_edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class HalinForcingSet:
    vertices: frozenset[int]
    root: int
    triples: tuple[tuple[int, int, int], ...]  # (leaf, cycle prev, cycle next)
    collision_free: bool
    certificate: ForcingCertificate


def build_halin(
    n: int,
    tree_edges: Sequence[Sequence[int]],
    rotation: Mapping[int, Sequence[int]] | None = None,
) -> HalinStructure:
    """Assemble the Halin graph of a plane tree and derive its structure."""
    edges = [(int(u), int(v)) for u, v in tree_edges]
    if len(edges) != n - 1:
        raise DegenerateTree(f"{len(edges)} edges is not a tree on {n} vertices")
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise DegenerateTree(f"bad tree edge ({u},{v})")
        adj[u].append(v)
        adj[v].append(u)
    tree = SimpleGraph(n, edges)
    if not tree.is_connected() or tree.m != n - 1:
        raise DegenerateTree("tree edges do not form a tree")

    rot: list[tuple[int, ...]] = []
    for v in range(n):
        if rotation is not None and v in rotation:
            order = tuple(int(x) for x in rotation[v])
            if sorted(order) != sorted(adj[v]):
                raise DegenerateTree(
                    f"rotation at {v} is not a permutation of its neighbors"
                )
        else:
            order = tuple(sorted(adj[v]))
        rot.append(order)

    leaves = frozenset(v for v in range(n) if len(adj[v]) == 1)
    internal = [v for v in range(n) if v not in leaves]
    if len(leaves) < 3:
        raise DegenerateTree("need at least 3 leaves for the outer cycle")
    bad = [v for v in internal if len(adj[v]) < 3]
    if bad:
        raise DegenerateTree(
            f"interior vertex {bad[0]} has tree degree {len(adj[bad[0]])} < 3"
        )

    deg_prime = tuple(
        sum(1 for w in adj[v] if w not in leaves) for v in range(n)
    )
    supports = frozenset(
        v for v in internal if any(w in leaves for w in adj[v])
    )
    end_support = frozenset(v for v in supports if deg_prime[v] <= 1)
    if len(end_support) < 2:
        raise DegenerateTree(
            "fewer than 2 end support vertices (star/wheel case is out of scope)"
        )

    # Outer face walk of the plane tree: leaves in embedding order.
    root = min(internal)
    cycle: list[int] = []

    def walk(v: int, parent: int | None) -> None:
        nbrs = rot[v]
        if parent is None:
            ordered = nbrs
        else:
            i = nbrs.index(parent)
            ordered = nbrs[i + 1 :] + nbrs[: i + 1]
            ordered = tuple(w for w in ordered if w != parent)
        for w in ordered:
            if w in leaves:
                cycle.append(w)
            else:
                walk(w, v)

    walk(root, None)
    assert len(cycle) == len(leaves)

    m = len(cycle)
    cyc_edges = [(cycle[i], cycle[(i + 1) % m]) for i in range(m)]
    graph = SimpleGraph(n, edges + cyc_edges)
    assert graph.min_degree() >= 3

    # Reduced branching tree: interior-tree vertices of H-degree != 2,
    # joined when a degree-2 chain of H connects them.
    h_deg = {v: deg_prime[v] for v in internal}
    nodes = tuple(v for v in internal if h_deg[v] != 2)
    red_edges: set[tuple[int, int]] = set()
    for v in nodes:
        for w in adj[v]:
            if w in leaves:
                continue
            prev, cur = v, w
            while h_deg[cur] == 2:
                nxt = next(
                    x for x in adj[cur] if x not in leaves and x != prev
                )
                prev, cur = cur, nxt
            if cur != v:
                red_edges.add((min(v, cur), max(v, cur)))
    assert frozenset(
        v for v in nodes if sum(1 for e in red_edges if v in e) <= 1
    ) == end_support or len(nodes) == 1

    return HalinStructure(
        n=n,
        tree_edges=tuple(sorted((min(u, v), max(u, v)) for u, v in edges)),
        rotation=tuple(rot),
        leaf_cycle=tuple(cycle),
        graph=graph,
        leaves=leaves,
        supports=supports,
        deg_prime=deg_prime,
        end_support=end_support,
        reduced_nodes=nodes,
        reduced_edges=tuple(sorted(red_edges)),
    )


def construct_forcing_set(hs: HalinStructure) -> HalinForcingSet:
    """The proof's set: for every end support but the root, a leaf plus its
    two cycle neighbors.

    Any leaf of each end support is valid, so leaves are chosen (in planar
    walk order, with backtracking) to keep the triples disjoint; when no
    disjoint system exists the first-leaf triples are used and the set is
    flagged, still forcing but smaller than 3(|ES|-1).
    """
    cycle = hs.leaf_cycle
    m = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    root = min(hs.end_support)
    others = sorted(hs.end_support - {root})

    def triples_of(s: int) -> list[tuple[int, int, int]]:
        ls = sorted(
            (w for w in hs.graph.neighbors(s) if w in hs.leaves),
            key=lambda w: pos[w],
        )
        return [
            (l, cycle[(pos[l] - 1) % m], cycle[(pos[l] + 1) % m]) for l in ls
        ]

    options = [triples_of(s) for s in others]

    chosen: list[tuple[int, int, int]] = []

    def backtrack(i: int, used: frozenset[int]) -> bool:
        if i == len(options):
            return True
        for trip in options[i]:
            tset = set(trip)
            if len(tset) == 3 and not (tset & used):
                chosen.append(trip)
                if backtrack(i + 1, used | tset):
                    return True
                chosen.pop()
        return False

    collision_free = backtrack(0, frozenset())
    if not collision_free:
        chosen = [opts[0] for opts in options]
    vertices = frozenset(v for trip in chosen for v in trip)
    state, cert = closure(hs.graph, vertices, "std")
    if not state.is_all_blue(hs.graph):
        raise NotForcing(
            f"end-support construction failed on ES={sorted(hs.end_support)}"
        )
    return HalinForcingSet(
        vertices=vertices,
        root=root,
        triples=tuple(chosen),
        collision_free=collision_free,
        certificate=cert,
    )


@dataclass(frozen=True)
class HalinReport:
    n: int
    es_count: int
    upper_z: int  # 3(|ES| - 1)
    lower_gr: int  # n - 3(|ES| - 1)
    no_branching: bool  # no vertex with deg'(v) >= 3
    exact_z: int | None  # 3 when no_branching
    exact_z_loop: int | None
    exact_gr: int | None  # n - 3 when no_branching
    constructed_size: int
    collision_free: bool

    def to_json(self) -> str:
        return json.dumps(self.__dict__, separators=(",", ":"))


def halin_report(hs: HalinStructure) -> HalinReport:
    fs = construct_forcing_set(hs)
    es = len(hs.end_support)
    no_branch = max(hs.deg_prime) <= 2
    return HalinReport(
        n=hs.n,
        es_count=es,
        upper_z=3 * (es - 1),
        lower_gr=hs.n - 3 * (es - 1),
        no_branching=no_branch,
        exact_z=3 if no_branch else None,
        exact_z_loop=3 if no_branch else None,
        exact_gr=hs.n - 3 if no_branch else None,
        constructed_size=len(fs.vertices),
        collision_free=fs.collision_free,
    )


def tree_end_supports(tree: SimpleGraph) -> frozenset[int]:
    """End support vertices of an arbitrary tree (supports with <= 1
    non-leaf neighbor); used for the tree Grundy bound."""
    leaves = {v for v in range(tree.n) if tree.degree(v) == 1}
    out = set()
    for v in range(tree.n):
        if v in leaves:
            continue
        nbrs = tree.neighbors(v)
        if any(w in leaves for w in nbrs):
            if sum(1 for w in nbrs if w not in leaves) <= 1:
                out.add(v)
    return frozenset(out)


def is_star(tree: SimpleGraph) -> bool:
    return tree.n >= 2 and sorted(tree.degree(v) for v in range(tree.n))[-1] == tree.n - 1 and tree.m == tree.n - 1


# --- generators ---


def generate_random_halin(
    internal_size: int, seed: int = 0
) -> HalinStructure:
    """Random plane tree: random interior tree, then enough leaves at each
    interior vertex to reach degree >= 3 (end supports get >= 3 leaves so
    the constructed set always meets 3(|ES|-1))."""
    if internal_size < 2:
        raise ValueError("need at least 2 interior vertices")
    rng = random.Random(seed)
    edges = [(rng.randrange(v), v) for v in range(1, internal_size)]
    deg = [0] * internal_size
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    nxt = internal_size
    all_edges = list(edges)
    for v in range(internal_size):
        if deg[v] == 1:
            extra = rng.randint(3, 4)
        else:
            extra = max(0, 3 - deg[v]) + rng.randint(0, 1)
        for _ in range(extra):
            all_edges.append((v, nxt))
            nxt += 1
    n = nxt
    rotation = {}
    for v in range(n):
        nbrs = [w for e in all_edges for w in _other(e, v)]
        rng.shuffle(nbrs)
        rotation[v] = nbrs
    return build_halin(n, all_edges, rotation)


def generate_no_branching_halin(
    interior: int, seed: int = 0
) -> HalinStructure:
    """Halin graph whose interior tree is a path: |ES| = 2 and Cor-3.4
    exact values apply."""
    if interior < 2:
        raise ValueError("need at least 2 interior vertices (one would be a wheel)")
    rng = random.Random(seed)
    edges = [(v, v + 1) for v in range(interior - 1)]
    nxt = interior
    for v in range(interior):
        if v in (0, interior - 1):
            extra = rng.randint(2, 3)
        else:
            extra = rng.randint(1, 2)
        for _ in range(extra):
            edges.append((v, nxt))
            nxt += 1
    return build_halin(nxt, edges)


def _other(edge: tuple[int, int], v: int) -> list[int]:
    if edge[0] == v:
        return [edge[1]]
    if edge[1] == v:
        return [edge[0]]
    return []


def halin_to_json(hs: HalinStructure) -> str:
    return json.dumps(
        {
            "tree_edges": [[u, v] for u, v in hs.tree_edges],
            "children_order": {str(v): list(r) for v, r in enumerate(hs.rotation)},
        },
        separators=(",", ":"),
    )


def halin_from_json(text: str) -> HalinStructure:
    payload = json.loads(text)
    edges = payload["tree_edges"]
    n = max(max(u, v) for u, v in edges) + 1
    rotation = None
    if "children_order" in payload and payload["children_order"]:
        rotation = {int(k): v for k, v in payload["children_order"].items()}
    return build_halin(n, edges, rotation)
