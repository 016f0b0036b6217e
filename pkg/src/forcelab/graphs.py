"""Foundational graph types, structural predicates and matching machinery.

Vertices are dense 0-based integers. ``SimpleGraph`` and ``Multigraph`` are
immutable after construction; every operation here is a pure function, so
concurrent reads are safe. Multigraph edges are kept as (pair, multiplicity)
and addressed by *edge copies* ``(u, v, c)`` with ``u < v`` and
``0 <= c < multiplicity``, so that "avoid this copy" is well defined.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

EdgeCopy = tuple[int, int, int]


class NoPerfectMatching(Exception):
    """No perfect matching exists under the requested constraints."""


def _normalize_pair(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"self-loop at vertex {u} is not allowed")
    return (u, v) if u < v else (v, u)


class SimpleGraph:
    """Undirected simple graph on vertices 0..n-1 with sorted adjacency."""

    __slots__ = ("n", "_adj", "_masks")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        adj: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            u, v = _normalize_pair(u, v)
            adj[u].add(v)
            adj[v].add(u)
        self._adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in adj
        )
        self._masks: tuple[int, ...] | None = None

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def min_degree(self) -> int:
        return min((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self._adj[u] if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return frozenset(self._adj[v]) | {v}

    def adjacency_masks(self) -> tuple[int, ...]:
        """Neighbor sets as bitmasks, cached; the solver's working format."""
        if self._masks is None:
            masks = []
            for nbrs in self._adj:
                m = 0
                for w in nbrs:
                    m |= 1 << w
                masks.append(m)
            self._masks = tuple(masks)
        return self._masks

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def relabeled(self, perm: Sequence[int]) -> "SimpleGraph":
        """Graph with vertex v renamed to perm[v]."""
        return SimpleGraph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SimpleGraph)
            and self.n == other.n
            and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.m})"


class Multigraph:
    """Undirected loopless multigraph; parallel edges kept as multiplicities."""

    __slots__ = ("n", "_mult")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        mult: dict[tuple[int, int], int] = {}
        for e in edges:
            if len(e) == 2:
                u, v, k = int(e[0]), int(e[1]), 1
            else:
                u, v, k = int(e[0]), int(e[1]), int(e[2])
            if k < 1:
                raise ValueError("edge multiplicity must be >= 1")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            p = _normalize_pair(u, v)
            mult[p] = mult.get(p, 0) + k
        self._mult: dict[tuple[int, int], int] = dict(sorted(mult.items()))

    @classmethod
    def from_simple(cls, g: SimpleGraph) -> "Multigraph":
        return cls(g.n, g.edges())

    def multiplicity(self, u: int, v: int) -> int:
        return self._mult.get(_normalize_pair(u, v), 0)

    def pairs(self) -> list[tuple[int, int, int]]:
        """Distinct vertex pairs as (u, v, multiplicity)."""
        return [(u, v, k) for (u, v), k in self._mult.items()]

    def edge_copies(self) -> list[EdgeCopy]:
        """All edge copies (u, v, c), sorted."""
        return [
            (u, v, c) for (u, v), k in self._mult.items() for c in range(k)
        ]

    def degree(self, v: int) -> int:
        return sum(
            k for (u, w), k in self._mult.items() if u == v or w == v
        )

    def neighbors(self, v: int) -> list[int]:
        out = set()
        for u, w in self._mult:
            if u == v:
                out.add(w)
            elif w == v:
                out.add(u)
        return sorted(out)

    @property
    def m(self) -> int:
        return sum(self._mult.values())

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        adj: dict[int, list[int]] = {v: [] for v in range(self.n)}
        for u, v in self._mult:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Multigraph)
            and self.n == other.n
            and self._mult == other._mult
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._mult.items())))

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Matching:
    """A set of vertex-disjoint edge copies."""

    edges: frozenset[EdgeCopy]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for u, v, _ in self.edges:
            if u in seen or v in seen:
                raise ValueError("matching edges share a vertex")
            seen.update((u, v))

    def covered(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e[:2])

    def is_perfect(self, n: int) -> bool:
        return len(self.covered()) == n

    def pairs(self) -> set[tuple[int, int]]:
        return {(u, v) for u, v, _ in self.edges}


# --- structural predicates ---


def is_cubic(g: SimpleGraph | Multigraph) -> bool:
    """True iff every vertex has degree exactly 3."""
    return g.n > 0 and all(g.degree(v) == 3 for v in range(g.n))


def is_claw_free(g: SimpleGraph) -> bool:
    """True iff g has no induced K_{1,3}."""
    for v in range(g.n):
        nbrs = g.neighbors(v)
        if len(nbrs) < 3:
            continue
        for a, b, c in combinations(nbrs, 3):
            if not (g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c)):
                return False
    return True


def is_two_edge_connected(g: SimpleGraph | Multigraph) -> bool:
    """True iff g is connected and bridge-free.

    A pair with multiplicity >= 2 is never a bridge. Uses the standard
    low-link traversal on the distinct-pair skeleton.
    """
    if not g.is_connected():
        return False
    if g.n == 1:
        return True
    if isinstance(g, Multigraph):
        adj = {v: g.neighbors(v) for v in range(g.n)}
        multi = {p for p, k in g._mult.items() if k >= 2}
    else:
        adj = {v: list(g.neighbors(v)) for v in range(g.n)}
        multi = set()

    disc = [0] * g.n
    low = [0] * g.n
    timer = 1
    # Iterative DFS; (vertex, parent, neighbor iterator index).
    stack = [(0, -1, 0)]
    disc[0] = low[0] = timer
    timer += 1
    while stack:
        v, parent, i = stack.pop()
        nbrs = adj[v]
        advanced = False
        while i < len(nbrs):
            w = nbrs[i]
            i += 1
            if disc[w] == 0:
                stack.append((v, parent, i))
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, v, 0))
                advanced = True
                break
            if w != parent or _normalize_pair(v, w) in multi:
                low[v] = min(low[v], disc[w])
        if not advanced and stack and i >= len(nbrs):
            # v finished: propagate low-link to parent, check bridge.
            pv, pp, pi = stack[-1]
            if low[v] > disc[pv] and _normalize_pair(v, pv) not in multi:
                return False
            low[pv] = min(low[pv], low[v])
    return True


# --- matchings and 2-factors ---


def perfect_matching_avoiding(h: Multigraph, e: EdgeCopy) -> Matching:
    """A perfect matching of h that does not use edge copy e.

    One copy of e is deleted and a maximum-cardinality matching (blossom,
    via networkx) is run on the distinct-pair skeleton; each matched pair is
    then assigned its smallest surviving copy index. Raises
    NoPerfectMatching if h has no such matching (e.g. the 2-edge-connected
    cubic precondition fails).
    """
    u, v, c = e
    u, v = _normalize_pair(u, v)
    if not (0 <= c < h.multiplicity(u, v)):
        raise ValueError(f"edge copy {e} not present")
    support = nx.Graph()
    support.add_nodes_from(range(h.n))
    for a, b, k in h.pairs():
        avail = k - (1 if (a, b) == (u, v) else 0)
        if avail >= 1:
            support.add_edge(a, b)
    mate = nx.max_weight_matching(support, maxcardinality=True)
    if 2 * len(mate) != h.n:
        raise NoPerfectMatching(
            f"no perfect matching of {h!r} avoiding copy {e}"
        )
    chosen: set[EdgeCopy] = set()
    for a, b in mate:
        a, b = _normalize_pair(a, b)
        copy = 0
        if (a, b) == (u, v) and c == 0:
            copy = 1
        chosen.add((a, b, copy))
    return Matching(frozenset(chosen))


def two_factor_containing(h: Multigraph, e: EdgeCopy) -> list[list[EdgeCopy]]:
    """Edge-disjoint cycles covering all vertices of cubic h, containing e.

    The 2-factor is the complement of ``perfect_matching_avoiding(h, e)``;
    cycles are returned as closed edge-copy walks (consecutive copies share
    a vertex). A doubled pair yields a 2-cycle of its two copies.
    """
    if not is_cubic(h):
        raise ValueError("two_factor_containing requires a cubic multigraph")
    matching = perfect_matching_avoiding(h, e)
    remaining: dict[int, list[EdgeCopy]] = {v: [] for v in range(h.n)}
    for copy in h.edge_copies():
        if copy in matching.edges:
            continue
        remaining[copy[0]].append(copy)
        remaining[copy[1]].append(copy)
    for v, incident in remaining.items():
        if len(incident) != 2:
            raise NoPerfectMatching(
                f"matching complement is not 2-regular at vertex {v}"
            )
    cycles: list[list[EdgeCopy]] = []
    used: set[EdgeCopy] = set()
    for start in range(h.n):
        for first in remaining[start]:
            if first in used:
                continue
            cycle = [first]
            used.add(first)
            v = first[1] if first[0] == start else first[0]
            while v != start:
                nxt = next(c for c in remaining[v] if c not in used)
                cycle.append(nxt)
                used.add(nxt)
                v = nxt[1] if nxt[0] == v else nxt[0]
            cycles.append(cycle)
    u, w, c = e
    u, w = _normalize_pair(u, w)
    assert any((u, w, c) in cyc for cyc in cycles), "anchor edge not in factor"
    return cycles


def cycle_vertices(cycle: Sequence[EdgeCopy], start: int | None = None) -> list[int]:
    """Vertex sequence of a closed edge-copy walk, beginning at ``start``."""
    if len(cycle) == 2 and cycle[0][:2] == cycle[1][:2]:
        u, v, _ = cycle[0]
        if start is not None and start == v:
            return [v, u]
        return [u, v]
    verts = []
    first, second = cycle[0], cycle[1]
    shared = set(first[:2]) & set(second[:2])
    v = (set(first[:2]) - shared).pop()
    for copy in cycle:
        verts.append(v)
        v = copy[1] if copy[0] == v else copy[0]
    if start is not None:
        i = verts.index(start)
        verts = verts[i:] + verts[:i]
    return verts


# --- small constructors and random instance supply ---


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, combinations(range(n), 2))


def star_graph(leaves: int) -> SimpleGraph:
    return SimpleGraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cube_graph() -> SimpleGraph:
    """The 3-dimensional hypercube Q_3."""
    edges = []
    for v in range(8):
        for bit in range(3):
            w = v ^ (1 << bit)
            if v < w:
                edges.append((v, w))
    return SimpleGraph(8, edges)


def petersen_graph() -> SimpleGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SimpleGraph(10, outer + spokes + inner)


def diamond_graph() -> SimpleGraph:
    """K_4 minus one edge; 0 and 3 are the degree-2 vertices."""
    return SimpleGraph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def random_connected_graph(n: int, rng: random.Random, extra_edge_prob: float = 0.25) -> SimpleGraph:
    """Random spanning tree plus Bernoulli extra edges."""
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    for u, v in combinations(range(n), 2):
        if rng.random() < extra_edge_prob:
            edges.append((u, v))
    return SimpleGraph(n, edges)


def random_tree(n: int, rng: random.Random) -> SimpleGraph:
    """Uniform random attachment tree."""
    return SimpleGraph(n, [(rng.randrange(v), v) for v in range(1, n)])


def random_cubic_multigraph(n: int, rng: random.Random) -> Multigraph:
    """Random 2-edge-connected cubic multigraph: a Hamiltonian cycle plus a
    random perfect matching. n must be even and >= 2."""
    if n < 2 or n % 2:
        raise ValueError("cubic multigraph needs an even vertex count >= 2")
    edges: list[tuple[int, int, int]] = []
    if n == 2:
        return Multigraph(2, [(0, 1, 3)])
    for i in range(n):
        edges.append((i, (i + 1) % n, 1))
    verts = list(range(n))
    rng.shuffle(verts)
    for i in range(0, n, 2):
        edges.append((verts[i], verts[i + 1], 1))
    return Multigraph(n, edges)
