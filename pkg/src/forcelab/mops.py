"""Maximal outerplanar graphs: validation, structure, bounds and generators.

A Mop is a triangulated convex polygon: the boundary is implicitly the
cyclic order 0, 1, ..., n-1 and the chords are the interior diagonals. The
embedding is part of the input on purpose: separator-triangle detection
depends on which face is the outer one.

Structure glossary (weak dual H is always a tree here):
  separator triangle  interior face with no edge on the outer cycle;
                      equivalently a dual node of degree 3. t counts them.
  serpentine          t = 0 (the dual is a path).
  serpentine leaf     triangles of a maximal dual chain hanging between a
                      dual leaf and a separator triangle (separator
                      excluded). There are h of them, and h = n_2 when
                      t >= 1.
  fan leaf            serpentine leaf whose triangles all share a common
                      vertex lying on the adjacent separator triangle
                      (equivalently, an endpoint of the attaching edge);
                      h_F counts them. Single-triangle leaves qualify.
  serpentine path     triangles of a maximal dual chain joining two
                      separator triangles.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Sequence

from .graphs import SimpleGraph


class MopError(ValueError):
    pass


class CrossingChords(MopError):
    pass


class NotTriangulated(MopError):
    """Too few chords: some interior face is not a triangle."""


class NotMaximal(MopError):
    """A chord could be added without crossing (duplicate of too-few case)."""


@dataclass(frozen=True)
class Mop:
    """Validated polygon triangulation; construct via validate_mop."""

    n: int
    chords: tuple[tuple[int, int], ...]

    def graph(self) -> SimpleGraph:
        boundary = [(i, (i + 1) % self.n) for i in range(self.n)]
        return SimpleGraph(self.n, boundary + list(self.chords))

    def boundary_edges(self) -> set[tuple[int, int]]:
        out = set()
        for i in range(self.n):
            a, b = i, (i + 1) % self.n
            out.add((min(a, b), max(a, b)))
        return out


@dataclass(frozen=True)
class MopStructure:
    """Everything analyze() derives from a Mop."""

    faces: tuple[tuple[int, int, int], ...]
    dual_adjacency: tuple[tuple[int, ...], ...]
    separator_triangles: tuple[int, ...]  # face indices
    t: int
    delta_components: int  # c: components of the separator subgraph
    serpentine: bool
    serpentine_leaves: tuple[tuple[int, ...], ...]  # face indices, ear first
    leaf_separator: tuple[int, ...]  # attached separator face per leaf
    fan_leaf_flags: tuple[bool, ...]
    h: int
    n2: int
    h_f: int
    serpentine_paths: tuple[tuple[int, ...], ...]
    path_separators: tuple[tuple[int, ...], ...]  # separator faces at path ends
    face_component: dict[int, int]  # separator face -> component id


def _chords_cross(a: tuple[int, int], c: tuple[int, int]) -> bool:
    (p, q), (r, s) = a, c
    return (p < r < q < s) or (r < p < s < q)


def validate_mop(n: int, chords: Sequence[Sequence[int]]) -> Mop:
    """Validate a polygon triangulation given as (n, chord list)."""
    if n < 3:
        raise MopError("a MOP needs at least 3 vertices")
    seen: set[tuple[int, int]] = set()
    for e in chords:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise MopError(f"chord ({u},{v}) out of range")
        u, v = min(u, v), max(u, v)
        if v - u == 1 or (u == 0 and v == n - 1):
            raise MopError(f"({u},{v}) is a boundary edge, not a chord")
        if (u, v) in seen:
            raise MopError(f"duplicate chord ({u},{v})")
        seen.add((u, v))
    ordered = tuple(sorted(seen))
    for i, a in enumerate(ordered):
        for c in ordered[i + 1 :]:
            if _chords_cross(a, c):
                raise CrossingChords(f"chords {a} and {c} cross")
    if len(ordered) < n - 3:
        raise NotTriangulated(
            f"{len(ordered)} chords; a triangulation of an {n}-gon needs {n - 3}"
        )
    if len(ordered) > n - 3:
        # Cannot happen with non-crossing chords; kept for defensive clarity.
        raise NotMaximal("too many chords")
    return Mop(n, ordered)


def faces_of(m: Mop) -> list[tuple[int, int, int]]:
    """The n-2 triangular faces, each as a sorted vertex triple."""
    edge_set = set(m.chords) | m.boundary_edges()
    faces: list[tuple[int, int, int]] = []

    def rec(a: int, b: int) -> None:
        if b - a < 2:
            return
        k = next(
            (
                k
                for k in range(a + 1, b)
                if (a, k) in edge_set and (k, b) in edge_set
            ),
            None,
        )
        if k is None:
            raise NotTriangulated(f"no triangle on edge ({a},{b})")
        faces.append((a, k, b))
        rec(a, k)
        rec(k, b)

    rec(0, m.n - 1)
    assert len(faces) == m.n - 2
    return faces


def analyze(m: Mop) -> MopStructure:
    faces = faces_of(m)
    boundary = m.boundary_edges()
    edge_faces: dict[tuple[int, int], list[int]] = {}
    for i, (a, b, c) in enumerate(faces):
        for e in ((a, b), (b, c), (a, c)):
            edge_faces.setdefault(e, []).append(i)
    dual: list[set[int]] = [set() for _ in faces]
    for e, fs in edge_faces.items():
        if len(fs) == 2:
            dual[fs[0]].add(fs[1])
            dual[fs[1]].add(fs[0])

    separators = tuple(
        i
        for i, (a, b, c) in enumerate(faces)
        if not any(e in boundary for e in ((a, b), (b, c), (a, c)))
    )
    assert all(len(dual[i]) == 3 for i in separators)
    t = len(separators)

    # Components of the subgraph formed by the separator triangles: two
    # separators are connected exactly when they share a vertex (the
    # subgraph has no other edges).
    parent = {i: i for i in separators}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    vert_owner: dict[int, int] = {}
    for i in separators:
        for v in faces[i]:
            if v in vert_owner:
                parent[find(i)] = find(vert_owner[v])
            else:
                vert_owner[v] = i
    roots = sorted({find(i) for i in separators})
    comp = {i: roots.index(find(i)) for i in separators}
    c = len(roots)

    g = m.graph()
    n2 = sum(1 for v in range(m.n) if g.degree(v) == 2)

    leaves: list[tuple[int, ...]] = []
    leaf_sep: list[int] = []
    paths: list[tuple[int, ...]] = []
    path_sep: list[tuple[int, ...]] = []
    if t >= 1:
        sep_set = set(separators)
        visited: set[int] = set()
        for i in range(len(faces)):
            if i in sep_set or i in visited:
                continue
            # Chain component of non-separator faces.
            stack, chain = [i], set()
            while stack:
                f = stack.pop()
                if f in chain:
                    continue
                chain.add(f)
                stack.extend(x for x in dual[f] if x not in sep_set and x not in chain)
            visited |= chain
            attached = sorted(
                {s for f in chain for s in dual[f] if s in sep_set}
            )
            endpoints = [f for f in chain if len(dual[f]) <= 1]
            if endpoints:
                # Hangs off one separator: a serpentine leaf; order ear first.
                ear = min(endpoints)
                ordered = [ear]
                prev = None
                cur = ear
                while True:
                    nxts = [x for x in dual[cur] if x != prev and x in chain]
                    if not nxts:
                        break
                    prev, cur = cur, nxts[0]
                    ordered.append(cur)
                leaves.append(tuple(ordered))
                leaf_sep.append(attached[0])
            else:
                paths.append(tuple(sorted(chain)))
                path_sep.append(tuple(attached))

    # A leaf is a fan leaf when its triangles share a vertex that lies on
    # the adjacent separator triangle. (A common vertex necessarily sits on
    # the attaching triangle, so it is on the separator iff it is an
    # endpoint of the shared edge.)
    fan_flags = tuple(
        bool(
            set.intersection(*(set(faces[f]) for f in leaf))
            & set(faces[sep])
        )
        for leaf, sep in zip(leaves, leaf_sep)
    )

    return MopStructure(
        faces=tuple(faces),
        dual_adjacency=tuple(tuple(sorted(s)) for s in dual),
        separator_triangles=separators,
        t=t,
        delta_components=c,
        serpentine=(t == 0),
        serpentine_leaves=tuple(leaves),
        leaf_separator=tuple(leaf_sep),
        fan_leaf_flags=fan_flags,
        h=len(leaves),
        n2=n2,
        h_f=sum(fan_flags),
        serpentine_paths=tuple(paths),
        path_separators=tuple(path_sep),
        face_component=comp,
    )


@dataclass(frozen=True)
class MopBounds:
    """Every applicable closed-form bound, with its precondition recorded."""

    n: int
    t: int
    c: int
    n2: int
    h_f: int
    exact_z: int | None
    exact_z_loop: int | None
    exact_source: str | None
    upper_z: int  # 2*ceil((n2 + c - 1)/2), always applicable
    lower_single_component: int | None  # ceil(n2/2) when t>=1 and c == 1
    lower_general: int | None  # floor(n2'/2) - 2c' when t >= 1
    n2_prime: int | None
    c_prime: int | None

    def z_lower(self) -> int:
        cands = [1]
        if self.exact_z is not None:
            cands.append(self.exact_z)
        if self.lower_single_component is not None:
            cands.append(self.lower_single_component)
        if self.lower_general is not None:
            cands.append(self.lower_general)
        return max(cands)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "t": self.t,
                "c": self.c,
                "n2": self.n2,
                "h_f": self.h_f,
                "exact_z": self.exact_z,
                "exact_z_loop": self.exact_z_loop,
                "exact_source": self.exact_source,
                "upper_z": self.upper_z,
                "lower_single_component": self.lower_single_component,
                "lower_general": self.lower_general,
                "n2_prime": self.n2_prime,
                "c_prime": self.c_prime,
            },
            separators=(",", ":"),
        )


def bounds_report(m: Mop, structure: MopStructure | None = None) -> MopBounds:
    s = structure if structure is not None else analyze(m)
    exact_z = exact_z_loop = None
    source = None
    if s.serpentine:
        exact_z = exact_z_loop = 2
        source = "serpentine"
    elif s.t == 1:
        exact_z = exact_z_loop = 3 if s.h_f >= 1 else 4
        source = "one-separator"
    upper = 2 * -(-(s.n2 + s.delta_components - 1) // 2)
    lower_single = None
    if s.t >= 1 and s.delta_components == 1:
        lower_single = -(-s.n2 // 2)
    lower_general = n2p = cp = None
    if s.t >= 1:
        per_comp_paths = [0] * s.delta_components
        for ends in s.path_separators:
            for comp_id in sorted({s.face_component[e] for e in ends}):
                per_comp_paths[comp_id] += 1
        chosen = {i for i, k in enumerate(per_comp_paths) if k == 1}
        cp = len(chosen)
        n2p = sum(
            1
            for sep in s.leaf_separator
            if s.face_component[sep] in chosen
        )
        lower_general = n2p // 2 - 2 * cp
    return MopBounds(
        n=m.n,
        t=s.t,
        c=s.delta_components,
        n2=s.n2,
        h_f=s.h_f,
        exact_z=exact_z,
        exact_z_loop=exact_z_loop,
        exact_source=source,
        upper_z=upper,
        lower_single_component=lower_single,
        lower_general=lower_general,
        n2_prime=n2p,
        c_prime=cp,
    )


# --- generators ---


class _PolygonBuilder:
    """Grows a triangulation by inserting new vertices on boundary edges."""

    def __init__(self) -> None:
        self.order = [0, 1, 2]
        self.chords: list[tuple[int, int]] = []
        self.next_id = 3

    def glue(self, edge: tuple[int, int]) -> int:
        """New vertex on boundary edge (x, y); the edge becomes a chord."""
        x, y = edge
        i, j = self.order.index(x), self.order.index(y)
        n = len(self.order)
        if (j - i) % n != 1 and (i - j) % n != 1:
            raise ValueError(f"({x},{y}) is not a boundary edge")
        w = self.next_id
        self.next_id += 1
        pos = j if (j - i) % n == 1 else i
        self.order.insert(pos, w)
        self.chords.append((min(x, y), max(x, y)))
        return w

    def grow_strip(self, edge: tuple[int, int], triangles: int, bits: Sequence[int]) -> None:
        """Strip of triangles on `edge`; bits pick the next glue edge.

        After gluing (x, y) -> w the candidates are [(x, w), (y, w)];
        bit 0 keeps the first. All-zero bits give a fan from x.
        """
        x, y = edge
        w = self.glue((x, y))
        for step in range(triangles - 1):
            bit = bits[step] if step < len(bits) else 0
            x, y = ((x, w), (y, w))[bit]
            w = self.glue((x, y))

    def finish(self) -> Mop:
        pos = {v: i for i, v in enumerate(self.order)}
        chords = [(pos[u], pos[v]) for u, v in self.chords]
        return validate_mop(len(self.order), chords)


def strip_bits(pattern: str, triangles: int) -> list[int]:
    """Named strip shapes: fan_edge, fan_inner, zigzag."""
    if triangles <= 1:
        return []
    if pattern == "fan_edge":
        return [0] * (triangles - 1)
    if pattern == "zigzag":
        return [1] * (triangles - 1)
    if pattern == "fan_inner":
        # Fan from the first interior vertex of the strip.
        return [0] + [1] + [0] * (triangles - 3) if triangles >= 3 else [0]
    raise ValueError(f"unknown strip pattern {pattern!r}")


def generate_serpentine(
    triangles: int,
    pattern: str | Sequence[int] | None = None,
    seed: int = 0,
) -> Mop:
    """A MOP whose weak dual is a path of the requested length."""
    if triangles < 1:
        raise ValueError("need at least one triangle")
    if triangles == 1:
        return validate_mop(3, [])
    if pattern is None:
        rng = random.Random(seed)
        bits: Sequence[int] = [rng.randint(0, 1) for _ in range(triangles - 1)]
    elif isinstance(pattern, str):
        bits = strip_bits(pattern, triangles)
    else:
        bits = list(pattern)
    b = _PolygonBuilder()
    b.grow_strip((0, 1), triangles - 1, bits)
    return b.finish()


def generate_one_separator_mop(
    leaf_specs: Sequence[tuple[int, str | Sequence[int]]],
) -> Mop:
    """t = 1 instance: a central triangle with three serpentine leaves.

    leaf_specs are three (triangle count >= 1, strip pattern) pairs; the
    leaves hang on edges (0,1), (1,2), (0,2) of the separator.
    """
    if len(leaf_specs) != 3 or any(k < 1 for k, _ in leaf_specs):
        raise ValueError("need three leaves with >= 1 triangle each")
    b = _PolygonBuilder()
    for edge, (count, pattern) in zip(((0, 1), (1, 2), (0, 2)), leaf_specs):
        bits = (
            strip_bits(pattern, count)
            if isinstance(pattern, str)
            else list(pattern)
        )
        b.grow_strip(edge, count, bits)
    return b.finish()


def generate_random_mop(n: int, seed: int = 0) -> Mop:
    """Random triangulation of the n-gon by recursive ear splitting."""
    if n < 3:
        raise ValueError("need n >= 3")
    rng = random.Random(seed)
    chords: list[tuple[int, int]] = []

    def rec(a: int, b: int) -> None:
        if b - a < 2:
            return
        k = rng.randint(a + 1, b - 1)
        if k - a >= 2:
            chords.append((a, k))
        if b - k >= 2:
            chords.append((k, b))
        rec(a, k)
        rec(k, b)

    rec(0, n - 1)
    return validate_mop(n, chords)


def mop_to_json(m: Mop) -> str:
    return json.dumps(
        {"n": m.n, "chords": [[u, v] for u, v in m.chords]},
        separators=(",", ":"),
    )


def mop_from_json(text: str) -> Mop:
    payload = json.loads(text)
    return validate_mop(payload["n"], payload["chords"])
