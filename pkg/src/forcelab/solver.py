"""Exact computation of Z, Z_loop, gamma_gr and gamma_gr^Z by search.

Forcing numbers: ascending-cardinality subset search over bitmasks, seeded
with a greedy upper bound and pruned by memoized stalled closures (any
candidate contained in a known non-spanning closed set cannot force).
Grundy numbers: depth-first search over legal extensions with memoization
on the dominated set; once a vertex has played, its closed neighborhood is
dominated, so the dominated set alone is a complete state.

Caps are configuration, not constants; exceeding a cap raises
SizeCapExceeded rather than silently truncating.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .forcing import (
    VertexSequence,
    certificate_to_zsequence,
    closure,
    closure_mask,
    is_forcing_set,
    validate_legal_sequence,
)
from .graphs import SimpleGraph
from .io import graph_to_graph6

DEFAULT_FORCING_CAP = 20
DEFAULT_GRUNDY_CAP = 16


class SizeCapExceeded(Exception):
    """Instance is larger than the configured exact-search cap."""


@dataclass(frozen=True)
class InvariantReport:
    """All four invariants of one graph, with witnesses and duality checks."""

    graph_id: str
    n: int
    z: int
    z_loop: int
    gr: int
    gr_z: int
    witness_z: frozenset[int]
    witness_z_loop: frozenset[int]
    witness_gr: tuple[int, ...]
    witness_gr_z: tuple[int, ...]
    duality_ok: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "graph": self.graph_id,
                "n": self.n,
                "z": self.z,
                "z_loop": self.z_loop,
                "gr": self.gr,
                "gr_z": self.gr_z,
                "witness_z": sorted(self.witness_z),
                "witness_z_loop": sorted(self.witness_z_loop),
                "witness_gr": list(self.witness_gr),
                "witness_gr_z": list(self.witness_gr_z),
                "duality_ok": self.duality_ok,
            },
            separators=(",", ":"),
        )


def _check_instance(g: SimpleGraph, cap: int) -> None:
    if g.n > cap:
        raise SizeCapExceeded(f"n={g.n} exceeds cap {cap}")
    if not g.is_connected():
        raise ValueError("exact search requires a connected graph")


def _greedy_forcing_set(g: SimpleGraph, loop: bool) -> int:
    """Bitmask of a (not necessarily minimum) forcing set, grown greedily."""
    masks = g.adjacency_masks()
    n = g.n
    full = (1 << n) - 1
    chosen = 0
    blue = closure_mask(masks, n, 0, loop) if loop else 0
    while blue != full:
        best_v, best_gain = -1, -1
        for v in range(n):
            bit = 1 << v
            if blue & bit:
                continue
            gain = bin(closure_mask(masks, n, blue | bit, loop)).count("1")
            if gain > best_gain:
                best_v, best_gain = v, gain
        chosen |= 1 << best_v
        blue = closure_mask(masks, n, blue | (1 << best_v), loop)
    return chosen


def _subsets_forcing(g: SimpleGraph, k: int, loop: bool, find_all: bool) -> list[int]:
    """Forcing k-subsets as bitmasks (first one only unless find_all)."""
    masks = g.adjacency_masks()
    n = g.n
    full = (1 << n) - 1
    found: list[int] = []
    stalled: list[int] = []
    for combo in combinations(range(n), k):
        s = 0
        for v in combo:
            s |= 1 << v
        if any(s & b == s for b in stalled):
            continue
        final = closure_mask(masks, n, s, loop)
        if final == full:
            found.append(s)
            if not find_all:
                return found
        elif len(stalled) < 4096 and not any(final & b == final for b in stalled):
            stalled.append(final)
    return found


def _mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def forcing_number(
    g: SimpleGraph, rule: str = "std", cap: int = DEFAULT_FORCING_CAP
) -> tuple[int, frozenset[int]]:
    """Minimum forcing-set size for the rule, with a verified witness."""
    _check_instance(g, cap)
    loop = rule == "loop"
    ub_mask = _greedy_forcing_set(g, loop)
    ub = bin(ub_mask).count("1")
    for k in range(0, ub):
        hits = _subsets_forcing(g, k, loop, find_all=False)
        if hits:
            witness = _mask_to_set(hits[0])
            assert is_forcing_set(g, witness, rule)
            return k, witness
    witness = _mask_to_set(ub_mask)
    assert is_forcing_set(g, witness, rule)
    return ub, witness


def enumerate_minimum_forcing_sets(
    g: SimpleGraph, rule: str = "std", cap: int = DEFAULT_FORCING_CAP
) -> list[frozenset[int]]:
    """Every minimum-size forcing set, each verified."""
    k, _ = forcing_number(g, rule, cap)
    loop = rule == "loop"
    hits = _subsets_forcing(g, k, loop, find_all=True)
    out = [_mask_to_set(h) for h in hits]
    assert all(is_forcing_set(g, s, rule) for s in out)
    return out


def grundy_number(
    g: SimpleGraph, variant: str = "gr", cap: int = DEFAULT_GRUNDY_CAP
) -> tuple[int, VertexSequence]:
    """Maximum legal-sequence length for the variant, with a witness.

    variant "gr": closed-neighborhood sequences (Grundy domination number).
    variant "grz": Z-sequences (every element past the first footprints an
    open neighbor).
    """
    if variant not in ("gr", "grz"):
        raise ValueError(f"unknown variant {variant!r}")
    _check_instance(g, cap)
    masks = g.adjacency_masks()
    n = g.n
    closed = tuple(masks[v] | (1 << v) for v in range(n))
    z_variant = variant == "grz"
    memo: dict[int, tuple[int, int]] = {}

    def best_from(dom: int) -> tuple[int, int]:
        """(best additional length, best first move or -1) from dominated set."""
        hit = memo.get(dom)
        if hit is not None:
            return hit
        best_len, best_move = 0, -1
        for x in range(n):
            if z_variant:
                if not masks[x] & ~dom:
                    continue
            else:
                if not closed[x] & ~dom:
                    continue
            length = 1 + best_from(dom | closed[x])[0]
            if length > best_len:
                best_len, best_move = length, x
        memo[dom] = (best_len, best_move)
        return best_len, best_move

    # First element is unconstrained in both variants; on a connected graph
    # with n >= 2 the uniform move rule already admits every vertex.
    if n == 1:
        if z_variant:
            return 0, VertexSequence((), variant="z")
        return 1, VertexSequence((0,), variant="closed")

    length, move = best_from(0)
    seq = []
    dom = 0
    while move != -1:
        seq.append(move)
        dom |= closed[move]
        move = best_from(dom)[1]
    assert len(seq) == length
    vs = VertexSequence(tuple(seq), variant="z" if z_variant else "closed")
    ok, _ = validate_legal_sequence(g, vs)
    assert ok
    return length, vs


def check_duality(
    g: SimpleGraph,
    forcing_cap: int = DEFAULT_FORCING_CAP,
    grundy_cap: int = DEFAULT_GRUNDY_CAP,
) -> InvariantReport:
    """All four invariants by independent searches, plus duality flags."""
    z, wz = forcing_number(g, "std", forcing_cap)
    z_loop, wzl = forcing_number(g, "loop", forcing_cap)
    gr, wgr = grundy_number(g, "gr", grundy_cap)
    gr_z, wgrz = grundy_number(g, "grz", grundy_cap)
    return InvariantReport(
        graph_id=graph_to_graph6(g),
        n=g.n,
        z=z,
        z_loop=z_loop,
        gr=gr,
        gr_z=gr_z,
        witness_z=wz,
        witness_z_loop=wzl,
        witness_gr=tuple(wgr.seq),
        witness_gr_z=tuple(wgrz.seq),
        duality_ok=(z + gr_z == g.n) and (z_loop + gr == g.n),
    )


def min_degree_bound_check(g: SimpleGraph, cap: int = DEFAULT_GRUNDY_CAP) -> bool:
    """gamma_gr(G) <= n(G) - delta(G); must hold on every instance."""
    gr, _ = grundy_number(g, "gr", cap)
    return gr <= g.n - g.min_degree()


def zsequence_from_minimum_set(
    g: SimpleGraph, s: frozenset[int]
) -> VertexSequence:
    """Z-sequence complement-dual to a standard forcing set s."""
    _, cert = closure(g, s, "std")
    return certificate_to_zsequence(g, cert)
