"""Color-change closures, forcing certificates and legal-sequence validation.

Two rules are supported. Under the standard rule a blue vertex with exactly
one white neighbor forces it. Under the loop rule, additionally, a white
vertex all of whose neighbors are blue turns blue. Closures are confluent:
the final blue set does not depend on fire order, so the canonical order
(std forces by smallest (forcer, forced), then loop-saturation forces by
smallest forced id) is a presentation choice only.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Literal

from .graphs import SimpleGraph

Rule = Literal["std", "loop"]
Variant = Literal["closed", "z"]

LOOP_FORCER = "loop"


class DisconnectedGraphError(ValueError):
    """Closures are defined on connected graphs only."""


class DuplicateVertexError(ValueError):
    """A vertex sequence contains a repeated vertex."""


class IncompleteCertificateError(ValueError):
    """Certificate does not witness a complete forcing of the graph."""


class CertificateReplayError(ValueError):
    """A certificate step is illegal at replay time."""


@dataclass(frozen=True)
class ColorState:
    """Blue-vertex set reached by a closure."""

    blue: frozenset[int]

    def is_all_blue(self, g: SimpleGraph) -> bool:
        return len(self.blue) == g.n


@dataclass(frozen=True)
class ForcingStep:
    forcer: int | str  # vertex id, or "loop" for a saturation force
    forced: int
    rule: Rule


@dataclass(frozen=True)
class ForcingCertificate:
    """Initial blue set plus the chronological list of forces."""

    initial: frozenset[int]
    steps: tuple[ForcingStep, ...]

    def final_set(self) -> frozenset[int]:
        return self.initial | {s.forced for s in self.steps}

    def replay(self, g: SimpleGraph) -> frozenset[int]:
        """Re-run the steps, checking each force is legal when fired."""
        blue = set(self.initial)
        for idx, step in enumerate(self.steps):
            if step.forced in blue:
                raise CertificateReplayError(
                    f"step {idx}: vertex {step.forced} forced twice"
                )
            if step.rule == "std":
                if not isinstance(step.forcer, int) or step.forcer not in blue:
                    raise CertificateReplayError(
                        f"step {idx}: forcer {step.forcer} is not blue"
                    )
                white = [w for w in g.neighbors(step.forcer) if w not in blue]
                if white != [step.forced]:
                    raise CertificateReplayError(
                        f"step {idx}: {step.forced} is not the only white "
                        f"neighbor of {step.forcer}"
                    )
            elif step.rule == "loop":
                if any(w not in blue for w in g.neighbors(step.forced)):
                    raise CertificateReplayError(
                        f"step {idx}: vertex {step.forced} has a white neighbor"
                    )
            else:
                raise CertificateReplayError(f"step {idx}: unknown rule {step.rule}")
            blue.add(step.forced)
        return frozenset(blue)

    def to_json(self) -> str:
        return json.dumps(
            {
                "initial": sorted(self.initial),
                "steps": [
                    {"forcer": s.forcer, "forced": s.forced, "rule": s.rule}
                    for s in self.steps
                ],
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "ForcingCertificate":
        payload = json.loads(text)
        steps = tuple(
            ForcingStep(s["forcer"], s["forced"], s["rule"])
            for s in payload["steps"]
        )
        return cls(frozenset(payload["initial"]), steps)


@dataclass(frozen=True)
class VertexSequence:
    """Ordered distinct vertices, in the closed-neighborhood or Z variant."""

    seq: tuple[int, ...]
    variant: Variant = "closed"

    def __post_init__(self) -> None:
        if len(set(self.seq)) != len(self.seq):
            raise DuplicateVertexError("sequence vertices must be distinct")


def _require_connected(g: SimpleGraph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("graph must be connected")


def closure_mask(masks: tuple[int, ...], n: int, start: int, loop: bool) -> int:
    """Fast bitmask closure; no certificate. Hot path for the exact solver."""
    blue = start
    full = (1 << n) - 1
    changed = True
    while changed and blue != full:
        changed = False
        for v in range(n):
            bit = 1 << v
            if blue & bit:
                white = masks[v] & ~blue
                if white and not (white & (white - 1)):
                    blue |= white
                    changed = True
            elif loop and masks[v] & ~blue == 0:
                blue |= bit
                changed = True
    return blue


def _applicable_forces(g: SimpleGraph, blue: set[int], rule: Rule) -> list[ForcingStep]:
    forces = []
    for v in sorted(blue):
        white = [w for w in g.neighbors(v) if w not in blue]
        if len(white) == 1:
            forces.append(ForcingStep(v, white[0], "std"))
    if rule == "loop":
        for w in range(g.n):
            if w not in blue and all(x in blue for x in g.neighbors(w)):
                forces.append(ForcingStep(LOOP_FORCER, w, "loop"))
    return forces


def closure(
    g: SimpleGraph, start: set[int] | frozenset[int], rule: Rule = "std"
) -> tuple[ColorState, ForcingCertificate]:
    """Maximal blue set reachable from start, with a replayable certificate.

    Fires, at each step, the applicable standard force with the smallest
    (forcer, forced) pair, falling back to the loop-saturation force with
    the smallest forced id.
    """
    _require_connected(g)
    start = frozenset(int(v) for v in start)
    if any(not (0 <= v < g.n) for v in start):
        raise ValueError("start set out of range")
    blue = set(start)
    steps: list[ForcingStep] = []
    while True:
        fired = None
        for v in sorted(blue):
            white = [w for w in g.neighbors(v) if w not in blue]
            if len(white) == 1:
                fired = ForcingStep(v, white[0], "std")
                break
        if fired is None and rule == "loop":
            for w in range(g.n):
                if w not in blue and all(x in blue for x in g.neighbors(w)):
                    fired = ForcingStep(LOOP_FORCER, w, "loop")
                    break
        if fired is None:
            break
        steps.append(fired)
        blue.add(fired.forced)
    return ColorState(frozenset(blue)), ForcingCertificate(start, tuple(steps))


def random_order_closure(
    g: SimpleGraph, start: set[int] | frozenset[int], rule: Rule, rng: random.Random
) -> frozenset[int]:
    """Closure firing a uniformly random applicable force at each step.

    Exists to check confluence against the canonical closure.
    """
    _require_connected(g)
    blue = set(start)
    while True:
        forces = _applicable_forces(g, blue, rule)
        if not forces:
            return frozenset(blue)
        blue.add(rng.choice(forces).forced)


def is_forcing_set(
    g: SimpleGraph, s: set[int] | frozenset[int], rule: Rule = "std"
) -> bool:
    """True iff the closure of s colors the whole graph."""
    state, _ = closure(g, s, rule)
    return state.is_all_blue(g)


def validate_legal_sequence(
    g: SimpleGraph, vs: VertexSequence
) -> tuple[bool, list[frozenset[int]]]:
    """Check legality and return the footprint of each element.

    Closed-neighborhood variant: every element after the first must
    footprint something new. Z variant: every element after the first must
    footprint an *open* neighbor (a vertex distinct from itself).
    """
    for v in vs.seq:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range")
    dominated: set[int] = set()
    footprints: list[frozenset[int]] = []
    legal = True
    for i, x in enumerate(vs.seq):
        closed = g.closed_neighborhood(x)
        foot = frozenset(closed - dominated)
        footprints.append(foot)
        if i > 0:
            if vs.variant == "closed":
                if not foot:
                    legal = False
            else:
                if not (foot - {x}):
                    legal = False
        dominated |= closed
    return legal, footprints


def certificate_to_zsequence(
    g: SimpleGraph, cert: ForcingCertificate
) -> VertexSequence:
    """Z-sequence on the complement of the initial set, by reversed forces.

    Requires a standard-rule certificate whose closure is all of V(g).
    """
    if any(s.rule != "std" for s in cert.steps):
        raise IncompleteCertificateError("certificate must use the standard rule")
    cert.replay(g)
    if len(cert.final_set()) != g.n:
        raise IncompleteCertificateError("certificate does not force the whole graph")
    seq = tuple(s.forced for s in reversed(cert.steps))
    vs = VertexSequence(seq, variant="z")
    ok, _ = validate_legal_sequence(g, vs)
    if not ok:
        raise IncompleteCertificateError("reversed force order is not a Z-sequence")
    return vs
