"""Graph serialization: JSON, graph6 and DOT.

JSON schema: ``{"n": int, "edges": [[u, v], ...]}`` for simple graphs and
``{"n": int, "edges": [[u, v, mult], ...]}`` for multigraphs. graph6 follows
the standard ASCII encoding and covers simple graphs only; DOT is emit-only.
"""

from __future__ import annotations

import json

from .graphs import Multigraph, SimpleGraph


class ParseError(Exception):
    """Malformed input; carries an optional byte/char offset."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (offset {offset})"
        super().__init__(message)


def graph_to_json(g: SimpleGraph | Multigraph) -> str:
    if isinstance(g, Multigraph):
        payload = {"n": g.n, "edges": [[u, v, k] for u, v, k in g.pairs()]}
    else:
        payload = {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}
    return json.dumps(payload, separators=(",", ":"))


def graph_from_json(text: str) -> SimpleGraph | Multigraph:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", offset=exc.pos) from exc
    if not isinstance(payload, dict) or "n" not in payload or "edges" not in payload:
        raise ParseError('graph JSON needs "n" and "edges" fields')
    n = payload["n"]
    edges = payload["edges"]
    if not isinstance(n, int) or not isinstance(edges, list):
        raise ParseError('"n" must be an int and "edges" a list')
    is_multi = False
    for e in edges:
        if not isinstance(e, list) or len(e) not in (2, 3):
            raise ParseError(f"edge entry {e!r} must be [u,v] or [u,v,mult]")
        if len(e) == 3:
            is_multi = True
    try:
        if is_multi:
            return Multigraph(n, edges)
        return SimpleGraph(n, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# --- graph6 ---


def _g6_size_bytes(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise ValueError("graph6 supports n <= 258047 here")


def graph_to_graph6(g: SimpleGraph) -> str:
    if isinstance(g, Multigraph):
        raise ValueError("graph6 does not support multigraphs; use JSON")
    n = g.n
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    out = bytearray(_g6_size_bytes(n))
    for i in range(0, len(bits), 6):
        chunk = 0
        for b in bits[i : i + 6]:
            chunk = (chunk << 1) | b
        out.append(chunk + 63)
    return out.decode("ascii")


def graph_from_graph6(text: str) -> SimpleGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    data = s.encode("ascii", errors="replace")
    if not data:
        raise ParseError("empty graph6 string")
    pos = 0
    if data[0] == 126:
        if len(data) < 4 or data[1] == 126:
            raise ParseError("unsupported graph6 size header", offset=0)
        n = 0
        for i in range(1, 4):
            if not (63 <= data[i] <= 126):
                raise ParseError("invalid graph6 byte", offset=i)
            n = (n << 6) | (data[i] - 63)
        pos = 4
    else:
        if not (63 <= data[0] <= 126):
            raise ParseError("invalid graph6 byte", offset=0)
        n = data[0] - 63
        pos = 1
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - pos != need:
        raise ParseError(
            f"graph6 body length {len(data) - pos}, expected {need}", offset=pos
        )
    bits = []
    for i in range(pos, len(data)):
        byte = data[i]
        if not (63 <= byte <= 126):
            raise ParseError("invalid graph6 byte", offset=i)
        val = byte - 63
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    return SimpleGraph(n, edges)


def graph_to_dot(g: SimpleGraph, name: str = "g") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_graph(text: str, fmt: str = "json") -> SimpleGraph | Multigraph:
    if fmt == "json":
        return graph_from_json(text)
    if fmt == "graph6":
        return graph_from_graph6(text)
    raise ParseError(f"unknown format {fmt!r}")
