"""graph6 and whitespace edge-list I/O."""

from __future__ import annotations

from .graph import Graph, GraphError, build_graph

_MAX_SHORT = 62
_MAX_LONG = 258047


def _encode_n(n: int) -> str:
    if n <= _MAX_SHORT:
        return chr(63 + n)
    if n <= _MAX_LONG:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    raise GraphError(f"graph6 encoding supports at most {_MAX_LONG} vertices")


def encode_graph6(g: Graph) -> str:
    """Encode ``g`` as a graph6 string (no ``>>graph6<<`` header, no newline)."""
    bits = []
    for j in range(1, g.n):
        nb = g.adj[j]
        for i in range(j):
            bits.append(1 if i in nb else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        body.append(chr(63 + val))
    return _encode_n(g.n) + "".join(body)


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise GraphError("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise GraphError("graph6 string contains characters outside 63..126")
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise GraphError("graph6 8-byte length header not supported")
        if len(s) < 4:
            raise GraphError("truncated graph6 length header")
        n = ((ord(s[1]) - 63) << 12) | ((ord(s[2]) - 63) << 6) | (ord(s[3]) - 63)
        data = s[4:]
    else:
        n = ord(s[0]) - 63
        data = s[1:]
    nbits = n * (n - 1) // 2
    if len(data) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(data)} bytes, expected {(nbits + 5) // 6} for n={n}")
    vals = [ord(c) - 63 for c in data]
    pad = len(vals) * 6 - nbits
    if pad and vals[-1] & ((1 << pad) - 1):
        raise GraphError("graph6 padding bits are not zero")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (vals[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def format_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (0-indexed)."""
    rows = [r for r in (ln.split("#", 1)[0].split() for ln in text.splitlines()) if r]
    if not rows:
        raise GraphError("empty edge list")
    try:
        header = [int(x) for x in rows[0]]
        pairs = [tuple(int(x) for x in r) for r in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"non-integer token in edge list: {exc}") from None
    if len(header) != 2:
        raise GraphError("edge list header must be 'n m'")
    n, m = header
    if len(pairs) != m:
        raise GraphError(f"edge list header announces {m} edges, found {len(pairs)}")
    for p in pairs:
        if len(p) != 2:
            raise GraphError(f"edge line must have two endpoints: {' '.join(map(str, p))}")
    return build_graph(n, pairs)


def parse_graph_text(text: str) -> Graph:
    """Auto-detect graph6 versus edge list from the first non-blank character."""
    stripped = text.strip()
    if not stripped:
        raise GraphError("no graph data")
    if stripped[0].isdigit() or stripped[0] == "#":
        return parse_edgelist(stripped)
    return decode_graph6(stripped.splitlines()[0])
