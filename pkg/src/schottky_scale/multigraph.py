"""Finite multigraphs with loops, stored as darts (half-edges).

Edge ``i`` owns darts ``2*i`` and ``2*i + 1``; dart ``2*i`` is tailed at the
first listed endpoint.  The reversal involution is therefore ``d ^ 1``.
A loop contributes two darts at the same vertex, hence 2 to its degree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import kernels

#: Largest vertex count accepted by :func:`canonical_key`.
CANON_MAX_VERTICES = 12


class GraphError(ValueError):
    """Malformed graph input or a graph violating an operation's precondition."""


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    tails: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _incident: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        tails = []
        for a, b in self.edges:
            tails.append(a)
            tails.append(b)
        incident = [[] for _ in range(self.vertex_count)]
        for d, t in enumerate(tails):
            incident[t].append(d)
        object.__setattr__(self, "tails", tuple(tails))
        object.__setattr__(self, "_incident", tuple(tuple(x) for x in incident))

    # -- darts -----------------------------------------------------------
    @property
    def dart_count(self) -> int:
        return len(self.tails)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @staticmethod
    def rev(d: int) -> int:
        return d ^ 1

    def tail(self, d: int) -> int:
        return self.tails[d]

    def head(self, d: int) -> int:
        return self.tails[d ^ 1]

    def darts_at(self, v: int) -> tuple[int, ...]:
        """Darts whose tail is ``v``."""
        return self._incident[v]

    def continuations(self, d: int) -> list[int]:
        """Non-backtracking successors of dart ``d``."""
        r = d ^ 1
        return [x for x in self._incident[self.tails[r]] if x != r]

    @staticmethod
    def edge_of(d: int) -> int:
        return d >> 1

    def is_loop(self, e: int) -> bool:
        a, b = self.edges[e]
        return a == b

    # -- counts ------------------------------------------------------------
    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self._incident]

    def multiplicity_matrix(self) -> list[list[int]]:
        """Symmetric matrix of edge multiplicities; the diagonal counts loops."""
        m = [[0] * self.vertex_count for _ in range(self.vertex_count)]
        for a, b in self.edges:
            m[a][b] += 1
            if a != b:
                m[b][a] += 1
        return m

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for d in self._incident[u]:
                w = self.head(d)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.vertex_count

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        return Multigraph(self.vertex_count, tuple((perm[a], perm[b]) for a, b in self.edges))

    def to_text(self) -> str:
        lines = [f"v {self.vertex_count}"]
        lines.extend(f"e {a} {b}" for a, b in self.edges)
        return "\n".join(lines) + "\n"


def build_multigraph(vertex_count: int, edge_list: Iterable[Sequence[int]]) -> Multigraph:
    edges = []
    if vertex_count < 0:
        raise GraphError("vertex count must be non-negative")
    for pair in edge_list:
        if len(pair) != 2:
            raise GraphError(f"edge {pair!r} does not have two endpoints")
        a, b = int(pair[0]), int(pair[1])
        if vertex_count == 0:
            raise GraphError("edges given for an empty vertex set")
        if not (0 <= a < vertex_count and 0 <= b < vertex_count):
            raise GraphError(f"edge ({a}, {b}) has an endpoint outside 0..{vertex_count - 1}")
        edges.append((a, b))
    return Multigraph(vertex_count, tuple(edges))


def from_matrix(matrix: Sequence[Sequence[int]]) -> Multigraph:
    """Build a graph from a symmetric multiplicity matrix (diagonal = loops).

    Edges are listed row by row, so the result is deterministic.
    """
    v = len(matrix)
    edges = []
    for i in range(v):
        for j in range(i, v):
            edges.extend([(i, j)] * matrix[i][j])
    return Multigraph(v, tuple(edges))


def betti(g: Multigraph) -> int:
    """Rank of the (free) fundamental group, ``e - v + 1``."""
    if not g.is_connected() or g.vertex_count == 0:
        raise GraphError("betti number requires a nonempty connected graph")
    return g.edge_count - g.vertex_count + 1


# -- canonical form -----------------------------------------------------------

def canonical_key_from_matrix(matrix: Sequence[Sequence[int]]) -> bytes:
    v = len(matrix)
    if v > CANON_MAX_VERTICES:
        raise GraphError(f"canonicalization limited to {CANON_MAX_VERTICES} vertices, got {v}")
    if v == 0:
        return b"\x00"
    flat = [x for row in matrix for x in row]
    if max(flat) > 255:
        raise GraphError("edge multiplicity above 255 cannot be encoded")
    return bytes([v]) + bytes(kernels.canonical_form(v, flat))


def canonical_key(g: Multigraph) -> bytes:
    """Byte string identifying the isomorphism class of ``g``.

    The vertex order is restricted to one compatible with a refined colouring,
    then the adjacency columns are maximised lexicographically by exhaustive
    branch-and-bound search.
    """
    return canonical_key_from_matrix(g.multiplicity_matrix())


def graph_from_key(key: bytes) -> Multigraph:
    """Inverse of :func:`canonical_key` up to isomorphism."""
    v = key[0]
    m = [[0] * v for _ in range(v)]
    pos = 1
    for k in range(v):
        for i in range(k + 1):
            m[i][k] = m[k][i] = key[pos]
            pos += 1
    return from_matrix(m)


def is_isomorphic_bruteforce(g: Multigraph, h: Multigraph) -> bool:
    """Isomorphism test over all vertex bijections; only for tiny graphs."""
    from itertools import permutations

    if g.vertex_count != h.vertex_count or g.edge_count != h.edge_count:
        return False
    mg = g.multiplicity_matrix()
    mh = h.multiplicity_matrix()
    v = g.vertex_count
    for p in permutations(range(v)):
        if all(mg[i][j] == mh[p[i]][p[j]] for i in range(v) for j in range(i, v)):
            return True
    return False


# -- file format ----------------------------------------------------------------

def parse_graph(text: str) -> Multigraph:
    """Parse the line format ``v <count>`` followed by ``e <a> <b>`` records.

    Blank lines and ``#`` comments are ignored.
    """
    vertex_count = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "v" and len(parts) == 2:
                if vertex_count is not None:
                    raise GraphError(f"line {lineno}: duplicate vertex record")
                vertex_count = int(parts[1])
            elif parts[0] == "e" and len(parts) == 3:
                if vertex_count is None:
                    raise GraphError(f"line {lineno}: edge before vertex record")
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise GraphError(f"line {lineno}: unrecognised record {line!r}")
        except ValueError as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: {exc}") from None
    if vertex_count is None:
        raise GraphError("missing vertex record")
    return build_multigraph(vertex_count, edges)


def read_graph(path) -> Multigraph:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        import json

        doc = json.loads(text)
        try:
            return build_multigraph(int(doc["vertices"]), doc["edges"])
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph document: {exc}") from None
    return parse_graph(text)


def write_graph(g: Multigraph, path) -> None:
    Path(path).write_text(g.to_text())


def graph_document(g: Multigraph) -> dict:
    """Structured-document form of the graph file."""
    return {"vertices": g.vertex_count, "edges": [list(e) for e in g.edges]}
