"""Exhaustive enumeration of the class B(n).

B(n) is the set of connected multigraphs (loops and parallel edges allowed)
with every vertex of degree at least 3 and first Betti number n.  Counting
``sum(deg) = 2e >= 3v`` together with ``n = e - v + 1`` gives
``v <= 2(n-1)`` and ``e <= 3(n-1)``, so the search is finite.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict
from functools import lru_cache
from typing import Iterator

from .multigraph import GraphError, Multigraph, canonical_key_from_matrix, graph_from_key

log = logging.getLogger(__name__)

#: Ranks above this need ``allow_large=True``.
DEFAULT_MAX_RANK = 7


def max_vertices(n: int) -> int:
    return 2 * (n - 1)


def max_edges(n: int) -> int:
    return 3 * (n - 1)


def degree_sequences(v: int, total: int, low: int = 3) -> Iterator[tuple[int, ...]]:
    """Non-increasing sequences of ``v`` integers ``>= low`` summing to ``total``."""

    def rec(prefix, remaining, slots, cap):
        if slots == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        hi = min(cap, remaining - low * (slots - 1))
        for d in range(hi, low - 1, -1):
            prefix.append(d)
            yield from rec(prefix, remaining - d, slots - 1, d)
            prefix.pop()

    yield from rec([], total, v, total)


def _compositions(total, caps):
    """All vectors ``x`` with ``0 <= x[k] <= caps[k]`` and ``sum(x) == total``."""
    if not caps:
        if total == 0:
            yield ()
        return
    room = sum(caps[1:])
    for x in range(min(total, caps[0]), max(0, total - room) - 1, -1):
        for rest in _compositions(total - x, caps[1:]):
            yield (x,) + rest


def realizations(degrees: tuple[int, ...]) -> Iterator[list[list[int]]]:
    """Symmetric multiplicity matrices (diagonal = loops) with the given degrees.

    Loops count twice toward the degree.  Labelled: isomorphic copies appear.
    """
    v = len(degrees)
    m = [[0] * v for _ in range(v)]
    resid = list(degrees)

    def rec(i):
        if i == v:
            yield [row[:] for row in m]
            return
        r = resid[i]
        later = list(range(i + 1, v))
        for loops in range(r // 2, -1, -1):
            rest = r - 2 * loops
            caps = [resid[j] for j in later]
            if sum(caps) < rest:
                continue
            m[i][i] = loops
            for comp in _compositions(rest, caps):
                for j, x in zip(later, comp):
                    m[i][j] = m[j][i] = x
                    resid[j] -= x
                resid[i] = 0
                yield from rec(i + 1)
                resid[i] = r
                for j, x in zip(later, comp):
                    m[i][j] = m[j][i] = 0
                    resid[j] += x
            m[i][i] = 0

    yield from rec(0)


def _matrix_connected(m):
    v = len(m)
    seen = [False] * v
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        for w in range(v):
            if m[u][w] and not seen[w]:
                seen[w] = True
                stack.append(w)
    return all(seen)


def _check_rank(n, allow_large):
    if n < 2:
        raise GraphError("rank must be at least 2")
    if n > DEFAULT_MAX_RANK and not allow_large:
        raise GraphError(f"rank {n} exceeds the default ceiling {DEFAULT_MAX_RANK}; pass allow_large")


def split_children(key: bytes) -> set[bytes]:
    """Keys of all graphs obtained by splitting one vertex of ``key``'s graph.

    The darts at a vertex ``w`` are divided into two groups of size at least 2;
    one group moves to a new vertex joined to ``w`` by a new edge.  This is the
    inverse of contracting a non-loop edge, and both new vertices keep degree
    at least 3.
    """
    g = graph_from_key(key)
    v = g.vertex_count
    out = set()
    tails = list(g.tails)
    for w in range(v):
        darts = g.darts_at(w)
        d = len(darts)
        if d < 4:
            continue
        rest = darts[1:]
        # darts[0] stays at w, so each unordered split is produced once
        for mask in range(1, 1 << (d - 1)):
            moved = [rest[k] for k in range(d - 1) if mask >> k & 1]
            if len(moved) < 2 or d - len(moved) < 2:
                continue
            new_tails = tails[:]
            for x in moved:
                new_tails[x] = v
            m = [[0] * (v + 1) for _ in range(v + 1)]
            for i in range(0, len(new_tails), 2):
                a, b = new_tails[i], new_tails[i + 1]
                m[a][b] += 1
                if a != b:
                    m[b][a] += 1
            m[w][v] += 1
            m[v][w] += 1
            out.add(canonical_key_from_matrix(m))
    return out


def enumerate_rank_keys(n: int, jobs: int = 1, allow_large: bool = False) -> list[bytes]:
    """Canonical keys of B(n) in deterministic (v, e, key) order."""
    _check_rank(n, allow_large)
    return list(_enumerate_keys_cached(n, jobs))


@lru_cache(maxsize=None)
def _enumerate_keys_cached(n, jobs):
    rose = [[n]]
    level = {canonical_key_from_matrix(rose)}
    found = set(level)
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for v in range(1, max_vertices(n)):
            parents = sorted(level)
            nxt = set()
            if pool is not None:
                for keys in pool.map(split_children, parents, chunksize=8):
                    nxt |= keys
            else:
                for key in parents:
                    nxt |= split_children(key)
            log.debug("rank %d: %d classes on %d vertices", n, len(nxt), v + 1)
            found |= nxt
            level = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    return tuple(sorted(found, key=_order_key))


def _order_key(key):
    v = key[0]
    e = sum(key[1:])
    return (v, e, key)


def enumerate_rank(n: int, jobs: int = 1, allow_large: bool = False) -> list[Multigraph]:
    """One representative per isomorphism class of B(n), deterministic order."""
    return [graph_from_key(k) for k in enumerate_rank_keys(n, jobs, allow_large)]


@dataclass
class EnumerationCertificate:
    rank: int
    graph_count: int
    observed_max_vertices: int
    observed_max_edges: int
    observed_max_degree: int
    max_degree_graph_count: int
    bound_vertices: int
    bound_edges: int
    bound_degree: int
    observed_max_translation_length: int | None = None
    bound_translation_length: int = 0

    @property
    def within_bounds(self) -> bool:
        ok = (
            self.observed_max_vertices <= self.bound_vertices
            and self.observed_max_edges <= self.bound_edges
            and self.observed_max_degree <= self.bound_degree
        )
        if self.observed_max_translation_length is not None:
            ok = ok and self.observed_max_translation_length <= self.bound_translation_length
        return ok

    def to_dict(self) -> dict:
        d = asdict(self)
        d["within_bounds"] = self.within_bounds
        return d


def certificate(n: int, jobs: int = 1, with_translation_lengths: bool = True,
                allow_large: bool = False) -> EnumerationCertificate:
    graphs = enumerate_rank(n, jobs, allow_large)
    max_deg = [max(g.degrees()) for g in graphs]
    top = max(max_deg)
    cert = EnumerationCertificate(
        rank=n,
        graph_count=len(graphs),
        observed_max_vertices=max(g.vertex_count for g in graphs),
        observed_max_edges=max(g.edge_count for g in graphs),
        observed_max_degree=top,
        max_degree_graph_count=sum(1 for d in max_deg if d == top),
        bound_vertices=max_vertices(n),
        bound_edges=max_edges(n),
        bound_degree=2 * n,
        bound_translation_length=2 * (n - 1),
    )
    if with_translation_lengths:
        from .schottky import max_translation_length

        cert.observed_max_translation_length = max(max_translation_length(g) for g in graphs)
    return cert
