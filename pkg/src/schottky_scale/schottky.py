"""Spanning trees and Schottky bases of a quotient graph.

For a maximal subtree ``Y`` and a non-tree edge ``e`` oriented by a dart ``d``
(from ``o(e)`` to ``t(e)``), the free generator ``gamma_e`` translates along a
line projecting to the closed walk ``d`` followed by the ``Y``-geodesic from
``t(e)`` back to ``o(e)``.  Its translation length is ``d_Y(o(e), t(e)) + 1``.
Only this projected data is kept; group elements are never materialised.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .multigraph import GraphError, Multigraph, canonical_key, canonical_key_from_matrix
from .scale_engine import AxisWalk

SpanningTree = tuple  # sorted tuple of edge ids


@dataclass(frozen=True)
class SchottkyElement:
    edge: int
    dart: int
    translation_length: int
    axis: AxisWalk

    @property
    def is_loop(self) -> bool:
        return len(self.axis) == 1


@dataclass(frozen=True)
class SchottkyBasis:
    elements: tuple[SchottkyElement, ...]
    graph_key: bytes
    tree: SpanningTree
    orientation: tuple[tuple[int, int], ...]  # (edge, dart) pairs

    def __len__(self):
        return len(self.elements)


def spanning_trees(g: Multigraph) -> list[SpanningTree]:
    """All spanning trees as sorted edge-id tuples, in lexicographic order.

    Recursion over edges in id order: each non-loop edge is either contracted
    into the tree (if it joins two components) or deleted, as long as the
    remaining edges can still connect everything.
    """
    if not g.is_connected():
        raise GraphError("spanning trees need a connected graph")
    v = g.vertex_count
    edges = [(i, a, b) for i, (a, b) in enumerate(g.edges) if a != b]
    out = []

    def rec(k, parent, chosen, comps):
        if comps == 1:
            out.append(tuple(chosen))
            return
        if k == len(edges):
            return
        if len(edges) - k < comps - 1:
            return
        i, a, b = edges[k]
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            p2 = parent[:]
            p2[ra] = rb
            chosen.append(i)
            rec(k + 1, p2, chosen, comps - 1)
            chosen.pop()
        if _connectable(v, parent, edges, k + 1, comps):
            rec(k + 1, parent, chosen, comps)

    rec(0, list(range(v)), [], v)
    return out


def _find(parent, x):
    while parent[x] != x:
        x = parent[x]
    return x


def _connectable(v, parent, edges, start, comps):
    if comps == 1:
        return True
    p = parent[:]
    for _, a, b in edges[start:]:
        ra, rb = _find(p, a), _find(p, b)
        if ra != rb:
            p[ra] = rb
            comps -= 1
            if comps == 1:
                return True
    return False


def matrix_tree_count(g: Multigraph) -> int:
    """Number of spanning trees by the matrix-tree theorem (exact arithmetic)."""
    v = g.vertex_count
    if v == 1:
        return 1
    lap = [[Fraction(0)] * v for _ in range(v)]
    for a, b in g.edges:
        if a == b:
            continue
        lap[a][a] += 1
        lap[b][b] += 1
        lap[a][b] -= 1
        lap[b][a] -= 1
    m = [row[1:] for row in lap[1:]]
    size = v - 1
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, size):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, size):
                    m[r][k] -= f * m[c][k]
    return int(det)


def tree_paths(g: Multigraph, tree: SpanningTree):
    """Return ``path(a, b)``: the darts of the ``Y``-geodesic from ``a`` to ``b``."""
    v = g.vertex_count
    tree_darts = {}
    for e in tree:
        a, b = g.edges[e]
        if a == b:
            raise GraphError(f"edge {e} is a loop and cannot lie in a tree")
        tree_darts.setdefault(a, []).append(2 * e)
        tree_darts.setdefault(b, []).append(2 * e + 1)
    parent_dart = [-1] * v  # dart from parent to vertex
    depth = [0] * v
    seen = [False] * v
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        for d in tree_darts.get(u, ()):
            w = g.head(d)
            if not seen[w]:
                seen[w] = True
                parent_dart[w] = d
                depth[w] = depth[u] + 1
                stack.append(w)
    if len(tree) != v - 1 or not all(seen):
        raise GraphError("edge set is not a spanning tree")

    def path(a, b):
        up, down = [], []
        while depth[a] > depth[b]:
            d = parent_dart[a]
            up.append(d ^ 1)
            a = g.tail(d)
        while depth[b] > depth[a]:
            d = parent_dart[b]
            down.append(d)
            b = g.tail(d)
        while a != b:
            d = parent_dart[a]
            up.append(d ^ 1)
            a = g.tail(d)
            d = parent_dart[b]
            down.append(d)
            b = g.tail(d)
        return up + down[::-1]

    return path


def non_tree_edges(g: Multigraph, tree: SpanningTree) -> list[int]:
    t = set(tree)
    return [e for e in range(g.edge_count) if e not in t]


def default_orientation(g: Multigraph, tree: SpanningTree) -> dict[int, int]:
    return {e: 2 * e for e in non_tree_edges(g, tree)}


def all_orientations(g: Multigraph, tree: SpanningTree):
    """Every orientation map on the non-tree edges (``2**n`` of them)."""
    edges = non_tree_edges(g, tree)
    for bits in itertools.product((0, 1), repeat=len(edges)):
        yield {e: 2 * e + b for e, b in zip(edges, bits)}


def schottky_element(g: Multigraph, path, dart: int) -> SchottkyElement:
    walk = (dart,) + tuple(path(g.head(dart), g.tail(dart)))
    return SchottkyElement(dart >> 1, dart, len(walk), AxisWalk(walk))


def schottky_basis(g: Multigraph, tree: SpanningTree, orientation: dict[int, int] | None = None,
                   graph_key: bytes | None = None) -> SchottkyBasis:
    path = tree_paths(g, tree)
    if orientation is None:
        orientation = default_orientation(g, tree)
    elements = []
    for e in non_tree_edges(g, tree):
        if e not in orientation:
            raise GraphError(f"orientation missing non-tree edge {e}")
        d = orientation[e]
        if d >> 1 != e:
            raise GraphError(f"dart {d} does not belong to edge {e}")
        elements.append(schottky_element(g, path, d))
    key = graph_key if graph_key is not None else canonical_key(g)
    return SchottkyBasis(tuple(elements), key, tuple(tree),
                         tuple(sorted((e, orientation[e]) for e in orientation)))


def element_pairs(g: Multigraph, tree: SpanningTree) -> list[tuple[SchottkyElement, SchottkyElement]]:
    """For each non-tree edge, the elements for both orientations (gamma, gamma^-1)."""
    path = tree_paths(g, tree)
    return [(schottky_element(g, path, 2 * e), schottky_element(g, path, 2 * e + 1))
            for e in non_tree_edges(g, tree)]


def max_translation_length(g: Multigraph) -> int:
    best = 0
    for tree in spanning_trees(g):
        path = tree_paths(g, tree)
        for e in non_tree_edges(g, tree):
            a, b = g.edges[e]
            best = max(best, len(path(b, a)) + 1)
    return best


def cyclic_word_class(word) -> tuple:
    """Lexicographically least rotation of a cyclic sequence."""
    word = tuple(word)
    return min(word[i:] + word[:i] for i in range(len(word))) if word else ()


def essential_signature(g: Multigraph, basis: SchottkyBasis, colors) -> list:
    """Sorted multiset of (translation length, colour word up to rotation and reversal).

    The reversed word is read along the reversed walk, so choosing the other
    orientation of a generator does not change its entry.
    """
    out = []
    for el in basis.elements:
        fwd = [colors[d] for d in el.axis.darts]
        bwd = [colors[d] for d in el.axis.reversed().darts]
        out.append((el.translation_length, min(cyclic_word_class(fwd), cyclic_word_class(bwd))))
    return sorted(out)


def tree_kind_key(g: Multigraph, tree: SpanningTree) -> bytes:
    """Isomorphism class of the pair (graph, spanning tree) under graph automorphisms.

    Parallel edges are interchangeable, so a matrix of (tree, non-tree)
    multiplicity pairs determines the pair up to isomorphism.
    """
    v = g.vertex_count
    in_tree = set(tree)
    m = [[0] * v for _ in range(v)]
    for e, (a, b) in enumerate(g.edges):
        w = 16 if e in in_tree else 1
        m[a][b] += w
        if a != b:
            m[b][a] += w
    return canonical_key_from_matrix(m)
