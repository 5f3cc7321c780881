"""Dart colour refinement on a finite graph.

The colour of a dart stands for the isomorphism type of the branch of the
universal covering tree that lies beyond the dart.  The initial colour is the
degree of the dart's head; each round refines by the multiset of colours of
the non-backtracking continuations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .multigraph import GraphError, Multigraph

#: Default upper limit on the depth accepted by :func:`branch_iso_check`.
BRANCH_DEPTH_BUDGET = 256


@dataclass(frozen=True)
class DartColoring:
    colors: tuple[int, ...]
    rounds: int
    profiles: dict  # colour -> {successor colour: multiplicity}

    @property
    def color_count(self) -> int:
        return len(self.profiles)

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for d, c in enumerate(self.colors):
            out.setdefault(c, []).append(d)
        return out

    def is_stable_for(self, g: Multigraph) -> bool:
        """True if one more refinement round leaves the partition unchanged."""
        if len(self.colors) != g.dart_count:
            return False
        seen = {}
        for d, c in enumerate(self.colors):
            sig = (c, _succ_multiset(g, self.colors, d))
            if seen.setdefault(c, sig) != sig:
                return False
        return True


def _succ_multiset(g, colors, d):
    return tuple(sorted(colors[x] for x in g.continuations(d)))


def _rank(sigs):
    order = {s: k for k, s in enumerate(sorted(set(sigs)))}
    return tuple(order[s] for s in sigs)


def refine_dart_colors(g: Multigraph) -> DartColoring:
    if not g.is_connected():
        raise GraphError("dart colouring needs a connected graph")
    if g.vertex_count and min(g.degrees()) < 3:
        raise GraphError("dart colouring needs minimum degree 3")
    colors = _rank([g.degree(g.head(d)) for d in range(g.dart_count)])
    rounds = 0
    while True:
        new = _rank([(colors[d], _succ_multiset(g, colors, d)) for d in range(g.dart_count)])
        if len(set(new)) == len(set(colors)):
            break
        colors = new
        rounds += 1
    profiles = {}
    for d, c in enumerate(colors):
        if c not in profiles:
            profiles[c] = dict(sorted(Counter(colors[x] for x in g.continuations(d)).items()))
    return DartColoring(colors, rounds, dict(sorted(profiles.items())))


def branch_iso_check(g: Multigraph, d1: int, d2: int, depth: int,
                     budget: int = BRANCH_DEPTH_BUDGET) -> bool:
    """Compare the depth-truncated branches of the cover beyond two darts.

    The branch beyond dart ``d`` is unfolded level by level: its children are
    the branches beyond the non-backtracking continuations of ``d``.  Rooted
    trees are compared by interning sorted child-type tuples, level by level.
    """
    if depth < 0:
        raise GraphError("depth must be non-negative")
    if depth > budget:
        raise GraphError(f"depth {depth} exceeds the expansion budget {budget}")
    # types[d] is the isomorphism type of the branch beyond d truncated at level k
    types = [0] * g.dart_count
    for _ in range(depth):
        table: dict = {}
        types = [table.setdefault(tuple(sorted(types[x] for x in g.continuations(d))), len(table))
                 for d in range(g.dart_count)]
    return types[d1] == types[d2]
