"""Scale values of hyperbolic isometries of a universal covering tree.

For a hyperbolic ``h`` with attracting end ``eps`` and translation length
``m``, the scale with respect to the full automorphism group is the product
``q_1 * ... * q_m``, where ``q_i + 1`` is the degree of the ``i``-th axis
vertex inside the subtree spanned by all axes through ``eps``.  A side branch
at an axis vertex lies in that subtree exactly when it carries an infinite
non-backtracking walk whose dart colours repeat the axis' backward colour
pattern; liveness of such walks is decided on a finite automaton whose
states are ``(dart, phase)`` pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .cover_colors import DartColoring
from .multigraph import GraphError, Multigraph

#: Largest ``periods`` accepted by :func:`oracle_scale`.
ORACLE_PERIOD_BUDGET = 64


@dataclass(frozen=True)
class AxisWalk:
    """Closed non-backtracking dart walk; its direction points to the attracting end."""

    darts: tuple[int, ...]

    def __len__(self):
        return len(self.darts)

    def validate(self, g: Multigraph) -> None:
        m = len(self.darts)
        if m == 0:
            raise GraphError("empty axis walk")
        for i, d in enumerate(self.darts):
            if not 0 <= d < g.dart_count:
                raise GraphError(f"dart {d} not in graph")
            nxt = self.darts[(i + 1) % m]
            if g.head(d) != g.tail(nxt):
                raise GraphError(f"axis walk not closed at position {i}")
            if nxt == Multigraph.rev(d):
                raise GraphError(f"axis walk backtracks at position {i}")

    def vertices(self, g: Multigraph) -> list[int]:
        return [g.tail(d) for d in self.darts]

    def repeat(self, k: int) -> "AxisWalk":
        """Axis of ``h**k``: the same line walked for ``k`` periods."""
        return AxisWalk(self.darts * k)

    def reversed(self) -> "AxisWalk":
        """Axis of ``h**-1``: same line, opposite attracting end."""
        return AxisWalk(tuple(d ^ 1 for d in reversed(self.darts)))


class _Elliptic:
    def __repr__(self):
        return "ELLIPTIC"


#: Marker for an elliptic element (fixes a vertex, scale 1).
ELLIPTIC = _Elliptic()


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class ScaleValue:
    value: int
    factors: dict = field(compare=False)

    @classmethod
    def of(cls, n: int) -> "ScaleValue":
        return cls(n, factorize(n))

    @property
    def primes(self) -> set[int]:
        return set(self.factors)


@dataclass(frozen=True)
class RamificationProfile:
    q: tuple[int, ...]
    # (vertex, live side darts) per axis position, for reporting
    live_branches: tuple[tuple[int, ...], ...] = field(default=(), compare=False)


def _backward_pattern(g, colors, axis):
    # pattern[j]: colour of the dart leaving axis vertex j towards the repelling end
    m = len(axis.darts)
    return [colors[axis.darts[(j - 1) % m] ^ 1] for j in range(m)]


def _automaton(g, colors, pattern):
    """States (dart, phase) with matching colour; phase decreases along walks."""
    m = len(pattern)
    index = {}
    states = []
    for d in range(g.dart_count):
        for j in range(m):
            if colors[d] == pattern[j]:
                index[(d, j)] = len(states)
                states.append((d, j))
    succ = []
    for d, j in states:
        jn = (j - 1) % m
        succ.append([index[(x, jn)] for x in g.continuations(d) if colors[x] == pattern[jn]])
    return index, succ


def ramification_profile(g: Multigraph, colors: DartColoring, axis: AxisWalk) -> RamificationProfile:
    axis.validate(g)
    if not colors.is_stable_for(g):
        raise GraphError("dart colouring is not stable for this graph")
    col = colors.colors
    m = len(axis.darts)
    pattern = _backward_pattern(g, col, axis)
    index, succ = _automaton(g, col, pattern)
    alive = kernels.prune_dead(succ)
    q = []
    live_branches = []
    for i in range(m):
        fwd = axis.darts[i]
        back = axis.darts[(i - 1) % m] ^ 1
        v = g.tail(fwd)
        side = tuple(
            d for d in g.darts_at(v)
            if d != fwd and d != back and (d, i) in index and alive[index[(d, i)]]
        )
        q.append(1 + len(side))
        live_branches.append(side)
    return RamificationProfile(tuple(q), tuple(live_branches))


def scale_hyperbolic(profile: RamificationProfile) -> ScaleValue:
    if not profile.q:
        raise GraphError("empty ramification profile")
    value = 1
    factors: dict[int, int] = {}
    for q in profile.q:
        value *= q
        for p, k in factorize(q).items():
            factors[p] = factors.get(p, 0) + k
    return ScaleValue(value, dict(sorted(factors.items())))


def scale_element(g: Multigraph, colors: DartColoring, elt) -> ScaleValue:
    """Scale of a Schottky element (or of :data:`ELLIPTIC`)."""
    if elt is ELLIPTIC:
        return ScaleValue(1, {})
    axis = elt.axis if hasattr(elt, "axis") else elt
    return scale_hyperbolic(ramification_profile(g, colors, axis))


@dataclass(frozen=True)
class OracleResult:
    indices: tuple[int, ...]
    ratio: Fraction
    stabilized: bool


def oracle_scale(g: Multigraph, colors: DartColoring, axis, periods: int) -> OracleResult:
    """Growth rate of colour-matching backward walks, by exact path counting.

    ``indices[k-1]`` counts non-backtracking walks of length ``k*m`` that leave
    the axis base point away from the attracting end and follow the backward
    colour pattern.  No liveness pruning is applied: dead ends only shift the
    counts by a bounded tail, so the per-period ratio settles at the scale.
    The ratio counts as stabilised when the last three ratios coincide.
    """
    if periods < 2:
        raise GraphError("periods must be at least 2")
    if periods > ORACLE_PERIOD_BUDGET:
        raise GraphError(f"periods {periods} exceeds the budget {ORACLE_PERIOD_BUDGET}")
    if axis is ELLIPTIC:
        return OracleResult((1,) * periods, Fraction(1), True)
    axis = axis.axis if hasattr(axis, "axis") else axis
    axis.validate(g)
    col = colors.colors
    m = len(axis.darts)
    pattern = _backward_pattern(g, col, axis)
    fwd = axis.darts[0]
    counts = {d: 1 for d in g.darts_at(g.tail(fwd)) if d != fwd and col[d] == pattern[0]}
    phase = 0
    indices = []
    for step in range(1, periods * m + 1):
        if step % m == 0:
            indices.append(sum(counts.values()))
        if step == periods * m:
            break
        phase = (phase - 1) % m
        nxt: dict[int, int] = {}
        for d, c in counts.items():
            for x in g.continuations(d):
                if col[x] == pattern[phase]:
                    nxt[x] = nxt.get(x, 0) + c
        counts = nxt
    ratios = [Fraction(indices[k], indices[k - 1]) for k in range(1, len(indices))]
    stabilized = len(ratios) >= 3 and ratios[-1] == ratios[-2] == ratios[-3]
    return OracleResult(tuple(indices), ratios[-1], stabilized)
