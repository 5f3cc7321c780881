"""Explicit graph families, scale volumes and rank-level reports.

The volume of a Schottky basis is the product of its elements' scales.  Since
a generating set may contain ``gamma_e`` or its inverse, each generator
contributes ``min(scale(gamma_e), scale(gamma_e^-1))``.  The graph volume is
the minimum over spanning trees, and ``svol_schottky(n)`` the maximum over
B(n).  It is a lower bound for the scale volume of the free group: envelopes
are restricted to full automorphism groups of covering trees, and generating
sets to Schottky bases (whose volume bounds the minimum from above).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cover_colors import refine_dart_colors
from .enumeration import enumerate_rank, enumerate_rank_keys
from .multigraph import GraphError, Multigraph, build_multigraph, canonical_key, graph_from_key
from .scale_engine import ScaleValue, ramification_profile, scale_hyperbolic
from .schottky import element_pairs, spanning_trees, tree_kind_key

# -- families ------------------------------------------------------------------


def build_rose(n: int) -> Multigraph:
    """One vertex with ``n`` loops (degree ``2n``)."""
    if n < 1:
        raise GraphError("rose needs at least one loop")
    return build_multigraph(1, [(0, 0)] * n)


def build_bs(s: int, n: int) -> Multigraph:
    """Two-vertex graph whose loop generators at vertex 0 have scale ``s``.

    Vertex 0 carries ``(s+1)/2`` loops.  When ``s == n - 1`` the vertices are
    joined by two edges and vertex 1 carries ``n/2 - 1`` loops; otherwise by a
    single edge with ``n - (s+1)/2`` loops at vertex 1.  ``s == 2n - 1``
    gives the rose.
    """
    if n < 2:
        raise GraphError("rank must be at least 2")
    if s % 2 == 0 or not 3 <= s <= 2 * n - 1:
        raise GraphError(f"s must be odd with 3 <= s <= {2 * n - 1}, got {s}")
    if s == 2 * n - 1:
        return build_rose(n)
    half = (s + 1) // 2
    if s == n - 1:
        links, far = 2, n // 2 - 1
    else:
        links, far = 1, n - half
    edges = [(0, 0)] * half + [(0, 1)] * links + [(1, 1)] * far
    return build_multigraph(2, edges)


def build_cycle_gadget(n: int) -> Multigraph:
    """``2(n-1)`` vertices on a cycle, consecutive ones joined by 1, 2, 1, 2, ... edges."""
    if n < 2:
        raise GraphError("rank must be at least 2")
    size = 2 * (n - 1)
    edges = []
    for i in range(size):
        edges.extend([(i, (i + 1) % size)] * (1 if i % 2 == 0 else 2))
    return build_multigraph(size, edges)


# -- per-graph scales ------------------------------------------------------------


class GraphScales:
    """Scales of Schottky elements of one graph, memoised by axis walk."""

    def __init__(self, g: Multigraph):
        self.graph = g
        self.colors = refine_dart_colors(g)
        self._memo: dict = {}

    def profile(self, element):
        axis = element.axis
        hit = self._memo.get(axis.darts)
        if hit is None:
            prof = ramification_profile(self.graph, self.colors, axis)
            hit = (prof, scale_hyperbolic(prof))
            self._memo[axis.darts] = hit
        return hit[0]

    def scale(self, element) -> ScaleValue:
        self.profile(element)
        return self._memo[element.axis.darts][1]


@dataclass
class TreeVolume:
    tree: tuple
    volume: int
    # (edge, scale of gamma_e, scale of gamma_e^-1, translation length)
    elements: list = field(default_factory=list)


@dataclass
class GraphVolume:
    key: bytes
    vertex_count: int
    edge_count: int
    trees: list
    volume: int
    best_tree: tuple
    primes: set
    asymmetric: int = 0  # elements with scale(gamma) != scale(gamma^-1)

    def to_dict(self, with_trees: bool = False) -> dict:
        d = {
            "key": self.key.hex(),
            "vertices": self.vertex_count,
            "edges": self.edge_count,
            "tree_count": len(self.trees),
            "volume": str(self.volume),
            "best_tree": list(self.best_tree),
            "primes": sorted(self.primes),
            "asymmetric_elements": self.asymmetric,
        }
        if with_trees:
            d["trees"] = [
                {"tree": list(t.tree), "volume": str(t.volume),
                 "elements": [{"edge": e, "scale": str(a), "inverse_scale": str(b), "translation_length": m}
                              for e, a, b, m in t.elements]}
                for t in self.trees
            ]
        return d


def schottky_volume(g: Multigraph, key: bytes | None = None) -> GraphVolume:
    if min(g.degrees()) < 3:
        raise GraphError("graph has a vertex of degree below 3")
    gs = GraphScales(g)
    trees = []
    primes: set[int] = set()
    asym = 0
    for tree in spanning_trees(g):
        vol = 1
        rows = []
        for fwd, inv in element_pairs(g, tree):
            a, b = gs.scale(fwd), gs.scale(inv)
            primes |= a.primes | b.primes
            vol *= min(a.value, b.value)
            asym += a.value != b.value
            rows.append((fwd.edge, a.value, b.value, fwd.translation_length))
        trees.append(TreeVolume(tree, vol, rows))
    best = min(trees, key=lambda t: (t.volume, t.tree))
    return GraphVolume(key if key is not None else canonical_key(g), g.vertex_count, g.edge_count,
                       trees, best.volume, best.tree, primes, asym)


def _volume_for_key(key):
    return schottky_volume(graph_from_key(key), key)


def rank_volumes(n: int, jobs: int = 1) -> list[GraphVolume]:
    """Volumes of every graph of B(n), in canonical enumeration order."""
    if n not in _volume_cache:
        keys = enumerate_rank_keys(n, jobs)
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                _volume_cache[n] = tuple(pool.map(_volume_for_key, keys, chunksize=4))
        else:
            _volume_cache[n] = tuple(_volume_for_key(k) for k in keys)
    return list(_volume_cache[n])


_volume_cache: dict[int, tuple] = {}


# -- rank reports ----------------------------------------------------------------


def volume_bracket(n: int) -> tuple[int, int]:
    return (2 * n - 1) ** n, (2 * n - 1) ** (2 * n * (n - 1))


def conjectured_svol(n: int) -> float:
    """Heuristic asymptotic value reported for reference only."""
    return 2.0 ** (n * (2 * math.log2(n / 3) + 3))


def primes_up_to(m: int) -> set[int]:
    return {p for p in range(2, m + 1) if all(p % q for q in range(2, math.isqrt(p) + 1))}


@dataclass
class VolumeReport:
    rank: int
    entries: list
    svol_schottky: int
    argmax_key: bytes
    bracket: tuple
    conjecture: float
    prime_spectrum: set

    @property
    def in_bracket(self) -> bool:
        lo, hi = self.bracket
        return lo <= self.svol_schottky <= hi

    @property
    def rose_volume(self) -> int:
        rose = canonical_key(build_rose(self.rank))
        return next(e.volume for e in self.entries if e.key == rose)

    def to_dict(self) -> dict:
        lo, hi = self.bracket
        return {
            "rank": self.rank,
            "graph_count": len(self.entries),
            "svol_schottky": str(self.svol_schottky),
            "svol_schottky_role": "lower bound for s-vol(F_n); each graph volume is an upper bound for its vol",
            "argmax_graph": self.argmax_key.hex(),
            "bracket": {"lower": str(lo), "upper": str(hi)},
            "in_bracket": self.in_bracket,
            "rose_volume": str(self.rose_volume),
            "lower_bound_attained_by_rose": self.rose_volume == lo,
            "conjecture": {"value": self.conjecture, "normative": False},
            "prime_spectrum": sorted(self.prime_spectrum),
            "asymmetric_elements": sum(e.asymmetric for e in self.entries),
            "graphs": [e.to_dict() for e in self.entries],
        }


def svol_report(n: int, jobs: int = 1) -> VolumeReport:
    entries = rank_volumes(n, jobs)
    top = max(entries, key=lambda e: (e.volume, e.key))
    spectrum = set().union(*(e.primes for e in entries))
    return VolumeReport(n, entries, top.volume, top.key, volume_bracket(n), conjectured_svol(n), spectrum)


@dataclass
class PrimeSpectrum:
    rank: int
    primes: set
    expected: set
    witnesses: dict  # prime -> description of an element whose scale it divides

    @property
    def matches(self) -> bool:
        return self.primes == self.expected

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "primes": sorted(self.primes),
            "expected": sorted(self.expected),
            "matches": self.matches,
            "witnesses": {str(p): w for p, w in sorted(self.witnesses.items())},
        }


def family_witness(p: int, n: int) -> dict:
    """Element of an explicit family whose scale is divisible by ``p``."""
    if p == 2:
        g = build_cycle_gadget(n)
        family = {"family": "cycle", "rank": n}
    else:
        g = build_bs(p, n)
        family = {"family": "bs", "rank": n, "s": p}
    gs = GraphScales(g)
    tree = spanning_trees(g)[0]
    hits = [fwd for fwd, _ in element_pairs(g, tree) if gs.scale(fwd).value % p == 0]
    if not hits:
        raise AssertionError(f"no element of the {family['family']} family has scale divisible by {p}")
    el = max(hits, key=lambda x: (x.translation_length, -x.edge))
    return dict(family, tree=list(tree), edge=el.edge, dart=el.dart,
                translation_length=el.translation_length, scale=str(gs.scale(el).value))


def prime_spectrum(n: int, jobs: int = 1) -> PrimeSpectrum:
    """Primes dividing some scale of some Schottky element over B(n)."""
    entries = rank_volumes(n, jobs)
    found = set().union(*(e.primes for e in entries))
    expected = primes_up_to(2 * n - 1)
    witnesses = {p: family_witness(p, n) for p in sorted(expected)}
    return PrimeSpectrum(n, found, expected, witnesses)


# -- verification of the explicit bounds ---------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    rank: int
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def check_rose(n: int, graphs: list[Multigraph] | None = None) -> list[Check]:
    checks = []
    if graphs is not None:
        one_vertex = [g for g in graphs if g.vertex_count == 1]
        rose_key = canonical_key(build_rose(n))
        checks.append(Check("rose is the unique one-vertex graph",
                            len(one_vertex) == 1 and canonical_key(one_vertex[0]) == rose_key,
                            f"{len(one_vertex)} one-vertex graph(s)"))
        tops = [g for g in graphs if max(g.degrees()) == 2 * n]
        over = [g for g in graphs if max(g.degrees()) > 2 * n]
        checks.append(Check("max degree 2n attained only by the rose",
                            not over and len(tops) == 1 and canonical_key(tops[0]) == rose_key,
                            f"{len(tops)} graph(s) of degree {2 * n}, {len(over)} above"))
    rose = build_rose(n)
    gs = GraphScales(rose)
    bad = []
    for tree in spanning_trees(rose):
        for pair in element_pairs(rose, tree):
            for el in pair:
                sv = gs.scale(el)
                if el.translation_length != 1 or sv.value != 2 * n - 1:
                    bad.append((el.dart, el.translation_length, sv.value))
    checks.append(Check(f"rose elements have translation length 1 and scale {2 * n - 1}",
                        not bad, f"violations {bad}" if bad else f"{2 * n} oriented elements"))
    return checks


def check_bs(s: int, n: int) -> Check:
    """Loops at vertex 0 lie outside every tree; each gives scale ``s``."""
    g = build_bs(s, n)
    gs = GraphScales(g)
    problems = []
    for tree in spanning_trees(g):
        hits = 0
        for pair in element_pairs(g, tree):
            fwd = pair[0]
            a, b = g.edges[fwd.edge]
            if not (a == b == 0):
                continue
            for el in pair:
                prof = gs.profile(el)
                sv = gs.scale(el)
                if el.translation_length == 1 and sv.value == s and prof.q == (s,):
                    hits += 1
                else:
                    problems.append((tree, el.dart, el.translation_length, prof.q))
        if hits == 0:
            problems.append((tree, "no loop generator at vertex 0"))
    return Check(f"B({s}) has a length-1 generator of scale {s} in every basis", not problems,
                 f"violations {problems}" if problems else f"ramification {s + 1} on the loop subtree")


def check_cycle_gadget(n: int) -> list[Check]:
    g = build_cycle_gadget(n)
    gs = GraphScales(g)
    target_len, target_scale = 2 * (n - 1), 2 ** (2 * (n - 1))
    missing = []
    trees = spanning_trees(g)
    for tree in trees:
        ok = False
        for pair in element_pairs(g, tree):
            for el in pair:
                if el.translation_length == target_len and gs.scale(el).value == target_scale:
                    ok = True
        if not ok:
            missing.append(tree)
    checks = [Check(f"every tree of B^{target_len} yields length {target_len}, scale {target_scale}",
                    not missing, f"{len(trees)} trees, failing {missing}")]
    kinds = len({tree_kind_key(g, t) for t in trees})
    want = 1 if n == 2 else 2
    checks.append(Check(f"maximal subtrees of B^{target_len} fall into {want} kind(s) up to automorphism",
                        kinds == want, f"{kinds} kind(s)"))
    return checks


def check_translation_bound(n: int, graphs: list[Multigraph]) -> Check:
    from .schottky import max_translation_length

    top = max(max_translation_length(g) for g in graphs)
    return Check(f"max translation length over B({n}) equals {2 * (n - 1)}", top == 2 * (n - 1),
                 f"observed {top}")


def verify_explicit_bounds(n: int, exhaustive: bool = True) -> VerificationReport:
    """Run the rose, B(s) and cycle-gadget families through the pipeline.

    With ``exhaustive`` the enumeration of B(n) is used for the uniqueness and
    translation-length claims.
    """
    graphs = enumerate_rank(n) if exhaustive else None
    checks = check_rose(n, graphs)
    for s in range(3, 2 * n, 2):
        checks.append(check_bs(s, n))
    checks.extend(check_cycle_gadget(n))
    if graphs is not None:
        checks.append(check_translation_bound(n, graphs))
    return VerificationReport(n, checks)
