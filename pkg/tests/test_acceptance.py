"""Acceptance criteria 1-8.

Each criterion prints one ``CRITERION k: PASS`` or ``CRITERION k: FAIL`` line
and then asserts.  Run ``pytest tests/test_acceptance.py -s`` to see the lines,
or ``python tests/test_acceptance.py`` for a plain summary.
"""

import itertools
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import brute_force_class, isomorphic  # noqa: E402

from schottky_scale.cover_colors import branch_iso_check, refine_dart_colors  # noqa: E402
from schottky_scale.enumeration import _enumerate_keys_cached, enumerate_rank  # noqa: E402
from schottky_scale.multigraph import Multigraph, canonical_key  # noqa: E402
from schottky_scale.scale_engine import ELLIPTIC, oracle_scale, ramification_profile, scale_element  # noqa: E402
from schottky_scale.schottky import (  # noqa: E402
    all_orientations,
    element_pairs,
    essential_signature,
    max_translation_length,
    schottky_basis,
    spanning_trees,
)
from schottky_scale.volumes import (  # noqa: E402
    build_bs,
    build_cycle_gadget,
    build_rose,
    prime_spectrum,
    primes_up_to,
    schottky_volume,
    svol_report,
)


RESULTS = {}  # criterion -> status line, echoed in the pytest summary


def report(k, failures):
    RESULTS[k] = f"CRITERION {k}: {'PASS' if not failures else 'FAIL'}"
    print(RESULTS[k])
    for f in failures[:10]:
        print(f"  {f}")
    return not failures


def all_elements(g):
    """Every basis element of every spanning tree, both orientations."""
    for tree in spanning_trees(g):
        for fwd, inv in element_pairs(g, tree):
            yield tree, fwd
            yield tree, inv


# -- criteria --------------------------------------------------------------------


def criterion_1():
    fails = []
    _enumerate_keys_cached.cache_clear()
    start = time.perf_counter()
    classes = {n: enumerate_rank(n) for n in range(2, 6)}
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        fails.append(f"enumeration of n=2..5 took {elapsed:.1f}s")
    for n, graphs in classes.items():
        for g in graphs:
            if g.vertex_count > 2 * (n - 1) or g.edge_count > 3 * (n - 1):
                fails.append(f"n={n}: graph {g.edges} breaks the size bounds")
    expected = [build_rose(2), build_cycle_gadget(2), Multigraph(2, ((0, 0), (0, 1), (1, 1)))]
    brute = brute_force_class(2)
    got = classes[2]
    if len(got) != 3 or len(brute) != 3:
        fails.append(f"n=2 count {len(got)}, brute force {len(brute)}")
    for h in expected:
        if sum(isomorphic(g, h) for g in got) != 1 or sum(isomorphic(g, h) for g in brute) != 1:
            fails.append(f"n=2 missing or duplicated {h.edges}")
    return fails


def criterion_2():
    fails = []
    for n in range(2, 7):
        graphs = enumerate_rank(n)
        rose_key = canonical_key(build_rose(n))
        one = [g for g in graphs if g.vertex_count == 1]
        if [canonical_key(g) for g in one] != [rose_key]:
            fails.append(f"n={n}: one-vertex graphs {len(one)}")
        top = [g for g in graphs if max(g.degrees()) == 2 * n]
        if [canonical_key(g) for g in top] != [rose_key]:
            fails.append(f"n={n}: degree 2n reached by {len(top)} graphs")
        if any(max(g.degrees()) > 2 * n for g in graphs):
            fails.append(f"n={n}: degree above 2n")
        rose = build_rose(n)
        col = refine_dart_colors(rose)
        for _, el in all_elements(rose):
            if el.translation_length != 1 or scale_element(rose, col, el).value != 2 * n - 1:
                fails.append(f"n={n}: rose element {el.dart}")
    return fails


def criterion_3():
    fails = []
    for n, s in [(3, 3), (4, 3), (4, 5), (5, 3), (5, 5), (5, 7)]:
        g = build_bs(s, n)
        col = refine_dart_colors(g)
        loops = [e for e, (a, b) in enumerate(g.edges) if a == b]
        good = []
        for e in loops:
            ok = True
            for tree in spanning_trees(g):
                basis = schottky_basis(g, tree)
                els = [x for x in basis.elements if x.edge == e]
                if len(els) != 1:
                    ok = False
                    break
                el = els[0]
                for axis in (el.axis, el.axis.reversed()):
                    prof = ramification_profile(g, col, axis)
                    if el.translation_length != 1 or prof.q != (s,) or scale_element(g, col, axis).value != s:
                        ok = False
            if ok:
                good.append(e)
        if not good:
            fails.append(f"(n, s)=({n}, {s}): no loop generator of scale {s}")
    return fails


def criterion_4():
    fails = []
    for n in (2, 3, 4):
        target = 2 * (n - 1)
        g = build_cycle_gadget(n)
        col = refine_dart_colors(g)
        for tree in spanning_trees(g):
            hits = [el for el in schottky_basis(g, tree).elements
                    if el.translation_length == target and scale_element(g, col, el).value == 2 ** target]
            if not hits:
                fails.append(f"n={n}: tree {tree} has no long generator of scale {2 ** target}")
        worst = max(max_translation_length(h) for h in enumerate_rank(n))
        if worst != target:
            fails.append(f"n={n}: maximal translation length {worst}, expected {target}")
    return fails


def criterion_5():
    fails = []
    for n in range(2, 6):
        spec = prime_spectrum(n)
        expected = primes_up_to(2 * n - 1)
        if spec.primes != expected:
            fails.append(f"n={n}: spectrum {sorted(spec.primes)} != {sorted(expected)}")
        keys = {canonical_key(g) for g in enumerate_rank(n)}
        for p in sorted(expected):
            w = spec.witnesses.get(p)
            if w is None:
                fails.append(f"n={n}: no witness for {p}")
                continue
            g = build_cycle_gadget(n) if w["family"] == "cycle" else build_bs(w["s"], n)
            if canonical_key(g) not in keys:
                fails.append(f"n={n}: witness graph for {p} not in the class")
            col = refine_dart_colors(g)
            pairs = element_pairs(g, tuple(w["tree"]))
            el = next(x for pair in pairs for x in pair if x.dart == w["dart"])
            value = scale_element(g, col, el).value
            if value % p or str(value) != w["scale"]:
                fails.append(f"n={n}: witness for {p} has scale {value}")
    return fails


def _brute_svol2():
    best = 0
    for g in brute_force_class(2):
        col = refine_dart_colors(g)
        per_tree = []
        for tree in spanning_trees(g):
            pairs = element_pairs(g, tree)
            per_tree.append(min(
                _product(scale_element(g, col, pair[mask >> k & 1]).value for k, pair in enumerate(pairs))
                for mask in range(1 << len(pairs))))
        best = max(best, min(per_tree))
    return best


def _product(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def criterion_6():
    fails = []
    for n in (2, 3, 4):
        lo, hi = (2 * n - 1) ** n, (2 * n - 1) ** (2 * n * (n - 1))
        rep = svol_report(n)
        if not lo <= rep.svol_schottky <= hi:
            fails.append(f"n={n}: svol {rep.svol_schottky} outside [{lo}, {hi}]")
        rose = schottky_volume(build_rose(n)).volume
        if rose != lo:
            fails.append(f"n={n}: rose volume {rose} != {lo}")
    brute = _brute_svol2()
    if svol_report(2).svol_schottky != brute:
        fails.append(f"n=2: svol {svol_report(2).svol_schottky} != brute force {brute}")
    return fails


def criterion_7(periods=6):
    fails = []
    for n in (2, 3):
        for g in enumerate_rank(n):
            col = refine_dart_colors(g)
            for tree, el in all_elements(g):
                orc = oracle_scale(g, col, el, periods)
                value = scale_element(g, col, el).value
                if not orc.stabilized or orc.ratio != value:
                    fails.append(f"n={n} {g.edges} dart {el.dart}: oracle {orc.ratio} vs {value}")
            depth = g.dart_count + 1
            for d1, d2 in itertools.combinations(range(g.dart_count), 2):
                same = col.colors[d1] == col.colors[d2]
                if branch_iso_check(g, d1, d2, depth) != same:
                    fails.append(f"n={n} {g.edges}: darts {d1}, {d2} disagree")
    return fails


def criterion_8():
    fails = []
    for n in (2, 3):
        for g in enumerate_rank(n):
            col = refine_dart_colors(g)
            for tree, el in all_elements(g):
                base = scale_element(g, col, el).value
                for k in range(1, 5):
                    if scale_element(g, col, el.axis.repeat(k)).value != base ** k:
                        fails.append(f"power law fails for {g.edges} dart {el.dart} k={k}")
                prof = ramification_profile(g, col, el.axis)
                for q, v in zip(prof.q, el.axis.vertices(g)):
                    if not 1 <= q <= g.degree(v) - 1:
                        fails.append(f"q={q} out of range at vertex {v} of {g.edges}")
            for tree in spanning_trees(g):
                sigs = {tuple(essential_signature(g, schottky_basis(g, tree, o), col.colors))
                        for o in all_orientations(g, tree)}
                if len(sigs) != 1:
                    fails.append(f"essential signature varies on {g.edges} tree {tree}")
    if scale_element(build_rose(2), refine_dart_colors(build_rose(2)), ELLIPTIC).value != 1:
        fails.append("elliptic scale is not 1")
    for n in range(2, 6):
        for g in enumerate_rank(n):
            v = g.vertex_count
            if v > 4:
                continue
            key = canonical_key(g)
            for perm in itertools.permutations(range(v)):
                h = Multigraph(v, tuple((perm[a], perm[b]) for a, b in g.edges))
                if canonical_key(h) != key:
                    fails.append(f"key changes under {perm} on {g.edges}")
    return fails


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("k", range(1, 9))
def test_criterion(k):
    fails = CRITERIA[k - 1]()
    assert report(k, fails), fails


if __name__ == "__main__":
    results = [report(k, CRITERIA[k - 1]()) for k in range(1, 9)]
    sys.exit(0 if all(results) else 1)
