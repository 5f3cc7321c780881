import pytest

from schottky_scale.cover_colors import refine_dart_colors
from schottky_scale.enumeration import enumerate_rank_keys
from schottky_scale.multigraph import GraphError, betti, canonical_key
from schottky_scale.scale_engine import scale_element
from schottky_scale.schottky import element_pairs, spanning_trees
from schottky_scale.volumes import (
    build_bs,
    build_cycle_gadget,
    build_rose,
    conjectured_svol,
    prime_spectrum,
    primes_up_to,
    schottky_volume,
    svol_report,
    verify_explicit_bounds,
    volume_bracket,
)


def test_build_rose():
    g = build_rose(2)
    assert g.vertex_count == 1 and g.edge_count == 2
    assert build_rose(3).degree(0) == 6
    for n in range(2, 7):
        assert betti(build_rose(n)) == n


def test_build_bs_examples():
    g = build_bs(3, 3)
    assert g.degrees() == [5, 3]
    assert sorted(g.edges) == [(0, 0), (0, 0), (0, 1), (1, 1)]
    g = build_bs(3, 4)  # s == n - 1: two connecting edges
    assert g.degrees() == [6, 4]
    assert g.edges.count((0, 1)) == 2 and g.edges.count((1, 1)) == 1
    assert canonical_key(build_bs(5, 3)) == canonical_key(build_rose(3))


@pytest.mark.parametrize("s,n", [(4, 3), (1, 3), (7, 3), (3, 1)])
def test_build_bs_rejects(s, n):
    with pytest.raises(GraphError):
        build_bs(s, n)


@pytest.mark.parametrize("n", range(2, 8))
def test_bs_family_in_class(n):
    for s in range(3, 2 * n, 2):
        g = build_bs(s, n)
        assert betti(g) == n and min(g.degrees()) >= 3 and g.is_connected()
        if s <= 2 * n - 3:
            assert g.degree(0) != g.degree(1)


def test_cycle_gadget(theta):
    assert canonical_key(build_cycle_gadget(2)) == canonical_key(theta)
    g = build_cycle_gadget(3)
    assert g.vertex_count == 4 and g.edge_count == 6
    for n in range(2, 7):
        g = build_cycle_gadget(n)
        assert set(g.degrees()) == {3}
        assert betti(g) == n


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_families_are_enumerated(n):
    keys = set(enumerate_rank_keys(n))
    assert canonical_key(build_rose(n)) in keys
    assert canonical_key(build_cycle_gadget(n)) in keys
    for s in range(3, 2 * n, 2):
        assert canonical_key(build_bs(s, n)) in keys


def test_schottky_volume_rank2(rose2, theta, dumbbell):
    assert schottky_volume(rose2).volume == 9
    assert schottky_volume(dumbbell).volume == 4
    assert schottky_volume(theta).volume == 16


def test_brute_force_rank2_volume(rose2, theta, dumbbell):
    # independent recomputation: every tree, every orientation choice
    best = 0
    for g in (rose2, theta, dumbbell):
        col = refine_dart_colors(g)
        per_tree = []
        for tree in spanning_trees(g):
            vols = []
            pairs = element_pairs(g, tree)
            for mask in range(1 << len(pairs)):
                v = 1
                for k, pair in enumerate(pairs):
                    v *= scale_element(g, col, pair[mask >> k & 1]).value
                vols.append(v)
            per_tree.append(min(vols))
        best = max(best, min(per_tree))
    assert best == 16 == svol_report(2).svol_schottky


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_rose_volume(n):
    assert schottky_volume(build_rose(n)).volume == (2 * n - 1) ** n


def test_graph_volume_minimises_trees(theta):
    gv = schottky_volume(theta)
    assert all(gv.volume <= t.volume for t in gv.trees)
    assert gv.volume in {t.volume for t in gv.trees}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_svol_report(n):
    rep = svol_report(n)
    lo, hi = volume_bracket(n)
    assert lo <= rep.svol_schottky <= hi
    assert rep.rose_volume == lo
    d = rep.to_dict()
    assert d["conjecture"]["normative"] is False
    assert isinstance(d["svol_schottky"], str)


def test_svol_rank2_values():
    rep = svol_report(2)
    assert rep.svol_schottky == 16
    assert rep.bracket == (9, 81)


def test_conjecture_value():
    assert conjectured_svol(3) == pytest.approx(2.0 ** 9)


def test_primes_up_to():
    assert primes_up_to(9) == {2, 3, 5, 7}
    assert primes_up_to(1) == set()


@pytest.mark.parametrize("n,expected", [(2, {2, 3}), (3, {2, 3, 5})])
def test_prime_spectrum(n, expected):
    spec = prime_spectrum(n)
    assert spec.primes == expected
    assert spec.matches
    assert int(spec.witnesses[2]["scale"]) == 2 ** (2 * (n - 1))
    for p in expected - {2}:
        assert int(spec.witnesses[p]["scale"]) == p


@pytest.mark.parametrize("n", [2, 3, 4])
def test_verify_explicit_bounds(n):
    rep = verify_explicit_bounds(n)
    assert rep.passed, [c for c in rep.checks if not c.passed]


def test_verify_rank5_without_sweep():
    rep = verify_explicit_bounds(5, exhaustive=False)
    assert rep.passed
    assert any("scale 9" in c.name for c in rep.checks)
