import pytest

from oracles import automorphisms
from schottky_scale.cover_colors import branch_iso_check, refine_dart_colors
from schottky_scale.enumeration import enumerate_rank
from schottky_scale.multigraph import GraphError, build_multigraph


def test_rose_single_class():
    g = build_multigraph(1, [(0, 0)] * 3)
    col = refine_dart_colors(g)
    assert set(col.colors) == {0}
    assert col.profiles == {0: {0: 5}}


def test_dumbbell_single_class(dumbbell):
    col = refine_dart_colors(dumbbell)
    assert set(col.colors) == {0}
    assert col.rounds == 0
    assert col.profiles == {0: {0: 2}}


def test_bs33_head_degrees_separate(bs33):
    col = refine_dart_colors(bs33)
    into_v0 = {col.colors[d] for d in range(bs33.dart_count) if bs33.head(d) == 0}
    into_v1 = {col.colors[d] for d in range(bs33.dart_count) if bs33.head(d) == 1}
    assert not into_v0 & into_v1


def test_branch_iso_examples(dumbbell, bs33):
    for d in range(dumbbell.dart_count):
        assert branch_iso_check(dumbbell, d, d, 5)
    # loop dart vs bridge dart of the dumbbell
    assert branch_iso_check(dumbbell, 0, 2, 4)
    # v0-loop dart (4 continuations) vs bridge dart into v1 (2 continuations)
    assert not branch_iso_check(bs33, 0, 4, 1)
    assert branch_iso_check(bs33, 0, 4, 0)


def test_branch_iso_budget(dumbbell):
    with pytest.raises(GraphError):
        branch_iso_check(dumbbell, 0, 1, 10_000)
    with pytest.raises(GraphError):
        branch_iso_check(dumbbell, 0, 1, -1)


def test_preconditions():
    with pytest.raises(GraphError):
        refine_dart_colors(build_multigraph(2, [(0, 1), (0, 0)]))


@pytest.mark.parametrize("n", [2, 3])
def test_colors_agree_with_branch_isomorphism(n):
    for g in enumerate_rank(n):
        col = refine_dart_colors(g)
        budget = 2 * g.dart_count
        for d1 in range(g.dart_count):
            for d2 in range(d1 + 1, g.dart_count):
                if col.colors[d1] == col.colors[d2]:
                    assert branch_iso_check(g, d1, d2, budget)
                else:
                    assert not branch_iso_check(g, d1, d2, col.rounds + 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_stability_and_round_bound(n):
    for g in enumerate_rank(n):
        col = refine_dart_colors(g)
        assert col.is_stable_for(g)
        assert col.rounds <= g.dart_count
        for c, darts in col.classes().items():
            for d in darts:
                succ = {}
                for x in g.continuations(d):
                    succ[col.colors[x]] = succ.get(col.colors[x], 0) + 1
                assert succ == col.profiles[c]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_colors_invariant_under_automorphisms(n):
    for g in enumerate_rank(n):
        if g.vertex_count > 6:
            continue
        col = refine_dart_colors(g).colors
        by_ends = {}
        for d in range(g.dart_count):
            by_ends.setdefault((g.tail(d), g.head(d)), set()).add(col[d])
        assert all(len(s) == 1 for s in by_ends.values())
        for p in automorphisms(g):
            for (a, b), cs in by_ends.items():
                assert by_ends[(p[a], p[b])] == cs
