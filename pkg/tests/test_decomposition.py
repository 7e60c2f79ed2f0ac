import random

from netsym import (
    GeneratorSet,
    Graph,
    Permutation,
    find_generators,
    geometric_decomposition,
    motif_orbits,
    motif_type,
    support,
)
from netsym.decomposition import decomposition_to_dict

from helpers import (
    brute_force_automorphisms,
    fig2_fixture,
    orbits_from_perms,
    planted_symmetric_graph,
    random_graph,
)


def perm(image):
    return Permutation(tuple(image))


def test_support():
    assert support(perm([1, 0, 3, 2, 4])) == {0, 1, 2, 3}
    assert support(perm([0, 1, 2])) == set()
    assert support(perm([1, 2, 0, 3, 4, 5])) == {0, 1, 2}


def test_fig2_decomposition():
    g = fig2_fixture()
    d = geometric_decomposition(find_generators(g))
    assert d.fixed_points == [4]
    assert len(d.motifs) == 1
    m = d.motifs[0]
    assert m.vertices == [0, 1, 2, 3]
    assert m.orbits == [[0, 1], [2, 3]]
    assert m.type == 2


def test_empty_generator_set():
    d = geometric_decomposition(GeneratorSet(6, []))
    assert d.fixed_points == list(range(6))
    assert d.motifs == []


def test_two_disjoint_transpositions_make_two_motifs():
    gs = GeneratorSet(5, [perm([1, 0, 2, 3, 4]), perm([0, 1, 3, 2, 4])])
    d = geometric_decomposition(gs)
    assert len(d.motifs) == 2
    assert [m.vertices for m in d.motifs] == [[0, 1], [2, 3]]
    assert d.fixed_points == [4]
    assert all(m.type == 2 for m in d.motifs)


def test_overlapping_supports_merge():
    gs = GeneratorSet(4, [perm([1, 0, 2, 3]), perm([0, 2, 1, 3])])
    d = geometric_decomposition(gs)
    assert len(d.motifs) == 1
    assert d.motifs[0].vertices == [0, 1, 2]


def test_motif_orbits_examples():
    g = fig2_fixture()
    assert motif_orbits(find_generators(g)) == [[0, 1], [2, 3], [4]]
    k3 = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    assert motif_orbits(find_generators(k3)) == [[0, 1, 2]]
    star = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    orbits = motif_orbits(find_generators(star))
    assert orbits == [[0], [1, 2, 3, 4]]
    autos = brute_force_automorphisms(star)
    assert orbits == orbits_from_perms(autos, 5)


def test_motif_type_single_transposition():
    assert motif_type([[0, 1]], [[1, 0]]) == 2


def test_motif_type_six_cycle_dihedral_is_complex():
    c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    d = geometric_decomposition(find_generators(c6))
    assert len(d.motifs) == 1
    m = d.motifs[0]
    # One orbit of size 6, but the induced action is D6 (order 12 != 6!).
    assert m.orbits == [[0, 1, 2, 3, 4, 5]]
    assert m.type == 0


def test_motif_type_triangle_full_symmetric():
    k3 = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    d = geometric_decomposition(find_generators(k3))
    assert d.motifs[0].type == 3


def test_unequal_orbit_sizes_complex():
    assert motif_type([[0, 1], [2, 3, 4]], [[1, 0, 3, 2, 4], [0, 1, 4, 2, 3]]) == 0


def test_partition_property_random():
    rng = random.Random(11)
    for seed in range(8):
        g = planted_symmetric_graph(seed, core_n=15, num_motifs=4)
        d = geometric_decomposition(find_generators(g))
        seen = sorted(d.fixed_points + [v for m in d.motifs for v in m.vertices])
        assert seen == list(range(g.n))
        for m in d.motifs:
            orb_union = sorted(v for o in m.orbits for v in o)
            assert orb_union == m.vertices
            if m.type > 0:
                assert all(len(o) == m.type for o in m.orbits)
        # support-disjointness across motifs
        for i, m1 in enumerate(d.motifs):
            for m2 in d.motifs[i + 1 :]:
                assert not (set(m1.vertices) & set(m2.vertices))
        _ = rng  # determinism of the generator is exercised elsewhere


def test_local_generators_fix_outside():
    g = fig2_fixture()
    gs = find_generators(g)
    d = geometric_decomposition(gs)
    for m in d.motifs:
        inside = set(m.vertices)
        for gen in gs.generators:
            sup = support(gen)
            if sup & inside:
                assert sup <= inside


def test_weighted_refinement_motifs_nest():
    rng = random.Random(31)
    for seed in range(6):
        g = planted_symmetric_graph(seed, core_n=12, num_motifs=3)
        d0 = geometric_decomposition(find_generators(g))
        weighted_edges = [
            (i, j, rng.choice([1.0, 1.0, 1.0, 3.0])) for i, j, _ in g.entries() if i <= j
        ]
        gw = Graph.from_edges(g.n, weighted_edges)
        dw = geometric_decomposition(find_generators(gw))
        originals = [set(m.vertices) for m in d0.motifs]
        for mw in dw.motifs:
            assert sum(set(mw.vertices) <= orig for orig in originals) == 1
        # weighted orbits refine unweighted orbits
        for ow in dw.orbit_cells(g.n):
            assert any(set(ow) <= set(o) for o in d0.orbit_cells(g.n))


def test_decomposition_dump_uses_labels():
    g = fig2_fixture()
    d = geometric_decomposition(find_generators(g))
    dd = decomposition_to_dict(d, g.labels)
    assert dd == {
        "fixed_points": ["5"],
        "motifs": [
            {"vertices": ["1", "2", "3", "4"], "orbits": [["1", "2"], ["3", "4"]], "type": 2}
        ],
    }


def test_random_graph_orbits_match_brute_force():
    rng = random.Random(4)
    for _ in range(20):
        n = rng.randint(4, 7)
        g = random_graph(rng, n, 0.4)
        d = geometric_decomposition(find_generators(g))
        autos = brute_force_automorphisms(g)
        assert d.orbit_cells(n) == orbits_from_perms(autos, n)
