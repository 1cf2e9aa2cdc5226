"""Family constructors and generators against structure and oracles."""

from __future__ import annotations

import pytest

from cylcolor._canon import canonical_form
from cylcolor.coloring import Precoloring, count_colorings
from cylcolor.embedding import (
    EmbeddedGraph,
    canon_cycle,
    distance,
    enumerate_short_cycles,
    is_tame,
    trace_faces,
)
from cylcolor.errors import (
    EdgeNotOnRing,
    InvalidParameter,
    NotIndependent,
    RingVertex,
    TooManyRings,
    WrongDegree,
)
from cylcolor.families import (
    FRAME_CHOICES,
    attach_pendant_ring,
    cylinder_grid,
    frame,
    generate_hexagon_disks,
    generate_patches,
    generate_quad33,
    is_quad33,
    near_quad33,
    near_quad33_decomposition,
    patch_graph,
    patch_ring_variants,
    reduced_thomas_walls,
    thomas_walls,
)

import fixtures
from oracles import atlas_quad33_count, brute_count


# -- Thomas-Walls chain ---------------------------------------------------------


def test_t1_is_k4():
    assert canonical_form(thomas_walls(1)) == canonical_form(fixtures.k4())


def test_tn_sizes():
    # the replacement step removes one edge and adds three vertices, six edges
    for n in range(1, 6):
        g = thomas_walls(n)
        assert g.n == 3 * n + 1
        assert g.edge_count == 5 * n + 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tn_is_4_critical(n):
    g = thomas_walls(n)
    assert count_colorings(g, Precoloring.empty()) == 0
    for u, v in g.edges():
        adj = [
            tuple(x for x in row if not (w == u and x == v) and not (w == v and x == u))
            for w, row in enumerate(g.rotations)
        ]
        from cylcolor.coloring import _solve_first

        assert _solve_first(adj, {}) is not None, (n, u, v)


def test_t2_against_oracle():
    g = thomas_walls(2)
    assert brute_count(g, {}) == 0


def test_reduced_t1_is_four_cycle():
    g, pairs = reduced_thomas_walls(1)
    assert g.n == 4 and g.edge_count == 4
    assert len(g.rings) == 2
    assert pairs.first == (0, 1) and pairs.second == (2, 3)


def test_reduced_is_tn_minus_interface_diagonals():
    for n in (2, 3, 4, 5):
        g, pairs = reduced_thomas_walls(n)
        t = thomas_walls(n)
        missing = {frozenset(pairs.first), frozenset(pairs.second)}
        assert {frozenset(e) for e in t.edges()} - {
            frozenset(e) for e in g.edges()
        } == missing


def test_reduced_rings_chordless():
    g, _ = reduced_thomas_walls(2)
    for ring in g.rings:
        for i in range(4):
            for j in range(i + 2, 4):
                if (i, j) != (0, 3):
                    assert not g.has_edge(ring[i], ring[j])


def test_reduced_interface_degrees():
    g, pairs = reduced_thomas_walls(3)
    for v in pairs.first + pairs.second:
        assert g.degree(v) == 2


def test_reduced_triangle_free():
    for n in (2, 3, 4):
        g, _ = reduced_thomas_walls(n)
        assert enumerate_short_cycles(g, 3) == []


def test_invalid_parameter():
    with pytest.raises(InvalidParameter):
        thomas_walls(0)
    with pytest.raises(InvalidParameter):
        reduced_thomas_walls(0)


# -- patches ---------------------------------------------------------------------


def test_patch_counts():
    assert len(generate_patches(0)) == 0
    assert len(generate_patches(1)) == 1
    # one patch with a single hub; three more with two internal vertices
    assert len(generate_patches(2)) == 4


def test_smallest_patch_is_hub():
    patch = generate_patches(1)[0]
    assert canonical_form(patch) == canonical_form(fixtures.hub_hexagon())


def test_patches_validate():
    for patch in generate_patches(3):
        ring = patch.rings[0]
        assert len(ring) == 6
        for i in range(6):
            for j in range(i + 2, 6):
                if (i, j) != (0, 5):
                    assert not patch.has_edge(ring[i], ring[j])
        fl = trace_faces(patch)
        for i, f in enumerate(fl.faces):
            if i not in fl.ring_faces:
                assert len(f) == 4
        assert enumerate_short_cycles(patch, 3) == []


def test_hexagon_disks_include_chorded():
    disks = generate_hexagon_disks(1)
    # chordless hub, chorded hexagon, chord plus one internal vertex
    assert len(disks) == 3
    canons = {canonical_form(d) for d in disks}
    assert canonical_form(fixtures.chord_hexagon()) in canons
    assert canonical_form(fixtures.hub_hexagon()) in canons


# -- patching ---------------------------------------------------------------------


def test_patch_graph_empty_is_identity():
    g, _ = reduced_thomas_walls(3)
    assert patch_graph(g, []) == g


def test_patch_graph_hub():
    g, pairs = reduced_thomas_walls(3)
    hub = generate_patches(1)[0]
    pg = patch_graph(g, [(4, hub)])
    assert pg.n == g.n + 3
    assert enumerate_short_cycles(pg, 3) == []  # stays triangle-free
    fl = trace_faces(pg)
    assert sorted(len(f) for f in fl.faces).count(4) >= 5


def test_patch_graph_interface_untouched():
    g, pairs = reduced_thomas_walls(4)
    hub = generate_patches(1)[0]
    pg = patch_graph(g, [(4, hub)])
    # interface vertices have degree two before and after
    for ring in pg.rings:
        deg2 = [v for v in ring if pg.degree(v) == 2]
        assert len(deg2) == 2


def test_patch_graph_rejects_adjacent_placements():
    g, _ = reduced_thomas_walls(3)
    hub = generate_patches(1)[0]
    with pytest.raises(NotIndependent):
        patch_graph(g, [(4, hub), (5, hub)])


def test_patch_graph_rejects_ring_vertex():
    g, _ = reduced_thomas_walls(3)
    hub = generate_patches(1)[0]
    with pytest.raises(RingVertex):
        patch_graph(g, [(2, hub)])


def test_patch_graph_rejects_wrong_degree():
    g = fixtures.hub_hexagon().with_rings(())
    gg = EmbeddedGraph(g.rotations, rings=((0, 1, 2, 3, 4, 5),))
    hub = generate_patches(1)[0]
    # vertex 1 has degree 2
    with pytest.raises((WrongDegree, RingVertex)):
        patch_graph(gg, [(1, hub)])


def test_patch_variants_two_hub_alignments():
    g, _ = reduced_thomas_walls(3)
    hub = generate_patches(1)[0]
    outs = {canonical_form(patch_graph(g, [(4, v)])) for v in patch_ring_variants(hub)}
    assert len(outs) == 2


# -- framing ---------------------------------------------------------------------


def test_frame_all_new_adds_four():
    g, pairs = reduced_thomas_walls(2)
    f = frame(g, pairs, ((True, True), (True, True)))
    assert f.n == g.n + 4
    assert len(f.rings) == 2 and all(len(r) == 4 for r in f.rings)


def test_frame_all_reuse_is_redesignation():
    g, pairs = reduced_thomas_walls(2)
    f = frame(g, pairs, ((False, False), (False, False)))
    assert f.rotations == g.rotations
    assert {canon_cycle(r) for r in f.rings} == {canon_cycle(r) for r in g.rings}


def test_framed_t2_has_interior_short_cycle():
    g, pairs = reduced_thomas_walls(2)
    f = frame(g, pairs, ((True, True), (True, True)))
    ring_canons = {canon_cycle(r) for r in f.rings}
    others = [
        r.vertices
        for r in enumerate_short_cycles(f, 4, only_noncontractible=True)
        if canon_cycle(r.vertices) not in ring_canons
    ]
    assert others  # the old rings stayed non-contractible


def test_frame_preserves_interior_faces():
    g, pairs = reduced_thomas_walls(3)
    f = frame(g, pairs, ((True, True), (True, False)))
    old_internal = {
        canon_cycle(face)
        for i, face in enumerate(trace_faces(g).faces)
        if i not in trace_faces(g).ring_faces
    }
    new_faces = {canon_cycle(face) for face in trace_faces(f).faces}
    assert old_internal <= new_faces


def test_patching_keeps_triangle_free():
    g, _ = reduced_thomas_walls(4)
    spots = [v for v in range(g.n) if v not in g.ring_vertices and g.degree(v) == 3]
    for patch in generate_patches(2):
        pg = patch_graph(g, [(spots[0], patch)])
        assert enumerate_short_cycles(pg, 3) == []


def test_frame_mixed_choices_all_valid():
    g, pairs = reduced_thomas_walls(2)
    seen = set()
    for c1 in FRAME_CHOICES:
        for c2 in FRAME_CHOICES:
            f = frame(g, pairs, (c1, c2))
            assert f.n == g.n + sum(c1) + sum(c2)
            seen.add(canonical_form(f))
    assert len(seen) == 10


# -- 3,3-quadrangulations -----------------------------------------------------------


def test_quad33_six_vertices():
    qs = generate_quad33(6)
    # the prism plus one degenerate member with a non-ring triangle
    assert len(qs) == 2
    tame = [q for q in qs if is_tame(q)]
    assert len(tame) == 1
    assert canonical_form(tame[0]) == canonical_form(fixtures.prism())


def test_quad33_matches_atlas_oracle_up_to_7():
    assert len(generate_quad33(7)) == atlas_quad33_count(7)


def test_quad33_members_validate():
    for q in generate_quad33(8):
        assert is_quad33(q)
        fl = trace_faces(q)
        for i, f in enumerate(fl.faces):
            assert len(f) % 2 == 0 or i in fl.ring_faces
        triangles = enumerate_short_cycles(q, 3)
        ring_canons = {canon_cycle(r) for r in q.rings}
        only_ring_triangles = all(
            canon_cycle(t.vertices) in ring_canons for t in triangles
        )
        assert is_tame(q) == only_ring_triangles
        assert set(q.rings[0]).isdisjoint(q.rings[1])


def test_quad33_invalid_bound():
    with pytest.raises(InvalidParameter):
        generate_quad33(5)


# -- near 3,3-quadrangulations --------------------------------------------------------


def test_near_quad_single_subdivision():
    g = fixtures.prism()
    out = near_quad33(g, ((0, 1), None))
    assert sorted(len(r) for r in out.rings) == [3, 4]
    fl = trace_faces(out)
    assert sorted(len(f) for f in fl.faces if len(f) == 5) == [5]


def test_near_quad_identity():
    g = fixtures.prism()
    assert near_quad33(g, (None, None)) == g


def test_near_quad_both_subdivided():
    g = fixtures.prism()
    out = near_quad33(g, ((0, 1), (3, 4)))
    from cylcolor.analysis import face_deficiency

    assert face_deficiency(out).deficiency_internal == 2
    dec = near_quad33_decomposition(out)
    assert dec is not None
    base, subs = dec
    assert sum(1 for s in subs if s is not None) == 2


def test_near_quad_rejects_off_ring_edge():
    g = fixtures.prism()
    with pytest.raises(EdgeNotOnRing):
        near_quad33(g, ((0, 3), None))


def test_near_quad_rejects_non_quadrangulation():
    with pytest.raises(InvalidParameter):
        near_quad33(cylinder_grid(4, 3), (None, None))


# -- pendant ring ----------------------------------------------------------------------


def test_attach_pendant_ring():
    g = fixtures.hub_hexagon()
    out = attach_pendant_ring(g, 6)
    assert len(out.rings) == 2
    new_ring = out.rings[1]
    assert new_ring[0] == 6
    deg2 = [v for v in new_ring if out.degree(v) == 2]
    assert len(deg2) == 3


def test_attach_pendant_ring_limits():
    with pytest.raises(TooManyRings):
        attach_pendant_ring(fixtures.prism(), 0)


# -- grids --------------------------------------------------------------------------


def test_grid_matches_prism():
    assert canonical_form(cylinder_grid(3, 2)) == canonical_form(fixtures.prism())


def test_grid_faces():
    g = cylinder_grid(4, 3)
    fl = trace_faces(g)
    assert sorted(len(f) for f in fl.faces) == [4] * 10
    assert len(fl.ring_faces) == 2


def test_family_spec_realize_and_validate():
    from cylcolor.families import FamilySpec

    assert len(FamilySpec("patches", max_internal=2).realize()) == 4
    assert FamilySpec("thomas_walls", n=2).realize()[0].n == 7
    # 2 bases at 6 vertices; their subdivision variants collapse to 10 classes
    assert len(FamilySpec("near_quad33", max_vertices=6).realize()) == 10
    with pytest.raises(InvalidParameter):
        FamilySpec("bogus").validate()
    with pytest.raises(InvalidParameter):
        FamilySpec("quad33", max_vertices=3).validate()


def test_penta_tube_is_quad33():
    g = fixtures.penta_tube(2)
    assert is_quad33(g)
    assert distance(g, g.rings[0], g.rings[1]) == 3
    ring_canons = {canon_cycle(r) for r in g.rings}
    extra = [
        r
        for r in enumerate_short_cycles(g, 4, only_noncontractible=True)
        if canon_cycle(r.vertices) not in ring_canons
    ]
    assert extra == []
