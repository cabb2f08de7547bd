import random

import pytest

from knotquiver.quiver import build_potential, build_quiver
from knotquiver.reps import (
    Mat,
    PartitionUndefinedError,
    QuiverRep,
    check_relations,
    compute_partition,
    enumerate_submodules,
    lattice_iso_check,
    level_graph_report,
    link_module,
    mat_drop_first,
    mat_identity,
    mat_kind,
    mat_mul,
    mat_pad_last,
    mat_rank,
    mat_shift,
    state_module,
    t_direct,
)
from knotquiver.states import build_lattice


@pytest.fixture(scope="module")
def fig8_ctx(fig8):
    q = build_quiver(fig8)
    w = build_potential(fig8, q)
    lats = {i: build_lattice(fig8, i) for i in fig8.segment_ids()}
    return fig8, q, w, lats


class TestMatrices:
    def test_shift_relations(self):
        for n in (1, 2, 3, 4):
            v = mat_drop_first(n + 1)
            h = mat_pad_last(n + 1)
            assert mat_mul(h, v) == mat_shift(n + 1)
            assert mat_mul(v, h) == mat_shift(n)

    def test_kinds(self):
        assert mat_kind(mat_identity(3)) == "I"
        assert mat_kind(mat_shift(2)) == "J"
        assert mat_kind(mat_drop_first(3)) == "V"
        assert mat_kind(mat_pad_last(3)) == "H"
        assert mat_kind(Mat(0, 1, ())) == "E"

    def test_zero_dims_keep_shape(self):
        a = mat_drop_first(1)  # 0 x 1
        b = mat_pad_last(1)  # 1 x 0
        assert (a.rows, a.cols) == (0, 1)
        assert mat_mul(b, a) == Mat(1, 1, ((0,),))

    def test_rank(self):
        assert mat_rank(mat_identity(3)) == 3
        assert mat_rank(mat_shift(3)) == 2
        assert mat_rank(mat_drop_first(4)) == 3


def _module_from_sequence(diagram, q, seq):
    """Reference construction of a state module from an explicit
    transposition sequence, applied crossing by crossing."""
    maps = {}
    dims = {j: seq.count(j) for j in diagram.segment_ids()}
    for c in range(diagram.n):
        segs = diagram.crossings[c].segments
        local = [j for j in seq if j in segs]
        ell, rem = divmod(len(local), 4)
        if local:
            a = local[0]
            k0 = (segs.index(a) - 1) % 4
        else:
            k0 = 0
        order = [segs[(k0 + 1 + m) % 4] for m in range(4)]
        assert local == (order * (ell + 1))[: len(local)], "not a cyclic run"
        delta = q.arrow_at_corner(c, k0)
        alpha = q.arrow_at_corner(c, k0 + 1)
        beta = q.arrow_at_corner(c, k0 + 2)
        gamma = q.arrow_at_corner(c, k0 + 3)
        if rem == 0:
            maps[delta.id] = mat_shift(ell)
            maps[gamma.id] = maps[beta.id] = maps[alpha.id] = mat_identity(ell)
        elif rem == 1:
            maps[delta.id] = mat_drop_first(ell + 1)
            maps[gamma.id] = maps[beta.id] = mat_identity(ell)
            maps[alpha.id] = mat_pad_last(ell + 1)
        elif rem == 2:
            maps[delta.id] = mat_drop_first(ell + 1)
            maps[gamma.id] = mat_identity(ell)
            maps[beta.id] = mat_pad_last(ell + 1)
            maps[alpha.id] = mat_identity(ell + 1)
        else:
            maps[delta.id] = mat_drop_first(ell + 1)
            maps[gamma.id] = mat_pad_last(ell + 1)
            maps[beta.id] = maps[alpha.id] = mat_identity(ell + 1)
    return QuiverRep(dims, maps)


def _random_sequence(lat, state_index, rng):
    """A random transposition sequence from the minimal state to a state."""
    down = {}
    for a, j, b in lat.covers:
        down.setdefault(b, []).append((j, a))
    seq = []
    k = state_index
    while k != lat.min_state:
        j, k = rng.choice(sorted(down[k]))
        seq.append(j)
    return list(reversed(seq))


class TestStateModules:
    def test_min_state_zero(self, fig8_ctx):
        fig8, q, _w, lats = fig8_ctx
        rep = state_module(fig8, q, lats[1], lats[1].min_state)
        assert rep.total_dim() == 0

    def test_fig8_t1(self, fig8_ctx):
        fig8, q, _w, lats = fig8_ctx
        rep = link_module(fig8, q, lats[1])
        assert rep.dim_vector() == {2: 1, 5: 1, 8: 1}
        for a in q.arrows:
            assert mat_rank(rep.maps[a.id]) <= 1

    def test_fig8_t2(self, fig8_ctx):
        fig8, q, _w, lats = fig8_ctx
        rep = link_module(fig8, q, lats[2])
        assert rep.dim_vector() == {1: 1, 3: 1, 4: 1, 8: 1}

    def test_trefoil_all_segments(self, trefoil):
        q = build_quiver(trefoil)
        for i in trefoil.segment_ids():
            lat = build_lattice(trefoil, i)
            rep = link_module(trefoil, q, lat)
            excluded = set()
            for r in trefoil.regions_at_segment(i):
                excluded.update(trefoil.regions[r].segment_ids())
            support = set(trefoil.segment_ids()) - excluded - {i}
            assert rep.dim_vector() == {j: 1 for j in support}

    def test_path_independence(self, corpus_diagrams):
        rng = random.Random(3)
        for name in ("figure-eight", "10_66"):
            d = corpus_diagrams[name]
            q = build_quiver(d)
            lat = build_lattice(d, 1)
            sample = rng.sample(range(lat.size), min(8, lat.size))
            for k in sample:
                direct = state_module(d, q, lat, k)
                for _ in range(2):
                    seq = _random_sequence(lat, k, rng)
                    ref = _module_from_sequence(d, q, seq)
                    assert ref.dims == direct.dims
                    assert ref.maps == direct.maps

    def test_10_66_t1_matches_published_maps(self, corpus_diagrams):
        d = corpus_diagrams["10_66"]
        q = build_quiver(d)
        lat = build_lattice(d, 1)
        rep = link_module(d, q, lat)
        assert rep.dim_vector() == {
            2: 1, 3: 1, 4: 1, 6: 1, 7: 1, 8: 2, 9: 1, 10: 1,
            12: 1, 16: 1, 17: 1, 18: 2, 19: 1, 20: 1,
        }
        expected_kinds = {
            (10, 18): "H", (16, 7): "I", (16, 10): "I", (18, 9): "V",
            (18, 8): "I", (8, 17): "V", (8, 16): "V", (19, 10): "I",
            (19, 3): "J", (9, 18): "H", (9, 19): "I", (17, 8): "H",
            (17, 9): "I", (7, 17): "I", (7, 4): "I", (2, 19): "I",
            (3, 7): "I", (3, 20): "I", (4, 6): "J", (12, 4): "I",
            (20, 2): "I", (6, 3): "I", (6, 12): "I",
        }
        for a in q.arrows:
            key = (a.src, a.tgt)
            if key in expected_kinds:
                assert rep.map_kind(a.id) == expected_kinds[key], key
        by_pair = {(a.src, a.tgt): rep.maps[a.id] for a in q.arrows}
        assert by_pair[(18, 8)] == mat_identity(2)
        assert by_pair[(18, 9)].data == ((0, 1),)
        assert by_pair[(9, 18)].data == ((1,), (0,))
        assert by_pair[(19, 3)].data == ((0,),)

    def test_dims_differ_by_at_most_one(self, corpus_diagrams):
        for d in corpus_diagrams.values():
            q = build_quiver(d)
            for i in (min(d.segment_ids()), max(d.segment_ids())):
                lat = build_lattice(d, i)
                rep = link_module(d, q, lat)
                for a in q.arrows:
                    assert abs(rep.dims[a.src] - rep.dims[a.tgt]) <= 1

    def test_cover_rank_step(self, fig8_ctx):
        # a transposition at a raises the rank on every arrow out of a by one
        fig8, q, _w, lats = fig8_ctx
        lat = lats[1]
        for a_idx, j, b_idx in lat.covers:
            lower = state_module(fig8, q, lat, a_idx)
            upper = state_module(fig8, q, lat, b_idx)
            assert upper.dims[j] == lower.dims[j] + 1
            for arrow in q.arrows:
                delta = mat_rank(upper.maps[arrow.id]) - mat_rank(lower.maps[arrow.id])
                # rank grows on arrows out of j (it cannot when the target
                # space is still zero-dimensional); others are untouched
                expected = 1 if arrow.src == j and upper.dims[arrow.tgt] > 0 else 0
                assert delta == expected

    def test_inclusion_along_order(self, fig8_ctx):
        fig8, q, _w, lats = fig8_ctx
        lat = lats[1]
        for a_idx, _j, b_idx in lat.covers:
            ha, hb = lat.height_vector(a_idx), lat.height_vector(b_idx)
            assert all(ha.get(k, 0) <= hb.get(k, 0) for k in ha)

    def test_support_connected(self, corpus_reports, corpus_diagrams):
        for name, d in corpus_diagrams.items():
            q = build_quiver(d)
            lat = build_lattice(d, 1)
            rep = link_module(d, q, lat)
            support = rep.support()
            if not support:
                continue
            adj = {v: set() for v in support}
            for a in q.arrows:
                if a.src in support and a.tgt in support:
                    adj[a.src].add(a.tgt)
                    adj[a.tgt].add(a.src)
            seen = {min(support)}
            stack = [min(support)]
            while stack:
                v = stack.pop()
                for u in adj[v]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            assert seen == support, name


class TestPartition:
    def test_10_66_levels(self, corpus_diagrams):
        d = corpus_diagrams["10_66"]
        part = compute_partition(d, 1)
        sets = part.level_sets()
        assert sets[0] == {1, 15, 11, 5, 13, 14}
        assert sets[1] == {2, 3, 4, 6, 7, 9, 10, 12, 16, 17, 19, 20}
        assert sets[2] == {18, 8}
        assert part.levels[1].added == {9, 17}
        assert part.levels[2].segments == {18, 8} and not part.levels[2].added

    def test_fig8_levels_match_dims(self, fig8_ctx):
        fig8, q, _w, lats = fig8_ctx
        for i in fig8.segment_ids():
            part = compute_partition(fig8, i)
            rep = link_module(fig8, q, lats[i])
            assert part.dims() == rep.dims

    def test_t_direct_equals_max_state_module(self, corpus_diagrams):
        for name, d in corpus_diagrams.items():
            q = build_quiver(d)
            for i in d.segment_ids():
                lat = build_lattice(d, i)
                rep = link_module(d, q, lat)
                try:
                    part = compute_partition(d, i)
                except PartitionUndefinedError:
                    assert name == "conway", (name, i)
                    continue
                direct = t_direct(d, q, part)
                assert direct.dims == rep.dims, (name, i)
                assert direct.maps == rep.maps, (name, i)

    def test_conway_undefined_segments_are_known(self, corpus_diagrams):
        d = corpus_diagrams["conway"]
        undefined = set()
        for i in d.segment_ids():
            try:
                compute_partition(d, i)
            except PartitionUndefinedError:
                undefined.add(i)
        assert undefined == {2, 4, 9, 11, 13, 22}

    def test_level_graph_10_66(self, corpus_diagrams):
        d = corpus_diagrams["10_66"]
        q = build_quiver(d)
        part = compute_partition(d, 1)
        reports = level_graph_report(d, q, part)
        level1 = reports[0]
        assert level1.level == 1
        assert len(level1.crossing_vertices) == 2
        assert len(level1.region_vertices) == 2
        assert len(level1.edges) == 3  # the published path-shaped dual graph
        assert level1.components == 1
        assert level1.is_forest
        assert level1.unique_crossing_leaf_per_component
        assert level1.root_bijection_ok

    def test_level_graph_claims_hold_on_corpus(self, corpus_diagrams):
        for name, d in corpus_diagrams.items():
            q = build_quiver(d)
            for i in d.segment_ids():
                try:
                    part = compute_partition(d, i)
                except PartitionUndefinedError:
                    continue
                for rep in level_graph_report(d, q, part):
                    assert rep.root_bijection_ok, (name, i, rep.level)
                    assert rep.unique_crossing_leaf_per_component, (name, i, rep.level)


class TestSubmodules:
    def test_fig8_t1_lattice(self, fig8_ctx):
        fig8, q, _w, lats = fig8_ctx
        ml = enumerate_submodules(q, link_module(fig8, q, lats[1]))
        assert ml.size == 5
        vecs = sorted(tuple(sorted(v.items())) for v in ml.vectors())
        assert vecs == [
            (),
            ((2, 1), (5, 1)),
            ((2, 1), (5, 1), (8, 1)),
            ((5, 1),),
            ((5, 1), (8, 1)),
        ]

    def test_fig8_t2_chain(self, fig8_ctx):
        fig8, q, _w, lats = fig8_ctx
        ml = enumerate_submodules(q, link_module(fig8, q, lats[2]))
        assert ml.size == 5
        assert sorted(sum(v.values()) for v in ml.vectors()) == [0, 1, 2, 3, 4]

    def test_zero_module(self, fig8_ctx):
        fig8, q, _w, lats = fig8_ctx
        zero = state_module(fig8, q, lats[1], lats[1].min_state)
        assert enumerate_submodules(q, zero).size == 1

    def test_unique_vector_per_submodule(self, fig8_ctx):
        fig8, q, _w, lats = fig8_ctx
        for i in (1, 2):
            ml = enumerate_submodules(q, link_module(fig8, q, lats[i]))
            assert len(ml.elements) == len(set(ml.elements))

    def test_meet_join_closure(self, corpus_diagrams):
        d = corpus_diagrams["10_66"]
        q = build_quiver(d)
        ml = enumerate_submodules(q, link_module(d, q, build_lattice(d, 1)))
        elems = set(ml.elements)
        sample = sorted(elems)[:40]
        for x in sample:
            for y in sample:
                assert tuple(min(a, b) for a, b in zip(x, y)) in elems
                assert tuple(max(a, b) for a, b in zip(x, y)) in elems


class TestRelationsAndIso:
    def test_all_state_modules_satisfy_relations(self, fig8_ctx):
        fig8, q, w, lats = fig8_ctx
        for i in fig8.segment_ids():
            for k in range(lats[i].size):
                assert check_relations(state_module(fig8, q, lats[i], k), q, w)

    def test_mutant_fails(self, fig8_ctx):
        fig8, q, w, lats = fig8_ctx
        rep = link_module(fig8, q, lats[2])
        broken = {a.id: m for a, m in ((a, rep.maps[a.id]) for a in q.arrows)}
        victim = next(
            a for a in q.arrows
            if rep.dims[a.src] == rep.dims[a.tgt] == 1 and rep.maps[a.id].data == ((1,),)
        )
        broken[victim.id] = Mat(1, 1, ((0,),))
        assert not check_relations(QuiverRep(rep.dims, broken), q, w)

    def test_zero_rep_satisfies(self, fig8_ctx):
        fig8, q, w, lats = fig8_ctx
        zero = state_module(fig8, q, lats[1], lats[1].min_state)
        assert check_relations(zero, q, w)

    def test_iso_check_true(self, fig8_ctx):
        fig8, q, _w, lats = fig8_ctx
        for i in (1, 2):
            ml = enumerate_submodules(q, link_module(fig8, q, lats[i]))
            assert lattice_iso_check(lats[i], ml)

    def test_iso_check_mismatched_pair(self, fig8_ctx):
        fig8, q, _w, lats = fig8_ctx
        ml2 = enumerate_submodules(q, link_module(fig8, q, lats[2]))
        assert not lattice_iso_check(lats[1], ml2)
