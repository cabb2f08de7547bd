"""Quiver representations attached to Kauffman states and link diagrams.

The module of a state S is built from the transposition history that
reaches S from the minimal state.  At every crossing that history is a
cyclic run through the four incident segments in counterclockwise order,
so the four arrow matrices fall into the I/J/V/H shapes (identity,
nilpotent shift, drop-first-coordinate, pad-with-zero):

    J * e_k = e_(k-1)   (square, full Jordan block, J * e_1 = 0)
    V * e_k = e_(k-1)   (one column more than rows)
    H * e_k = e_k       (one row more than columns)

with the basis at a vertex ordered by the transpositions at it.  The
link module T(i) is the module of the maximal state; an independent
geometric construction from the level partition of the segments is kept
as a cross-check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from typing import NamedTuple

from .diagram import DiagramError, LinkDiagram
from .quiver import Potential, Quiver
from .states import State, StateLattice, build_lattice


class PartitionUndefinedError(DiagramError):
    """The level-partition construction does not apply to this configuration.

    The recursive partition assumes every level component is a path or a
    pair of paths between two boundary crossings.  Certain diagrams
    (first seen on an 11-crossing diagram with a bigon nested between
    levels) produce a level component that closes into a loop, where that
    assumption and the partition itself break down; the maximal-state
    module remains the authoritative construction of T(i).
    """


class Mat(NamedTuple):
    """Integer matrix with explicit shape (zero dimensions stay distinguishable)."""

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]


# -- exact matrix helpers -----------------------------------------------------


def mat_from_rows(rows: list[list[int]], cols: int | None = None) -> Mat:
    c = cols if cols is not None else (len(rows[0]) if rows else 0)
    return Mat(len(rows), c, tuple(tuple(r) for r in rows))


def mat_identity(n: int) -> Mat:
    return Mat(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))


def mat_shift(n: int) -> Mat:
    """Full nilpotent Jordan block of size n: e_k -> e_(k-1)."""
    return Mat(n, n, tuple(tuple(1 if j == i + 1 else 0 for j in range(n)) for i in range(n)))


def mat_drop_first(cols: int) -> Mat:
    """(cols-1) x cols matrix dropping the first coordinate."""
    return Mat(
        cols - 1,
        cols,
        tuple(tuple(1 if j == i + 1 else 0 for j in range(cols)) for i in range(cols - 1)),
    )


def mat_pad_last(rows: int) -> Mat:
    """rows x (rows-1) inclusion padding a zero in the last coordinate."""
    return Mat(
        rows,
        rows - 1,
        tuple(tuple(1 if j == i else 0 for j in range(rows - 1)) for i in range(rows)),
    )


def mat_zero(rows: int, cols: int) -> Mat:
    return Mat(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch {a.rows}x{a.cols} * {b.rows}x{b.cols}")
    data = tuple(
        tuple(sum(a.data[i][k] * b.data[k][j] for k in range(a.cols)) for j in range(b.cols))
        for i in range(a.rows)
    )
    return Mat(a.rows, b.cols, data)


def mat_rank(m: Mat) -> int:
    from fractions import Fraction

    rows = [[Fraction(x) for x in row] for row in m.data]
    rank = 0
    r = 0
    for c in range(m.cols):
        pivot = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                f = rows[k][c] / pv
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        r += 1
        rank += 1
    return rank


def mat_kind(m: Mat) -> str:
    """Classify a map matrix as I, J, V, H, or E (involving a zero space)."""
    if m.rows == 0 or m.cols == 0:
        return "E"
    if m.rows == m.cols:
        if m == mat_identity(m.rows):
            return "I"
        if m == mat_shift(m.rows):
            return "J"
    if m.rows + 1 == m.cols and m == mat_drop_first(m.cols):
        return "V"
    if m.rows == m.cols + 1 and m == mat_pad_last(m.rows):
        return "H"
    raise DiagramError(f"matrix of shape {m.rows}x{m.cols} is not of I/J/V/H form")


@dataclass(frozen=True)
class QuiverRep:
    """Representation: a dimension per vertex and a matrix per arrow."""

    dims: dict[int, int]
    maps: dict[int, Mat]  # arrow id -> matrix of shape (dim tgt, dim src)

    def dim_vector(self) -> dict[int, int]:
        return {v: d for v, d in self.dims.items() if d}

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def support(self) -> set[int]:
        return {v for v, d in self.dims.items() if d}

    def map_kind(self, arrow_id: int) -> str:
        return mat_kind(self.maps[arrow_id])


# -- state modules -------------------------------------------------------------


def _crossing_history(
    diagram: LinkDiagram, lat: StateLattice, state_index: int, crossing: int
) -> tuple[int, list[int]]:
    """Start corner and the ccw run of segments transposed at a crossing.

    The marker of the crossing starts at its minimal-state corner and is
    pushed one corner counterclockwise by every transposition at one of
    the four incident segments, crossing that segment on the way.  The
    run is therefore determined by the minimal marker and the heights.
    """
    k0 = lat.states[lat.min_state][crossing]
    segs = diagram.crossings[crossing].segments
    h = lat.heights[state_index]
    total = sum(h[lat.segment_index[s]] for s in segs)
    run = [segs[(k0 + 1 + m) % 4] for m in range(total)]
    for s in set(segs):
        if run.count(s) != h[lat.segment_index[s]]:
            raise DiagramError("marker history is inconsistent with heights")
    if total and lat.states[state_index][crossing] != (k0 + total) % 4:
        raise DiagramError("marker position disagrees with transposition count")
    return k0, run


def state_module(
    diagram: LinkDiagram, q: Quiver, lat: StateLattice, state_index: int
) -> QuiverRep:
    """The representation M(S) of a Kauffman state S."""
    h = lat.heights[state_index]
    dims = {j: h[lat.segment_index[j]] for j in diagram.segment_ids()}
    maps: dict[int, Mat] = {}
    for c in range(diagram.n):
        k0, run = _crossing_history(diagram, lat, state_index, c)
        total = len(run)
        ell, rem = divmod(total, 4)
        # arrows of this crossing by corner; the first transposed segment
        # "a" sits at slot k0+1, and the cycle a->d->c->b->a corresponds to
        # corners k0, k0+1, k0+2, k0+3 in the order delta, alpha, beta, gamma
        delta = q.arrow_at_corner(c, k0)
        alpha = q.arrow_at_corner(c, k0 + 1)
        beta = q.arrow_at_corner(c, k0 + 2)
        gamma = q.arrow_at_corner(c, k0 + 3)
        if rem == 0:
            maps[delta.id] = mat_shift(ell)
            maps[gamma.id] = mat_identity(ell)
            maps[beta.id] = mat_identity(ell)
            maps[alpha.id] = mat_identity(ell)
        elif rem == 1:
            maps[delta.id] = mat_drop_first(ell + 1)
            maps[gamma.id] = mat_identity(ell)
            maps[beta.id] = mat_identity(ell)
            maps[alpha.id] = mat_pad_last(ell + 1)
        elif rem == 2:
            maps[delta.id] = mat_drop_first(ell + 1)
            maps[gamma.id] = mat_identity(ell)
            maps[beta.id] = mat_pad_last(ell + 1)
            maps[alpha.id] = mat_identity(ell + 1)
        else:
            maps[delta.id] = mat_drop_first(ell + 1)
            maps[gamma.id] = mat_pad_last(ell + 1)
            maps[beta.id] = mat_identity(ell + 1)
            maps[alpha.id] = mat_identity(ell + 1)
    rep = QuiverRep(dims, maps)
    for a in q.arrows:
        m = rep.maps[a.id]
        if (m.rows, m.cols) != (dims[a.tgt], dims[a.src]):
            raise DiagramError(f"map on arrow {a.id} has the wrong shape")
    return rep


def link_module(diagram: LinkDiagram, q: Quiver, lat: StateLattice) -> QuiverRep:
    """T(i): the module of the maximal Kauffman state."""
    return state_module(diagram, q, lat, lat.max_state)


# -- the level partition of the segments ---------------------------------------


@dataclass
class LevelData:
    level: int
    segments: set[int]  # K'(d)
    added: set[int] = field(default_factory=set)  # segments with eps = 1
    internal_points: list[dict] = field(default_factory=list)
    walks: list[list[int]] = field(default_factory=list)  # segment walks per component


@dataclass
class Partition:
    base_segment: int
    level_of: dict[int, int]
    levels: list[LevelData]

    def level_sets(self) -> list[set[int]]:
        return [ld.segments | ld.added for ld in self.levels]

    def dims(self) -> dict[int, int]:
        return dict(self.level_of)


def _component_split(diagram: LinkDiagram, segs: set[int]) -> list[set[int]]:
    remaining = set(segs)
    comps = []
    while remaining:
        seed = remaining.pop()
        comp = {seed}
        stack = [seed]
        while stack:
            j = stack.pop()
            for c, _ in (diagram.segments[j].tail, diagram.segments[j].head):
                for k in diagram.crossings[c].segments:
                    if k in remaining:
                        remaining.discard(k)
                        comp.add(k)
                        stack.append(k)
        comps.append(comp)
    return comps


def _degree(diagram: LinkDiagram, segs: set[int], crossing: int) -> int:
    return sum(1 for s in diagram.crossings[crossing].segments if s in segs)


def _walk(
    diagram: LinkDiagram, segs: set[int], start: int, prefer_left: bool
) -> list[tuple[int, int]]:
    """Greedy turning walk through ``segs`` from a degree-1 crossing.

    Returns the list of (crossing, departure slot).  Arriving at slot s,
    a left-preferring walk departs through the first unused slot of
    ``segs`` in clockwise order s-1, s-2, s-3 (so it follows the face on
    its left); the right-preferring walk uses the mirror order.  At
    crossings of degree 4 going straight is not allowed.  The walk ends
    when no departure is available.
    """
    first = next(s for s in range(4) if diagram.segment_at(start, s) in segs)
    trail: list[tuple[int, int]] = []
    used: set[int] = set()
    pos = (start, first)
    while True:
        c, s = pos
        seg = diagram.segment_at(c, s)
        trail.append(pos)
        used.add(seg)
        end_c, end_s = (
            diagram.segments[seg].head
            if (c, s) == diagram.segments[seg].tail
            else diagram.segments[seg].tail
        )
        offsets = (3, 2, 1) if prefer_left else (1, 2, 3)
        if _degree(diagram, segs, end_c) == 4:
            offsets = (3, 1) if prefer_left else (1, 3)
        for off in offsets:
            s_out = (end_s + off) % 4
            nxt = diagram.segment_at(end_c, s_out)
            if nxt in segs and nxt not in used:
                pos = (end_c, s_out)
                break
        else:
            return trail


def _walk_segments(diagram: LinkDiagram, walk: list[tuple[int, int]]) -> list[int]:
    return [diagram.segment_at(c, s) for c, s in walk]


def _walk_crossings(diagram: LinkDiagram, walk: list[tuple[int, int]]) -> list[int]:
    """Crossing sequence visited by a walk (start crossing first)."""
    if not walk:
        return []
    out = [walk[0][0]]
    for c, s in walk:
        seg = diagram.segment_at(c, s)
        other = (
            diagram.segments[seg].head
            if (c, s) == diagram.segments[seg].tail
            else diagram.segments[seg].tail
        )
        out.append(other[0])
    return out


def _enclosed_faces(diagram: LinkDiagram, boundary_segs: set[int], outside_hint: int) -> set[int]:
    """Faces separated from ``outside_hint``'s face side by the boundary segments."""
    adj: dict[int, set[int]] = {r.id: set() for r in diagram.regions}
    for j, seg in diagram.segments.items():
        if j in boundary_segs:
            continue
        a, b = diagram.left_region(j), diagram.right_region(j)
        adj[a].add(b)
        adj[b].add(a)
    seen = {outside_hint}
    stack = [outside_hint]
    while stack:
        r = stack.pop()
        for r2 in adj[r]:
            if r2 not in seen:
                seen.add(r2)
                stack.append(r2)
    return {r.id for r in diagram.regions} - seen


def compute_partition(diagram: LinkDiagram, i: int) -> Partition:
    """Partition the segments into levels around the base segment i.

    Level 0 holds the segments bounding the two regions at i (and i).
    Each next level takes the segments that share a region with the
    previous level, plus, for every crossing whose four segments all sit
    in the new level, the segments of the pinched region at that crossing
    that lie strictly inside the enclosed lobe.
    """
    all_segs = set(diagram.segment_ids())
    r1, r2 = diagram.regions_at_segment(i)
    level0 = {i}
    for r in (r1, r2):
        level0.update(diagram.regions[r].segment_ids())
    level_of = {j: 0 for j in level0}
    levels = [LevelData(0, set(level0))]
    assigned = set(level0)

    d = 0
    while assigned != all_segs:
        d += 1
        prev = levels[-1].segments | levels[-1].added
        frontier: set[int] = set()
        for r in diagram.regions:
            segs = set(r.segment_ids())
            if segs & prev:
                frontier.update(segs - assigned)
        if not frontier:
            raise DiagramError(
                f"segments {sorted(all_segs - assigned)} are unreachable from "
                f"segment {i}; diagram violates the primality assumption"
            )
        data = LevelData(d, frontier)
        # walks along each connected component of the new level
        for comp in _component_split(diagram, frontier):
            crossings = {
                c
                for j in comp
                for c, _ in (diagram.segments[j].tail, diagram.segments[j].head)
            }
            externals = sorted(c for c in crossings if _degree(diagram, comp, c) == 1)
            if len(externals) != 2:
                raise PartitionUndefinedError(
                    f"level {d} component {sorted(comp)} has {len(externals)} "
                    "external points instead of 2"
                )
            left = _walk(diagram, comp, externals[0], prefer_left=True)
            right = _walk(diagram, comp, externals[0], prefer_left=False)
            data.walks.append(_walk_segments(diagram, left))
            data.walks.append(_walk_segments(diagram, right))
            covered = set(_walk_segments(diagram, left)) | set(_walk_segments(diagram, right))
            if covered != comp:
                raise DiagramError(f"level {d} walks missed segments {sorted(comp - covered)}")
            internals = [c for c in crossings if _degree(diagram, comp, c) == 4]
            for x in internals:
                for walk in (left, right):
                    seq = _walk_crossings(diagram, walk)
                    if seq.count(x) < 2:
                        continue
                    # positions where the walk sits at x
                    arrivals = [k for k, c in enumerate(seq) if c == x]
                    k1, k2 = arrivals[0], arrivals[1]
                    lobe = walk[k1:k2]  # departures between the two visits
                    lobe_segs = {diagram.segment_at(c, s) for c, s in lobe}
                    # corner pinched between the last arrival and the first
                    # departure of the lobe at x
                    d1 = lobe[0][1] if lobe[0][0] == x else None
                    if d1 is None:
                        continue
                    # the arrival slot at x closing the lobe
                    pc, ps = lobe[-1]
                    seg_back = diagram.segment_at(pc, ps)
                    back_end = (
                        diagram.segments[seg_back].head
                        if (pc, ps) == diagram.segments[seg_back].tail
                        else diagram.segments[seg_back].tail
                    )
                    a2 = back_end[1]
                    if (a2 + 1) % 4 == d1:
                        corner = a2
                    elif (d1 + 1) % 4 == a2:
                        corner = d1
                    else:
                        raise DiagramError("lobe does not pinch at a corner")
                    region = diagram.region_of_corner(x, corner)
                    outside = next(
                        diagram.left_region(s)
                        for c2, s2 in walk[:k1] + walk[k2:]
                        for s in [diagram.segment_at(c2, s2)]
                        if s not in lobe_segs
                    )
                    inside = _enclosed_faces(diagram, lobe_segs, outside)
                    if region not in inside:
                        raise DiagramError("pinched region is not inside its lobe")
                    interior = {
                        j
                        for j in all_segs
                        if j not in lobe_segs
                        and diagram.left_region(j) in inside
                        and diagram.right_region(j) in inside
                    }
                    added = {
                        j
                        for j in set(diagram.regions[region].segment_ids())
                        if j in interior and j not in assigned
                    }
                    data.internal_points.append(
                        {
                            "crossing": x,
                            "region": region,
                            "lobe": sorted(lobe_segs),
                            "interior": sorted(interior),
                            "added": sorted(added),
                        }
                    )
                    data.added.update(added)
                    break
        for j in data.segments | data.added:
            level_of[j] = d
        assigned.update(data.segments | data.added)
        levels.append(data)
    return Partition(i, level_of, levels)


@dataclass
class LevelGraphReport:
    level: int
    crossing_vertices: list[int]
    region_vertices: list[int]
    edges: list[tuple[str, int, str, int]]  # ("x", crossing, "R", region)
    is_forest: bool
    components: int
    crossing_leaves: list[int]
    root_bijection_ok: bool
    unique_crossing_leaf_per_component: bool


def level_graph_report(
    diagram: LinkDiagram, q: Quiver, part: Partition
) -> list[LevelGraphReport]:
    """The dual graphs of the level sets, with the structural claims checked.

    For each level d >= 1 the graph has one vertex per crossing cycle and
    per region cycle lying entirely in the level, with an edge when the
    cycles share an arrow there.  The crossing vertices must be exactly
    the internal points of the level (with their pinched regions as the
    region vertices), and every connected component must have exactly one
    leaf that is a crossing vertex.  Whether the graph is a forest is
    reported as data, not asserted.
    """
    reports = []
    level_sets = part.level_sets()
    for d in range(1, len(level_sets)):
        segs = level_sets[d]
        crossing_vertices = [
            c for c in range(diagram.n) if all(s in segs for s in diagram.crossings[c].segments)
        ]
        region_vertices = [
            r.id for r in diagram.regions if set(r.segment_ids()) <= segs
        ]
        edges = []
        for a in q.arrows:
            if a.src in segs and a.tgt in segs:
                if a.crossing in crossing_vertices and a.region in region_vertices:
                    edges.append(("x", a.crossing, "R", a.region))
        nodes = [("x", c) for c in crossing_vertices] + [("R", r) for r in region_vertices]
        adj: dict[tuple[str, int], set[tuple[str, int]]] = {v: set() for v in nodes}
        for _, c, _, r in edges:
            adj[("x", c)].add(("R", r))
            adj[("R", r)].add(("x", c))
        seen: set[tuple[str, int]] = set()
        components = 0
        unique_leaf = True
        crossing_leaves = []
        for v in nodes:
            if v in seen:
                continue
            components += 1
            stack, comp = [v], []
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w2 in adj[u]:
                    if w2 not in seen:
                        seen.add(w2)
                        stack.append(w2)
            leaves = [u for u in comp if u[0] == "x" and len(adj[u]) <= 1]
            crossing_leaves.extend(c for _, c in leaves)
            if len(leaves) != 1:
                unique_leaf = False
        edge_count = len({(e[1], e[3]) for e in edges})
        is_forest = edge_count == len(nodes) - components
        pinched = {
            rec["crossing"]: rec["region"]
            for rec in part.levels[d].internal_points
        }
        root_ok = (
            sorted(pinched.keys()) == sorted(crossing_vertices)
            and sorted(set(pinched.values())) == sorted(region_vertices)
            and len(set(pinched.values())) == len(pinched)
        )
        reports.append(
            LevelGraphReport(
                level=d,
                crossing_vertices=sorted(crossing_vertices),
                region_vertices=sorted(region_vertices),
                edges=sorted(edges),
                is_forest=is_forest,
                components=components,
                crossing_leaves=sorted(crossing_leaves),
                root_bijection_ok=root_ok,
                unique_crossing_leaf_per_component=unique_leaf,
            )
        )
    return reports


def t_direct(diagram: LinkDiagram, q: Quiver, part: Partition) -> QuiverRep:
    """Geometric construction of T(i) from the level partition.

    Serves as an independent cross-check of ``link_module``: dimensions
    are the levels, maps are V/H across level steps and the identity on
    equal levels, except at the pinched corner of an internal point,
    where the full shift block J acts.
    """
    dims = dict(part.level_of)
    pinched: set[tuple[int, int]] = set()
    for ld in part.levels:
        for rec in ld.internal_points:
            pinched.add((rec["crossing"], rec["region"]))
    maps: dict[int, Mat] = {}
    for a in q.arrows:
        ds, dt = dims[a.src], dims[a.tgt]
        if ds == dt + 1:
            maps[a.id] = mat_drop_first(ds)
        elif ds + 1 == dt:
            maps[a.id] = mat_pad_last(dt)
        elif ds == dt:
            if (a.crossing, a.region) in pinched:
                maps[a.id] = mat_shift(ds)
            else:
                maps[a.id] = mat_identity(ds)
        else:
            raise DiagramError(
                f"level step {ds}->{dt} on arrow {a.id} exceeds 1; corrupt partition"
            )
    return QuiverRep(dims, maps)


# -- submodule lattice ----------------------------------------------------------


@dataclass(frozen=True)
class SubmoduleLattice:
    dims: dict[int, int]
    elements: tuple[tuple[int, ...], ...]  # dim vectors over sorted vertex ids
    vertex_order: tuple[int, ...]
    covers: tuple[tuple[int, int, int], ...]  # (from index, vertex, to index)

    @property
    def size(self) -> int:
        return len(self.elements)

    def vectors(self) -> list[dict[int, int]]:
        out = []
        for el in self.elements:
            out.append({v: m for v, m in zip(self.vertex_order, el) if m})
        return out


def enumerate_submodules(q: Quiver, rep: QuiverRep) -> SubmoduleLattice:
    """All submodules of a representation with I/J/V/H maps.

    A submodule is determined by how many of the ordered basis vectors it
    keeps at every vertex; an arrow map of kind I or H forces
    m(src) <= m(tgt), and of kind J or V forces m(src) - 1 <= m(tgt).
    """
    vertices = tuple(sorted(rep.dims))
    pos = {v: k for k, v in enumerate(vertices)}
    constraints: list[tuple[int, int, int]] = []  # (src pos, tgt pos, slack)
    for a in q.arrows:
        kind = mat_kind(rep.maps[a.id])
        if kind in ("I", "H"):
            constraints.append((pos[a.src], pos[a.tgt], 0))
        elif kind in ("J", "V"):
            constraints.append((pos[a.src], pos[a.tgt], 1))
    by_vertex: dict[int, list[tuple[int, int, int]]] = {}
    for c in constraints:
        by_vertex.setdefault(c[0], []).append(c)
        by_vertex.setdefault(c[1], []).append(c)

    dims_list = [rep.dims[v] for v in vertices]
    elements: list[tuple[int, ...]] = []
    current = [0] * len(vertices)

    def ok(k: int) -> bool:
        for s, t, slack in by_vertex.get(k, ()):
            if s <= k and t <= k and current[s] - slack > current[t]:
                return False
        return True

    def search(k: int) -> None:
        if k == len(vertices):
            elements.append(tuple(current))
            return
        for m in range(dims_list[k] + 1):
            current[k] = m
            if ok(k):
                search(k + 1)
        current[k] = 0

    search(0)
    elements.sort()
    index = {el: k for k, el in enumerate(elements)}
    covers = []
    for k, el in enumerate(elements):
        for p, v in enumerate(vertices):
            if el[p] < dims_list[p]:
                up = el[:p] + (el[p] + 1,) + el[p + 1:]
                if up in index:
                    covers.append((k, v, index[up]))
    return SubmoduleLattice(dict(rep.dims), tuple(elements), vertices, tuple(covers))


# -- relations and lattice isomorphism -------------------------------------------


def _path_matrix(rep: QuiverRep, q: Quiver, path: tuple[int, ...]) -> Mat:
    """Composite matrix along a composable arrow-id path (applied left to right)."""
    arrows = {a.id: a for a in q.arrows}
    first = arrows[path[0]]
    m = mat_identity(rep.dims[first.src])
    for aid in path:
        m = mat_mul(rep.maps[aid], m)
    return m


def check_relations(rep: QuiverRep, q: Quiver, w: Potential) -> bool:
    """Jacobian relations of the potential on a representation.

    For every arrow the two complementary paths of its crossing cycle and
    its region cycle must act identically, and every full crossing cycle
    based at a vertex of dimension d must act as the full shift block of
    size d.
    """
    arrows = {a.id: a for a in q.arrows}
    cycles_with: dict[int, list[tuple[int, ...]]] = {}
    for cyc in list(w.plus) + list(w.minus):
        for aid in cyc:
            cycles_with.setdefault(aid, []).append(cyc)
    for a in q.arrows:
        owning = cycles_with.get(a.id, [])
        if len(owning) != 2:
            raise DiagramError(f"arrow {a.id} lies in {len(owning)} potential cycles")
        complements = []
        for cyc in owning:
            k = cyc.index(a.id)
            complements.append(cyc[k + 1:] + cyc[:k])
        paths = []
        for comp in complements:
            if comp:
                paths.append(_path_matrix(rep, q, comp))
            else:
                paths.append(mat_identity(rep.dims[a.tgt]))
        if paths[0] != paths[1]:
            return False
    for cyc in w.plus:
        for k, aid in enumerate(cyc):
            rooted = cyc[k:] + cyc[:k]
            base = arrows[rooted[0]].src
            if _path_matrix(rep, q, rooted) != mat_shift(rep.dims[base]):
                return False
    return True


def lattice_iso_check(sl: StateLattice, ml: SubmoduleLattice) -> bool:
    """Is height -> dimension vector a lattice isomorphism?"""
    state_vecs = [tuple(sorted(v.items())) for v in sl.height_vectors()]
    mod_vecs = [tuple(sorted(v.items())) for v in ml.vectors()]
    if len(set(state_vecs)) != len(state_vecs):
        return False
    if sorted(state_vecs) != sorted(mod_vecs):
        return False
    state_edges = {
        (state_vecs[a], j, state_vecs[b]) for a, j, b in sl.covers
    }
    mod_edges = {(mod_vecs[a], v, mod_vecs[b]) for a, v, b in ml.covers}
    return state_edges == mod_edges


# -- convenience pipeline ----------------------------------------------------------


def link_module_with_checks(
    diagram: LinkDiagram, q: Quiver, i: int, lat: StateLattice | None = None
) -> tuple[StateLattice, QuiverRep]:
    """Build T(i) via the maximal state and verify the partition agrees."""
    if lat is None:
        lat = build_lattice(diagram, i)
    rep = link_module(diagram, q, lat)
    part = compute_partition(diagram, i)
    direct = t_direct(diagram, q, part)
    if direct.dims != rep.dims or direct.maps != rep.maps:
        raise DiagramError(
            f"link module of segment {i} disagrees with its level partition"
        )
    return lat, rep


def rep_to_json(rep: QuiverRep) -> str:
    data = {
        "dims": {str(v): d for v, d in sorted(rep.dims.items())},
        "maps": {str(a): [list(r) for r in m.data] for a, m in sorted(rep.maps.items())},
    }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def submodules_to_json(ml: SubmoduleLattice) -> str:
    data = {
        "vertex_order": list(ml.vertex_order),
        "elements": [list(el) for el in ml.elements],
        "covers": [list(c) for c in ml.covers],
    }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
