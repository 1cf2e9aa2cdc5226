"""Graph surgery on cylinder maps: identifications, contractions, cutting.

All operations return new validated EmbeddedGraphs.  Vertex ids compress
after deletions (order preserved), so internal variants also return the
old-to-new id map; audits use it to align ring labels across a surgery.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .coloring import ring_precolorings, _solve_first
from .embedding import (
    Cycle,
    CycleRef,
    EmbeddedGraph,
    canon_cycle,
    distance,
    enumerate_short_cycles,
    is_tame,
    _cycles_up_to,
    _face_sides,
)
from .errors import (
    AuditFailed,
    DiagonalAdjacent,
    EulerViolation,
    InvalidParameter,
    MalformedRotation,
    NoSuchCycle,
    NotAFace,
    NotALadder,
    NotTame,
    NotTrianglePair,
    NothingToExtract,
    PreconditionFailed,
    RingVertex,
    TooLarge,
)


# ---------------------------------------------------------------------------
# shared rotation-table helpers
# ---------------------------------------------------------------------------


def _compress_table(
    rot: dict[int, list[int]], rings: Sequence[Sequence[int]]
) -> tuple[EmbeddedGraph, dict[int, int]]:
    ids = sorted(rot)
    remap = {old: new for new, old in enumerate(ids)}
    rotations = tuple(tuple(remap[u] for u in rot[old]) for old in ids)
    new_rings = tuple(tuple(remap[v] for v in ring) for ring in rings)
    return EmbeddedGraph(rotations, new_rings), remap


def _simplify_table(
    rot: dict[int, list[int]], rings: Sequence[Sequence[int]]
) -> tuple[EmbeddedGraph, dict[int, int]]:
    """Build a simple sphere map from a table that may double some edges.

    An identification can record an edge twice (once per merged side).
    Keeping the map planar means deleting one coherent copy, i.e. one
    occurrence at each endpoint; which occurrences pair up is recovered
    by trying the few combinations and validating the result.
    """
    doubled = []
    for v in sorted(rot):
        for u in sorted(set(rot[v])):
            k = rot[v].count(u)
            if k > 2:
                raise MalformedRotation(f"edge {v}-{u} tripled by identification")
            if k == 2 and rot[u].count(v) != 2:
                raise MalformedRotation(f"edge {v}-{u} doubled on one side only")
            if u > v and k == 2:
                doubled.append((v, u))
    if not doubled:
        return _compress_table(rot, rings)
    choices = []
    for v, u in doubled:
        pv = [i for i, x in enumerate(rot[v]) if x == u]
        pu = [i for i, x in enumerate(rot[u]) if x == v]
        choices.append([(v, i, u, j) for i in pv for j in pu])
    last_error: Exception | None = None
    for combo in product(*choices):
        table = {v: list(row) for v, row in rot.items()}
        removals: dict[int, list[int]] = {}
        for v, i, u, j in combo:
            removals.setdefault(v, []).append(i)
            removals.setdefault(u, []).append(j)
        ok = True
        for v, idxs in removals.items():
            if len(set(idxs)) != len(idxs):
                ok = False
                break
            for i in sorted(idxs, reverse=True):
                table[v].pop(i)
        if not ok:
            continue
        try:
            return _compress_table(table, rings)
        except (MalformedRotation, EulerViolation) as exc:
            last_error = exc
    raise MalformedRotation(
        f"no planar simplification of doubled edges {doubled}: {last_error}"
    )


def _linearize(row: Sequence[int], start: int) -> list[int]:
    i = list(row).index(start)
    return list(row[i:]) + list(row[:i])


# ---------------------------------------------------------------------------
# diagonal identification across a 4-face
# ---------------------------------------------------------------------------


def _identify_mapped(
    g: EmbeddedGraph, face: Sequence[int], pair: tuple[int, int]
) -> tuple[EmbeddedGraph, dict[int, int]]:
    fl = g.faces
    fc = canon_cycle(face)
    walk = None
    for idx, f in enumerate(fl.faces):
        if idx in fl.ring_faces or len(f) != 4:
            continue
        if canon_cycle(f) == fc:
            walk = f
            break
    if walk is None:
        raise NotAFace(f"{tuple(face)} is not an internal 4-face")
    v1, v3 = pair
    i = walk.index(v1)
    walk = walk[i:] + walk[:i]
    if walk[2] != v3:
        raise DiagonalAdjacent(f"{pair} is not a diagonal of face {tuple(face)}")
    if g.has_edge(v1, v3):
        raise DiagonalAdjacent(f"diagonal {pair} is an edge")
    ring_vs = g.ring_vertices
    if v1 in ring_vs and v3 in ring_vs:
        raise RingVertex(f"both of {pair} lie on rings")
    keep = v1 if v1 in ring_vs else (v3 if v3 in ring_vs else min(v1, v3))
    drop = v3 if keep == v1 else v1
    if keep != v1:
        walk = walk[2:] + walk[:2]  # re-anchor the walk at the kept vertex
        v1, v3 = keep, drop
    v2, v4 = walk[1], walk[3]

    la = _linearize(g.rotations[v1], v2)  # [v2, ..., v4]
    lb = _linearize(g.rotations[v3], v4)  # [v4, ..., v2]
    if la[-1] != v4 or lb[-1] != v2:
        raise NotAFace(f"face walk {walk} inconsistent with rotations")
    # full multigraph rotation of the merged vertex: the collapsed face
    # leaves the edges to v2 and v4 doubled (two lenses), simplified below
    merged = la + lb

    rot = {v: list(g.rotations[v]) for v in range(g.n)}
    rot[keep] = merged
    del rot[drop]
    for v, row in rot.items():
        rot[v] = [keep if u == drop else u for u in row]
    out, remap = _simplify_table(rot, g.rings)
    remap[drop] = remap[keep]
    return out, remap


def identify_across_face(
    g: EmbeddedGraph, face: Sequence[int], diagonal: str | tuple[int, int] = "13"
) -> EmbeddedGraph:
    """Identify opposite corners of an internal 4-face into one vertex.

    ``diagonal`` selects which opposite pair: "13" for (face[0], face[2]),
    "24" for (face[1], face[3]).  Parallel edges created by the merge are
    collapsed; the merged vertex inherits a ring vertex's identity when
    one endpoint lies on a ring (both on rings is rejected).
    """
    return identify_across_face_mapped(g, face, diagonal)[0]


def identify_across_face_mapped(
    g: EmbeddedGraph, face: Sequence[int], diagonal: str | tuple[int, int] = "13"
) -> tuple[EmbeddedGraph, dict[int, int]]:
    """identify_across_face plus the old-to-new vertex id map."""
    face = tuple(face)
    if len(face) != 4:
        raise NotAFace(f"{face} is not a 4-face")
    if diagonal in ("13", (1, 3)):
        pair = (face[0], face[2])
    elif diagonal in ("24", (2, 4)):
        pair = (face[1], face[3])
    else:
        raise InvalidParameter(f"bad diagonal {diagonal!r}")
    return _identify_mapped(g, face, pair)


# ---------------------------------------------------------------------------
# distance layers and layer cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DistanceClasses:
    """Vertex sets by exact distance from a ring."""

    classes: tuple[frozenset[int], ...]

    def __getitem__(self, a: int) -> frozenset[int]:
        return self.classes[a]

    def __len__(self) -> int:
        return len(self.classes)


def distance_classes(g: EmbeddedGraph, ring_index: int = 0) -> DistanceClasses:
    """Exact BFS layering from the chosen ring."""
    if ring_index >= len(g.rings):
        raise InvalidParameter(f"no ring {ring_index}")
    dist = {v: 0 for v in g.rings[ring_index]}
    frontier = list(dist)
    layers = [frozenset(frontier)]
    while frontier:
        nxt = []
        for v in frontier:
            for u in g.rotations[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        if nxt:
            layers.append(frozenset(nxt))
        frontier = nxt
    return DistanceClasses(tuple(layers))


def _separates_rings(g: EmbeddedGraph, cut: frozenset[int]) -> bool:
    if len(g.rings) != 2:
        return False
    src = [v for v in g.rings[0] if v not in cut]
    dst = {v for v in g.rings[1] if v not in cut}
    if not src or not dst:
        return True
    seen = set(src)
    stack = list(src)
    while stack:
        v = stack.pop()
        for u in g.rotations[v]:
            if u in dst:
                return False
            if u not in cut and u not in seen:
                seen.add(u)
                stack.append(u)
    return True


def shortest_layer_cycle(g: EmbeddedGraph, a: int, ring_index: int = 0) -> CycleRef:
    """Shortest non-contractible cycle with all vertices at distance a.

    Ties are broken lexicographically; the result is induced.
    """
    layers = distance_classes(g, ring_index)
    if a >= len(layers):
        raise NoSuchCycle(f"no vertices at distance {a}")
    layer = layers[a]
    if not _separates_rings(g, layer):
        raise NoSuchCycle(f"layer {a} does not separate the rings")
    for length in range(3, len(layer) + 1):
        found = [
            c
            for c in _cycles_up_to(g, length, within=layer)
            if len(c) == length and not _is_contractible_cycle(g, c)
        ]
        if found:
            best = min(found, key=lambda c: (tuple(sorted(c)), c))
            k = len(best)
            for i in range(k):
                for j in range(i + 2, k):
                    if i == 0 and j == k - 1:
                        continue
                    if g.has_edge(best[i], best[j]):
                        raise AuditFailed(f"shortest layer cycle {best} has a chord")
            return CycleRef(best, False)
    raise NoSuchCycle(f"no non-contractible cycle inside layer {a}")


def _is_contractible_cycle(g: EmbeddedGraph, cyc: Cycle) -> bool:
    side_a, side_b = _face_sides(g, cyc)
    holes = set(g.faces.ring_faces)
    return not (holes & side_a) or not (holes & side_b)


# ---------------------------------------------------------------------------
# ladder contraction
# ---------------------------------------------------------------------------


def _align_layers(g: EmbeddedGraph, xs: Cycle, ys: Cycle) -> Cycle:
    """Rotate/reflect ys so ys[i] is adjacent to xs[i] for all i."""
    k = len(xs)
    options = []
    fwd = list(ys)
    for s in range(k):
        options.append(tuple(fwd[s:] + fwd[:s]))
    rev = list(reversed(ys))
    for s in range(k):
        options.append(tuple(rev[s:] + rev[:s]))
    for cand in options:
        if all(g.has_edge(xs[i], cand[i]) for i in range(k)):
            return cand
    raise NotALadder("layer cycles have no aligned rung matching")


def ladder_contract(g: EmbeddedGraph, q2: CycleRef | Sequence[int], q3: CycleRef | Sequence[int]) -> EmbeddedGraph:
    return _ladder_contract_mapped(g, q2, q3)[0]


def _ladder_contract_mapped(g, q2, q3) -> tuple[EmbeddedGraph, dict[int, int]]:
    """Identify the alternating staircase between two quadrangulated layers.

    For layer length k the identified set runs x1, y2, x3, ... up to
    x_{k-3} when k is even and x_{k-2} when k is odd, realized as a
    sequence of diagonal identifications across the rung 4-faces.
    """
    xs = tuple(q2.vertices if isinstance(q2, CycleRef) else q2)
    ys_raw = tuple(q3.vertices if isinstance(q3, CycleRef) else q3)
    k = len(xs)
    if k != len(ys_raw) or k < 4:
        raise NotALadder("layer cycles must have equal length >= 4")
    if set(xs) & set(ys_raw):
        raise NotALadder("layer cycles share vertices")
    ys = _align_layers(g, xs, ys_raw)
    fl = g.faces
    quads = {
        canon_cycle(f) for i, f in enumerate(fl.faces) if len(f) == 4 and i not in fl.ring_faces
    }
    for i in range(k):
        quad = (xs[i], xs[(i + 1) % k], ys[(i + 1) % k], ys[i])
        if canon_cycle(quad) not in quads:
            raise NotALadder(f"rung face {quad} missing")
    last = k - 3 if k % 2 == 0 else k - 2
    # 1-based alternating staircase: x1, y2, x3, ...
    chain = [
        (xs[t - 1] if t % 2 == 1 else ys[t - 1]) for t in range(1, last + 1)
    ]
    total = {v: v for v in range(g.n)}
    cur = g
    for t in range(1, len(chain)):
        a = total[chain[t - 1]]
        b = total[chain[t]]
        # the rung quad between layer positions t and t+1 (1-based)
        quad = tuple(total[v] for v in (xs[t - 1], xs[t], ys[t], ys[t - 1]))
        cur, remap = _identify_mapped(cur, quad, (a, b))
        total = {v: remap[w] for v, w in total.items()}
    return cur, total


# ---------------------------------------------------------------------------
# collapsing a pair of triangles through a shared vertex
# ---------------------------------------------------------------------------


def collapse_triangle_pair(
    g: EmbeddedGraph, t1: CycleRef | Sequence[int], t2: CycleRef | Sequence[int]
) -> EmbeddedGraph:
    return _collapse_mapped(g, t1, t2)[0]


def _collapse_mapped(g, t1, t2) -> tuple[EmbeddedGraph, dict[int, int]]:
    """Remove the region between two triangles sharing one vertex and glue them."""
    c1 = tuple(t1.vertices if isinstance(t1, CycleRef) else t1)
    c2 = tuple(t2.vertices if isinstance(t2, CycleRef) else t2)
    for c in (c1, c2):
        if len(c) != 3 or not all(
            g.has_edge(c[i], c[(i + 1) % 3]) for i in range(3)
        ):
            raise NotTrianglePair(f"{c} is not a triangle")
        if _is_contractible_cycle(g, c):
            raise NotTrianglePair(f"{c} is contractible")
    shared = set(c1) & set(c2)
    if len(shared) != 1:
        raise NotTrianglePair("triangles must share exactly one vertex")
    z = shared.pop()

    holes = g.faces.ring_faces
    side1 = _face_sides(g, c1)
    side2 = _face_sides(g, c2)
    away1 = side1[0] if holes[0] not in side1[0] else side1[1]
    away2 = side2[0] if len(holes) < 2 or holes[-1] not in side2[0] else side2[1]
    sigma = away1 & away2
    if not sigma:
        raise NotTrianglePair("no region between the triangles")
    if set(holes) & sigma:
        raise NotTrianglePair("a hole lies between the triangles")

    def boundary_walk(tri: Cycle) -> Cycle:
        darts = []
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            if g.face_of_dart(a, b) in sigma:
                darts.append((a, b))
            elif g.face_of_dart(b, a) in sigma:
                darts.append((b, a))
            else:
                raise NotTrianglePair(f"triangle edge {a}-{b} does not bound the region")
        nxt = dict(darts)
        walk = [z, nxt[z], nxt[nxt[z]]]
        if len(set(walk)) != 3 or nxt[walk[2]] != z:
            raise NotTrianglePair("region boundary is not the triangle")
        return tuple(walk)

    w1 = boundary_walk(c1)
    w2 = boundary_walk(c2)
    p1, q1 = w1[1], w1[2]
    p2, q2 = w2[1], w2[2]

    interior_vertices = set()
    for v in range(g.n):
        if v in c1 or v in c2:
            continue
        vfaces = {g.face_of_dart(v, u) for u in g.rotations[v]} | {
            g.face_of_dart(u, v) for u in g.rotations[v]
        }
        if vfaces & sigma:
            if not vfaces <= sigma:
                raise NotTrianglePair(f"vertex {v} straddles the region boundary")
            interior_vertices.add(v)
    interior_edges = set()
    for u, v in g.edges():
        if g.face_of_dart(u, v) in sigma and g.face_of_dart(v, u) in sigma:
            interior_edges.add(frozenset((u, v)))

    rot: dict[int, list[int]] = {}
    for v in range(g.n):
        if v in interior_vertices:
            continue
        row = [
            u
            for u in g.rotations[v]
            if u not in interior_vertices and frozenset((u, v)) not in interior_edges
        ]
        rot[v] = row

    def splice(keep: int, other: int, k_start: int, k_end: int, o_start: int, o_end: int):
        lk = _linearize(rot[keep], k_start)
        if lk[-1] != k_end:
            raise NotTrianglePair("region boundary corners do not close")
        lo = _linearize(rot[other], o_start)
        if lo[-1] != o_end:
            raise NotTrianglePair("region boundary corners do not close")
        rot[keep] = lk + lo
        del rot[other]

    # glue p1 with q2 and q1 with p2 (reversed pairing around the annulus)
    splice(p1, q2, q1, z, z, p2)
    splice(q1, p2, z, p1, q2, z)
    mapping = {q2: p1, p2: q1}
    for v, row in rot.items():
        rot[v] = [mapping.get(u, u) for u in row]
    rings = [tuple(mapping.get(v, v) for v in ring) for ring in g.rings]
    out, remap = _simplify_table(rot, rings)
    for old, new in mapping.items():
        remap[old] = remap[new]
    for v in interior_vertices:
        remap.pop(v, None)
    return out, remap


# ---------------------------------------------------------------------------
# maximal critical subgraph
# ---------------------------------------------------------------------------


def _ext_members(adj: Sequence[Sequence[int]], g: EmbeddedGraph) -> frozenset:
    out = set()
    for combo, fixed in ring_precolorings(g):
        if _solve_first(adj, fixed) is not None:
            out.add(combo)
    return frozenset(out)


def _connected_after(adj: dict[int, set[int]], removed_edge=None, removed_vertex=None) -> bool:
    verts = set(adj)
    if removed_vertex is not None:
        verts.discard(removed_vertex)
    if not verts:
        return True
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in verts or u in seen:
                continue
            if removed_edge and frozenset((v, u)) == removed_edge:
                continue
            seen.add(u)
            stack.append(u)
    return seen == verts


def maximal_critical_subgraph(g: EmbeddedGraph, guard: int = 22) -> EmbeddedGraph:
    return _maximal_critical_mapped(g, guard)[0]


def _maximal_critical_mapped(g: EmbeddedGraph, guard: int = 22):
    """Delete non-ring edges/vertices while the extendable set is unchanged.

    Deletion order: edges first, smallest endpoint pair first, then
    vertices; repeats to a fixpoint.  The fixpoint is critical whenever
    it exceeds the bare rings.
    """
    if g.n > guard:
        raise TooLarge(f"{g.n} vertices exceeds guard {guard}")
    target = _ext_members(g.rotations, g)
    universe = sum(1 for _ in ring_precolorings(g))
    if len(target) == universe:
        raise NothingToExtract("every ring precoloring extends")

    rot: dict[int, list[int]] = {v: list(g.rotations[v]) for v in range(g.n)}
    ring_vs = g.ring_vertices
    ring_edges = g.ring_edge_set()

    def adj_of(table, skip_edge=None, skip_vertex=None):
        mx = max(table) + 1
        adj = [()] * mx
        for v, row in table.items():
            if v == skip_vertex:
                adj[v] = ()
                continue
            adj[v] = tuple(
                u
                for u in row
                if u != skip_vertex
                and (skip_edge is None or frozenset((u, v)) != skip_edge)
            )
        return adj

    def ext_of(table, skip_edge=None, skip_vertex=None):
        return _ext_members(adj_of(table, skip_edge, skip_vertex), g)

    changed = True
    while changed:
        changed = False
        sets = {v: set(row) for v, row in rot.items()}
        edges = sorted(
            frozenset((u, v))
            for v, row in rot.items()
            for u in row
            if u < v and frozenset((u, v)) not in ring_edges
        )
        for e in edges:
            if not _connected_after(sets, removed_edge=e):
                continue
            if ext_of(rot, skip_edge=e) == target:
                u, v = sorted(e)
                rot[u].remove(v)
                rot[v].remove(u)
                changed = True
                break
        if changed:
            continue
        for v in sorted(rot):
            if v in ring_vs:
                continue
            if not _connected_after(sets, removed_vertex=v):
                continue
            if ext_of(rot, skip_vertex=v) == target:
                for u in rot[v]:
                    rot[u].remove(v)
                del rot[v]
                changed = True
                break
    return _compress_table(rot, g.rings)


# ---------------------------------------------------------------------------
# chain decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainDecomposition:
    """Cutting cycles and the sub-cylinders between consecutive ones."""

    cutting_cycles: tuple[CycleRef, ...]
    pieces: tuple[EmbeddedGraph, ...]

    @property
    def n(self) -> int:
        return len(self.pieces)


def _hole1_side(g: EmbeddedGraph, cyc: Cycle) -> frozenset[int]:
    side_a, side_b = _face_sides(g, cyc)
    return frozenset(side_a if g.faces.ring_faces[0] in side_a else side_b)


def _chain_candidates(g: EmbeddedGraph):
    refs = enumerate_short_cycles(g, 4, only_noncontractible=True)
    sides = {r.vertices: _hole1_side(g, r.vertices) for r in refs}
    return refs, sides


def _exception_ok(g, x: Cycle, y: Cycle, ring1: Cycle, ring2: Cycle) -> bool:
    if not (set(x) & set(y)):
        return True
    if canon_cycle(x) == canon_cycle(ring1) and len(x) == 4 and len(y) == 3:
        return True
    if canon_cycle(y) == canon_cycle(ring2) and len(y) == 4 and len(x) == 3:
        return True
    return False


def chain_decompose(g: EmbeddedGraph) -> ChainDecomposition:
    """A maximum-length chain of sub-cylinders cut along short cycles.

    Exact search over the non-contractible (<= 4)-cycles; every triangle
    must be a cutting cycle.  Falls back to the single trivial piece when
    no interior cutting cycle exists.
    """
    if len(g.rings) != 2:
        raise InvalidParameter("chain decomposition needs a cylinder")
    if any(len(r) > 4 for r in g.rings):
        raise InvalidParameter("rings longer than 4")
    if not is_tame(g):
        raise NotTame("graph is not tame")
    ring1, ring2 = g.rings
    if set(ring1) & set(ring2):
        # end cycles must be disjoint (two 4-rings never fall under the
        # triangle exception), so no chain exists at all
        raise InvalidParameter("rings share vertices; no chain exists")
    refs, sides = _chain_candidates(g)
    byc = {canon_cycle(r.vertices): r.vertices for r in refs}
    c0 = byc[canon_cycle(ring1)]
    cn = byc[canon_cycle(ring2)]
    mandatory = [r.vertices for r in refs if len(r.vertices) == 3]

    nodes = []
    for r in refs:
        v = r.vertices
        ok = True
        for m in mandatory:
            if m == v or not (set(m) & set(v)):
                continue
            if not (
                _exception_ok(g, v, m, ring1, ring2)
                or _exception_ok(g, m, v, ring1, ring2)
            ):
                ok = False
                break
        if ok:
            nodes.append(v)
    order = sorted(nodes, key=lambda v: (len(sides[v]), tuple(sorted(v)), v))
    mand_sides = [sides[m] for m in mandatory]

    def edge_ok(x: Cycle, y: Cycle) -> bool:
        if not sides[x] < sides[y]:
            return False
        if not _exception_ok(g, x, y, ring1, ring2):
            return False
        for i, m in enumerate(mandatory):
            if m in (x, y):
                continue
            if sides[x] < mand_sides[i] < sides[y]:
                return False
        return True

    best: dict[Cycle, tuple[int, tuple[Cycle, ...]]] = {c0: (0, (c0,))}
    for x in order:
        if x not in best:
            continue
        lx, px = best[x]
        for y in order:
            if sides[y] <= sides[x] or not edge_ok(x, y):
                continue
            if y not in best or best[y][0] < lx + 1:
                best[y] = (lx + 1, px + (y,))
    if cn not in best:
        raise AuditFailed("no valid chain found")
    path = best[cn][1]
    cycles = tuple(CycleRef(c, False) for c in path)
    pieces = tuple(
        _piece_between(g, path[i], path[i + 1], sides) for i in range(len(path) - 1)
    )
    return ChainDecomposition(cycles, pieces)


def _piece_between(g, x: Cycle, y: Cycle, sides) -> EmbeddedGraph:
    region = sides[y] - sides[x]
    rot: dict[int, list[int]] = {}
    cyc_edges = set()
    for c in (x, y):
        for i in range(len(c)):
            cyc_edges.add(frozenset((c[i], c[(i + 1) % len(c)])))
    for v in range(g.n):
        row = []
        for u in g.rotations[v]:
            e = frozenset((u, v))
            if (
                g.face_of_dart(v, u) in region
                or g.face_of_dart(u, v) in region
                or e in cyc_edges
            ):
                row.append(u)
        if row:
            rot[v] = row
    keep = set(rot)
    for v in keep:
        rot[v] = [u for u in rot[v] if u in keep]
    piece, _ = _compress_table(rot, (x, y))
    return piece


def audit_chain(g: EmbeddedGraph, chain: ChainDecomposition) -> list[str]:
    """Independent check of the five chain conditions; empty means valid."""
    violations: list[str] = []
    cycles = [c.vertices for c in chain.cutting_cycles]
    n = len(cycles) - 1
    ring1, ring2 = g.rings
    if canon_cycle(cycles[0]) != canon_cycle(ring1) or canon_cycle(cycles[-1]) != canon_cycle(ring2):
        violations.append("end cycles are not the rings")
    for c in cycles:
        try:
            if _is_contractible_cycle(g, c):
                violations.append(f"cutting cycle {c} contractible")
        except Exception:
            violations.append(f"{c} is not a cycle")
    last = len(cycles) - 1
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            if not (set(cycles[i]) & set(cycles[j])):
                continue
            if (i, j) == (0, 1):
                allowed = len(cycles[0]) == 4 and len(cycles[1]) == 3
            elif (i, j) == (last - 1, last):
                allowed = len(cycles[last]) == 4 and len(cycles[last - 1]) == 3
            else:
                allowed = False
            if not allowed:
                violations.append(f"cycles {i} and {j} intersect")
    # separation order, path-based
    for j in range(1, len(cycles) - 1):
        cut = set(cycles[j])
        for i in range(j):
            for k in range(j + 1, len(cycles)):
                src = [v for v in cycles[i] if v not in cut]
                dst = {v for v in cycles[k] if v not in cut}
                if not src or not dst:
                    continue
                seen = set(src)
                stack = list(src)
                reached = False
                while stack and not reached:
                    v = stack.pop()
                    for u in g.rotations[v]:
                        if u in cut or u in seen:
                            continue
                        if u in dst:
                            reached = True
                            break
                        seen.add(u)
                        stack.append(u)
                if reached:
                    violations.append(f"cycle {j} fails to separate {i} from {k}")
    triangles = [c for c in _cycles_up_to(g, 3)]
    canon_cuts = {canon_cycle(c) for c in cycles}
    for t in triangles:
        if canon_cycle(t) not in canon_cuts:
            violations.append(f"triangle {t} is not a cutting cycle")
    # pieces tile the graph: regions partition the internal faces and each
    # piece carries exactly its region's edges plus its boundary cycles
    sides = {c: _hole1_side(g, c) for c in cycles}
    covered_faces: set[int] = set()
    for i in range(n):
        region = sides[cycles[i + 1]] - sides[cycles[i]]
        if covered_faces & region:
            violations.append(f"piece {i} overlaps earlier pieces")
        covered_faces |= region
        expected = set()
        for c in (cycles[i], cycles[i + 1]):
            for t in range(len(c)):
                expected.add(frozenset((c[t], c[(t + 1) % len(c)])))
        for u, v in g.edges():
            if g.face_of_dart(u, v) in region or g.face_of_dart(v, u) in region:
                expected.add(frozenset((u, v)))
        if i < len(chain.pieces) and chain.pieces[i].edge_count != len(expected):
            violations.append(f"piece {i} edge count mismatch")
    all_faces = set(range(len(g.faces.faces))) - set(g.faces.ring_faces)
    if covered_faces != all_faces:
        violations.append("pieces do not tile the internal faces")
    return violations


def max_chain_exhaustive(g: EmbeddedGraph) -> int:
    """Brute-force maximum chain length by trying all cycle subsequences."""
    refs, sides = _chain_candidates(g)
    ring1, ring2 = g.rings
    byc = {canon_cycle(r.vertices): r.vertices for r in refs}
    c0 = byc[canon_cycle(ring1)]
    cn = byc[canon_cycle(ring2)]
    if c0 == cn:
        return 1
    triangles = {canon_cycle(c) for c in _cycles_up_to(g, 3)}
    middle = [r.vertices for r in refs if r.vertices not in (c0, cn)]
    best = 0
    from itertools import combinations as combos

    for r in range(len(middle) + 1):
        for sub in combos(middle, r):
            seq = [c0] + sorted(sub, key=lambda c: len(sides[c])) + [cn]
            if {canon_cycle(c) for c in seq} >= triangles and _valid_chain_seq(
                g, seq, sides, ring1, ring2
            ):
                best = max(best, len(seq) - 1)
    return best


def _valid_chain_seq(g, seq, sides, ring1, ring2) -> bool:
    for i in range(len(seq) - 1):
        if not sides[seq[i]] < sides[seq[i + 1]]:
            return False
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if set(seq[i]) & set(seq[j]):
                endpair = (i, j) in ((0, 1), (len(seq) - 2, len(seq) - 1))
                type_ok = (
                    len(seq[i]) == 4 and len(seq[j]) == 3 and i in (0, len(seq) - 1)
                ) or (len(seq[j]) == 4 and len(seq[i]) == 3 and j in (0, len(seq) - 1))
                if not (endpair and type_ok):
                    return False
    return True


# ---------------------------------------------------------------------------
# the cutting step
# ---------------------------------------------------------------------------


def cut_step(g: EmbeddedGraph, d0: int, guard: int = 22, audit: bool = True) -> EmbeddedGraph:
    out, _ = _cut_step_mapped(g, d0, guard, audit)
    return out


def _cut_step_mapped(g: EmbeddedGraph, d0: int, guard: int, audit: bool):
    if len(g.rings) != 2 or any(len(r) > 4 for r in g.rings):
        raise PreconditionFailed("rings: need a cylinder with rings of length <= 4")
    from .analysis import is_critical  # deferred: analysis imports this module

    if not is_critical(g, guard=guard).is_critical:
        raise PreconditionFailed("critical: input graph is not critical")
    triangles = enumerate_short_cycles(g, 3)
    if any(t.contractible for t in triangles):
        raise PreconditionFailed("contractible-triangle-free")
    ring_canons = {canon_cycle(r) for r in g.rings}
    for r in enumerate_short_cycles(g, 4, only_noncontractible=True):
        if canon_cycle(r.vertices) not in ring_canons:
            raise PreconditionFailed(
                "noncontractible-cycles-are-rings: extra cycle "
                f"{r.vertices}"
            )
    d = distance(g, g.rings[0], g.rings[1])
    if d0 < 3 or d < d0:
        raise PreconditionFailed(f"distance: d({d}) < d0({d0})")

    result = _cut_route(g, d0, guard)
    if result is None:
        raise PreconditionFailed("no identification or ladder step applies")
    out, total = result
    if audit:
        _audit_cut(g, out, total, d, guard)
    return out, total


def _cut_route(g: EmbeddedGraph, d0: int, guard: int):
    d = distance(g, g.rings[0], g.rings[1])
    fl = g.faces
    faces4 = []
    facelen_at = [0] * g.n
    for i, f in enumerate(fl.faces):
        if i in fl.ring_faces:
            continue
        for v in f:
            facelen_at[v] = max(facelen_at[v], len(f))
    ring_vs = set(g.ring_vertices)
    for i, f in enumerate(fl.faces):
        if i in fl.ring_faces or len(f) != 4:
            continue
        if any(facelen_at[v] > 4 for v in f):
            continue
        if min(distance(g, {v}, ring_vs) for v in f) < 3:
            continue
        faces4.append(f)
    faces4.sort(key=lambda f: tuple(sorted(f)))

    for f in faces4:
        for pair in ((f[0], f[2]), (f[1], f[3])):
            try:
                g1, m1 = _identify_mapped(g, f, pair)
            except (MalformedRotation, DiagonalAdjacent, RingVertex):
                continue
            if distance(g1, g1.rings[0], g1.rings[1]) < d:
                continue
            g2, m2 = _maximal_critical_mapped(g1, guard)
            total = {v: m2[m1[v]] for v in range(g.n) if v in m1 and m1[v] in m2}
            z1 = m2.get(m1[pair[0]])
            if not is_tame(g2):
                g3, m3 = _collapse_best_pair(g2, z1)
                total = {v: m3[w] for v, w in total.items() if w in m3}
            else:
                g3 = g2
            ring_canons = {canon_cycle(r) for r in g3.rings}
            extra = [
                r
                for r in enumerate_short_cycles(g3, 4, only_noncontractible=True)
                if canon_cycle(r.vertices) not in ring_canons
            ]
            if extra:
                return g3, total
            # still critical with full distance: recurse on the smaller graph
            sub = _cut_step_mapped(g3, d0, guard, audit=False)
            out, mrec = sub
            return out, {v: mrec[w] for v, w in total.items() if w in mrec}

    # ladder route: find a quadrangulated band and contract the staircase
    classes = distance_classes(g, 0)
    fl = g.faces
    only4 = [True] * g.n
    for i, f in enumerate(fl.faces):
        if i in fl.ring_faces:
            continue
        if len(f) > 4:
            for v in f:
                only4[v] = False
    dmax = len(classes) - 1
    for b in range(2, dmax - 2):
        window = range(b - 1, min(b + 6, dmax) + 1)
        if not all(a <= dmax and all(only4[v] for v in classes[a]) for a in window):
            continue
        try:
            qs = [shortest_layer_cycle(g, a) for a in range(b, min(b + 6, dmax))]
        except NoSuchCycle:
            continue
        if len(qs) < 4:
            continue
        if any(len(q.vertices) < len(qs[0].vertices) for q in qs):
            continue
        try:
            out, total = _ladder_contract_mapped(g, qs[2].vertices, qs[3].vertices)
            return out, total
        except NotALadder:
            continue
    return None


def _collapse_best_pair(g: EmbeddedGraph, z: Optional[int]):
    tris = [t.vertices for t in enumerate_short_cycles(g, 3) if not t.contractible]
    if z is not None:
        tris = [t for t in tris if z in t]
    best = None
    for i in range(len(tris)):
        for j in range(i + 1, len(tris)):
            if len(set(tris[i]) & set(tris[j])) != 1:
                continue
            try:
                out, remap = _collapse_mapped(g, tris[i], tris[j])
            except NotTrianglePair:
                continue
            size = g.n - out.n
            if best is None or size > best[0]:
                best = (size, out, remap)
    if best is None:
        raise NotTrianglePair("no collapsible triangle pair")
    return best[1], best[2]


def _audit_cut(g, out, total, d_before, guard):
    from .coloring import dominates_under
    from .families import near_quad33_decomposition

    if len(out.rings) != 2:
        raise AuditFailed("result is not a cylinder")
    ring_map = {v: total[v] for v in g.ring_vertices}
    if not dominates_under(out, g, ring_map):
        raise AuditFailed("result does not dominate the input")
    d_after = distance(out, out.rings[0], out.rings[1])
    if d_after < d_before - 2:
        raise AuditFailed(f"ring distance dropped from {d_before} to {d_after}")
    ring_canons = {canon_cycle(r) for r in out.rings}
    extra = [
        r
        for r in enumerate_short_cycles(out, 4, only_noncontractible=True)
        if canon_cycle(r.vertices) not in ring_canons
    ]
    if not extra:
        raise AuditFailed("no new short non-contractible cycle")
    ring_vs = set(out.ring_vertices)
    zs = set(extra[0].vertices)
    for r in extra[1:]:
        zs &= set(r.vertices)
    zs = {z for z in zs if distance(out, {z}, ring_vs) >= 3}
    if not zs:
        raise AuditFailed("no common far vertex on the new short cycles")
    dec_out = near_quad33_decomposition(out)
    if dec_out is not None:
        dec_in = near_quad33_decomposition(g)
        if dec_in is None:
            raise AuditFailed("near-quadrangulation result without near-quadrangulation input")
        fives_out = sum(1 for f in out.faces.faces if len(f) == 5)
        fives_in = sum(1 for f in g.faces.faces if len(f) == 5)
        if fives_out != fives_in:
            raise AuditFailed("5-face counts differ")
