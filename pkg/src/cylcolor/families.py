"""Constructors and exhaustive generators for the graph families.

Covers the iterated tetrahedron chain (Thomas-Walls graphs) and its
reduced cylinder form, quadrangulated-disk patches, patching and framing
surgeries, 3,3-quadrangulations of the cylinder and their near variants,
pendant-ring attachment, and cylindrical grids used as fixtures.

Generators are exhaustive and isomorph-free: labeled enumeration with a
fixed derivation order, deduplicated by canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from ._canon import canonical_form
from .embedding import (
    Cycle,
    EmbeddedGraph,
    reflected,
    rotation_system_from_faces,
)
from .errors import (
    CylColorError,
    EdgeNotOnRing,
    InvalidParameter,
    MalformedRotation,
    NotIndependent,
    RingShapeMismatch,
    RingVertex,
    TooManyRings,
    WrongDegree,
)


@dataclass(frozen=True)
class InterfacePairs:
    """The two diagonal pairs of a reduced Thomas-Walls graph's end 4-cycles."""

    first: tuple[int, int]
    second: tuple[int, int]


@dataclass(frozen=True)
class FamilySpec:
    """A generator request: which family, with which bounds.

    Kinds and their parameters:
      thomas_walls, reduced      -> n >= 1
      patches, hexagon_disks     -> max_internal >= 0
      quad33, near_quad33        -> max_vertices >= 6
      framed_patched             -> max_vertices >= 4, patch_bound >= 0
      grid                       -> width >= 3, layers >= 1
    """

    kind: str
    n: int = 1
    max_internal: int = 2
    max_vertices: int = 8
    patch_bound: int = 2
    width: int = 4
    layers: int = 3

    def validate(self) -> None:
        checks = {
            "thomas_walls": self.n >= 1,
            "reduced": self.n >= 1,
            "patches": self.max_internal >= 0,
            "hexagon_disks": self.max_internal >= 0,
            "quad33": self.max_vertices >= 6,
            "near_quad33": self.max_vertices >= 6,
            "framed_patched": self.max_vertices >= 4 and self.patch_bound >= 0,
            "grid": self.width >= 3 and self.layers >= 1,
        }
        if self.kind not in checks:
            raise InvalidParameter(f"unknown family kind {self.kind!r}")
        if not checks[self.kind]:
            raise InvalidParameter(f"bad parameters for {self.kind}")

    def realize(self) -> list[EmbeddedGraph]:
        """Generate the family, isomorph-free and in canonical order."""
        from ._canon import canonical_form as canon

        self.validate()
        if self.kind == "thomas_walls":
            return [thomas_walls(self.n)]
        if self.kind == "reduced":
            return [reduced_thomas_walls(self.n)[0]]
        if self.kind == "patches":
            return generate_patches(self.max_internal)
        if self.kind == "hexagon_disks":
            return generate_hexagon_disks(self.max_internal)
        if self.kind == "quad33":
            return generate_quad33(self.max_vertices)
        if self.kind == "grid":
            return [cylinder_grid(self.width, self.layers)]
        if self.kind == "near_quad33":
            seen: dict[bytes, EmbeddedGraph] = {}
            for base in generate_quad33(self.max_vertices):
                for subs in subdivision_choices(base):
                    g = near_quad33(base, subs)
                    seen.setdefault(canon(g), g)
            return [seen[k] for k in sorted(seen)]
        seen = {}
        for g, _ in enumerate_framed_patched(self.max_vertices, self.patch_bound):
            seen.setdefault(canon(g), g)
        return [seen[k] for k in sorted(seen)]


def subdivision_choices(base: EmbeddedGraph):
    """All (edge or None) picks per ring for near-quadrangulation variants."""
    per_ring = []
    for ring in base.rings:
        per_ring.append(
            [None] + [(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]
        )
    for e1 in per_ring[0]:
        for e2 in per_ring[1]:
            yield (e1, e2)


# ---------------------------------------------------------------------------
# Thomas-Walls chain
# ---------------------------------------------------------------------------


def _k4() -> EmbeddedGraph:
    return EmbeddedGraph(((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)))


def _c4_two_holes() -> tuple[EmbeddedGraph, Cycle, Cycle]:
    g = EmbeddedGraph(
        ((2, 3), (2, 3), (0, 1), (0, 1)),
        rings=((0, 2, 1, 3), (2, 0, 3, 1)),
    )
    return g, (0, 2, 1, 3), (2, 0, 3, 1)


def _attach_gadget(rot: list[list[int]], walk: Cycle, u: int, v: int, x: int, y: int, z: int) -> Cycle:
    """Grow the chain by one gadget inside the hole face `walk`.

    `walk` is the traced walk of the hole 4-face, u and v opposite on it.
    Adds x adjacent to u, and y, z adjacent to v, plus edges xy and xz
    (the yz diagonal is intentionally absent).  Returns the new hole walk.
    """
    i = walk.index(u)
    w = walk[i:] + walk[:i]
    if w[2] != v:
        raise InvalidParameter(f"{u} and {v} not opposite on hole walk {walk}")
    b_side, a_side = w[1], w[3]
    # at u: x lands in the hole corner, between a_side and b_side
    ru = rot[u]
    ru.insert(ru.index(a_side) + 1, x)
    # at v: z then y land in the hole corner, between b_side and a_side
    rv = rot[v]
    j = rv.index(b_side) + 1
    rv[j:j] = [z, y]
    rot.extend([[z, u, y], [v, x], [x, v]])  # rotations of x, y, z
    return (x, z, v, y)


def reduced_thomas_walls(n: int) -> tuple[EmbeddedGraph, InterfacePairs]:
    """Reduced chain T'_n in the cylinder, with its interface pairs.

    T'_1 is a 4-cycle whose two faces are both holes; its interface
    pairs are the two opposite vertex pairs.  For n >= 2 the rings are
    the two end 4-cycles left by removing the end diagonals.
    """
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    if n == 1:
        g, _, _ = _c4_two_holes()
        return g, InterfacePairs((0, 1), (2, 3))
    rot: list[list[int]] = [[2, 3], [2, 3], [0, 1], [0, 1]]
    walk: Cycle = (2, 0, 3, 1)  # second hole face of the starting 4-cycle
    u, v = 2, 3
    for i in range(1, n):
        x, y, z = 3 * i + 1, 3 * i + 2, 3 * i + 3
        walk = _attach_gadget(rot, walk, u, v, x, y, z)
        u, v = y, z
    ring1 = (0, 2, 1, 3)
    ring2 = (walk[3], walk[0], walk[1], walk[2])  # (y, x, z, v)
    g = EmbeddedGraph(tuple(tuple(r) for r in rot), rings=(ring1, ring2))
    return g, InterfacePairs((0, 1), (u, v))


def _insert_chord(rot: list[list[int]], walk: Cycle, a: int, c: int) -> None:
    """Draw the diagonal a-c inside the 4-face with traced walk `walk`."""
    i = walk.index(a)
    w = walk[i:] + walk[:i]
    if w[2] != c:
        raise InvalidParameter(f"{a} and {c} not opposite on {walk}")
    ra = rot[a]
    ra.insert(ra.index(w[3]) + 1, c)  # succ(pred) = c, succ(c) = old succ
    rc = rot[c]
    rc.insert(rc.index(w[1]) + 1, a)


def thomas_walls(n: int) -> EmbeddedGraph:
    """The n-th graph of the iterated tetrahedron chain, in the sphere."""
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    if n == 1:
        return _k4()
    g, pairs = reduced_thomas_walls(n)
    rot = [list(r) for r in g.rotations]
    faces = g.faces
    walk1 = faces.faces[faces.ring_faces[0]]
    walk2 = faces.faces[faces.ring_faces[1]]
    _insert_chord(rot, walk1, *pairs.first)
    _insert_chord(rot, walk2, *pairs.second)
    return EmbeddedGraph(tuple(tuple(r) for r in rot))


# ---------------------------------------------------------------------------
# quadrangulations of a disk (shared generator engine)
# ---------------------------------------------------------------------------


def _fill_disk(
    boundary_len: int, max_internal: int, no_chords_within: frozenset[int] = frozenset()
) -> list[tuple[tuple[Cycle, ...], int]]:
    """All fillings of a boundary cycle by quadrilateral faces.

    Boundary vertices are 0..boundary_len-1; new internal vertices get
    the next ids.  Returns (internal faces, total vertex count) for each
    completed filling; faces are oriented consistently with the boundary
    walk 0,1,...,B-1.  Labeled enumeration is duplicate-free: the face at
    the first dart of the active region is determined by the final
    object, so each filling has exactly one derivation.
    """
    B = boundary_len
    results: list[tuple[tuple[Cycle, ...], int]] = []
    edges0 = {frozenset((i, (i + 1) % B)) for i in range(B)}

    def rec(regions, faces, edges, n_total):
        if not regions:
            results.append((tuple(faces), n_total))
            return
        region = regions[-1]
        rest = regions[:-1]
        L = len(region)
        a, b = region[0], region[1]
        c_opts: list[tuple[str, int]] = [("pos", j) for j in range(2, L)] + [("new", -1)]
        d_opts = list(c_opts)
        for (ck, jc), (dk, jd) in product(c_opts, d_opts):
            if ck == "pos" and dk == "pos" and jc >= jd:
                continue
            new_needed = (ck == "new") + (dk == "new")
            if n_total + new_needed > B + max_internal:
                continue
            nxt = n_total
            if ck == "new":
                c = nxt
                nxt += 1
            else:
                c = region[jc]
            if dk == "new":
                d = nxt
                nxt += 1
            else:
                d = region[jd]
            # edge b-c
            new_edges = []
            if ck == "pos":
                if jc == 2:
                    pass  # walk edge
                elif frozenset((b, c)) in edges or (b in no_chords_within and c in no_chords_within):
                    continue
                else:
                    new_edges.append(frozenset((b, c)))
            else:
                new_edges.append(frozenset((b, c)))
            # edge c-d
            if ck == "pos" and dk == "pos":
                if jd == jc + 1:
                    pass  # walk edge
                elif frozenset((c, d)) in edges or (c in no_chords_within and d in no_chords_within):
                    continue
                else:
                    new_edges.append(frozenset((c, d)))
            else:
                new_edges.append(frozenset((c, d)))
            # edge d-a
            if dk == "pos":
                if jd == L - 1:
                    pass  # walk edge
                elif frozenset((d, a)) in edges or (d in no_chords_within and a in no_chords_within):
                    continue
                else:
                    new_edges.append(frozenset((d, a)))
            else:
                new_edges.append(frozenset((d, a)))

            # remaining sub-regions after carving the quad (a, b, c, d)
            if ck == "new" and dk == "new":
                pieces = [region[1:] + [a, d, c]]
            elif ck == "pos" and dk == "new":
                pieces = [region[1 : jc + 1], region[jc:] + [a, d]]
            elif ck == "new" and dk == "pos":
                pieces = [region[jd:] + [a], region[1 : jd + 1] + [c]]
            else:
                pieces = [
                    region[1 : jc + 1],
                    region[jc : jd + 1],
                    region[jd:] + [a],
                ]
            keep = []
            ok = True
            for p in pieces:
                if len(p) == 2:
                    continue
                if len(p) % 2 == 1 or len(p) < 4:
                    ok = False
                    break
                keep.append(p)
            if not ok:
                continue
            rec(rest + keep, faces + [(a, b, c, d)], edges | set(new_edges), nxt)

    rec([list(range(B))], [], edges0, B)
    return results


def _disk_graph(faces: tuple[Cycle, ...], n_total: int, boundary_len: int) -> EmbeddedGraph:
    hole = (0,) + tuple(range(boundary_len - 1, 0, -1))
    rot = rotation_system_from_faces(list(faces) + [hole], n_total)
    return EmbeddedGraph(rot, rings=(tuple(range(boundary_len)),))


def generate_hexagon_disks(max_internal: int) -> list[EmbeddedGraph]:
    """All quadrangulated disks with a 6-ring, chords allowed, isomorph-free."""
    seen: dict[bytes, EmbeddedGraph] = {}
    for faces, n_total in _fill_disk(6, max_internal):
        g = _disk_graph(faces, n_total, 6)
        seen.setdefault(canonical_form(g), g)
    return [seen[k] for k in sorted(seen)]


def generate_patches(max_internal: int) -> list[EmbeddedGraph]:
    """All patches (chordless 6-ring, quadrangulated interior), isomorph-free."""
    if max_internal < 0:
        raise InvalidParameter("max_internal must be >= 0")
    seen: dict[bytes, EmbeddedGraph] = {}
    for faces, n_total in _fill_disk(6, max_internal, frozenset(range(6))):
        g = _disk_graph(faces, n_total, 6)
        seen.setdefault(canonical_form(g), g)
    return [seen[k] for k in sorted(seen)]


# ---------------------------------------------------------------------------
# patching
# ---------------------------------------------------------------------------


def _oriented_patch(patch: EmbeddedGraph) -> EmbeddedGraph:
    """Reflect the patch if needed so its hole walk follows the ring descriptor."""
    ring = patch.rings[0]
    walk = patch.faces.faces[patch.faces.ring_faces[0]]
    i = walk.index(ring[0])
    walk = walk[i:] + walk[:i]
    if walk == ring:
        return patch
    flipped = (ring[0],) + tuple(reversed(ring[1:]))
    if walk != flipped:
        raise MalformedRotation("patch ring does not match its hole walk")
    return reflected(patch)


def patch_ring_variants(patch: EmbeddedGraph) -> list[EmbeddedGraph]:
    """The 12 gluing alignments of a patch (ring rotations and reversals)."""
    ring = patch.rings[0]
    out = []
    for k in range(6):
        rotated = ring[k:] + ring[:k]
        out.append(patch.with_rings((rotated,)))
        out.append(patch.with_rings(((rotated[0],) + tuple(reversed(rotated[1:])),)))
    return out


def _check_placements(g: EmbeddedGraph, placements) -> None:
    verts = [v for v, _ in placements]
    if len(set(verts)) != len(verts):
        raise NotIndependent("repeated placement vertex")
    for v in verts:
        if v in g.ring_vertices:
            raise RingVertex(f"placement vertex {v} lies on a ring")
        if g.degree(v) != 3:
            raise WrongDegree(f"placement vertex {v} has degree {g.degree(v)}")
    for v, u in combinations(verts, 2):
        if g.has_edge(v, u):
            raise NotIndependent(f"placement vertices {v}, {u} are adjacent")


def _compress(rot: dict[int, list[int]], rings: Iterable[Sequence[int]]):
    """Relabel a rotation dict onto dense ids, preserving id order."""
    ids = sorted(rot)
    remap = {old: new for new, old in enumerate(ids)}
    rotations = tuple(tuple(remap[u] for u in rot[old]) for old in ids)
    new_rings = tuple(tuple(remap[v] for v in ring) for ring in rings)
    return rotations, new_rings, remap


def _patch_graph_mapped(g: EmbeddedGraph, placements) -> tuple[EmbeddedGraph, dict[int, int]]:
    _check_placements(g, placements)
    rot: dict[int, list[int]] = {v: list(g.rotations[v]) for v in range(g.n)}
    next_id = g.n
    for v, patch in placements:
        pa = _oriented_patch(patch)
        ring = pa.rings[0]
        nbrs = rot[v]
        i = nbrs.index(min(nbrs))
        xyz = nbrs[i:] + nbrs[:i]  # rotation order starting at the smallest id
        sigma: dict[int, int] = {}
        for t in range(3):
            sigma[ring[2 * t]] = xyz[t]
        for p in range(pa.n):
            if p not in sigma:
                sigma[p] = next_id
                next_id += 1
        # interior vertices and odd ring vertices: rotation copied through sigma
        for p in range(pa.n):
            if p in ring and ring.index(p) % 2 == 0:
                continue
            rot[sigma[p]] = [sigma[q] for q in pa.rotations[p]]
        # even ring vertices replace v inside the host rotation
        for t in range(3):
            rp = ring[2 * t]
            succ_ring = ring[(2 * t + 1) % 6]
            pred_ring = ring[(2 * t - 1) % 6]
            prot = list(pa.rotations[rp])
            j = prot.index(succ_ring)
            lin = prot[j:] + prot[:j]
            if lin[-1] != pred_ring:
                raise MalformedRotation("patch ring corner is not a hole corner")
            internals = [sigma[q] for q in lin[1:-1]]
            host = rot[xyz[t]]
            k = host.index(v)
            host[k : k + 1] = [sigma[succ_ring]] + internals + [sigma[pred_ring]]
        del rot[v]
    rotations, rings, remap = _compress(rot, g.rings)
    return EmbeddedGraph(rotations, rings), remap


def patch_graph(
    g: EmbeddedGraph, placements: Sequence[tuple[int, EmbeddedGraph]]
) -> EmbeddedGraph:
    """Replace each placed degree-3 vertex by a 6-cycle filled with the patch.

    The placed vertex v with rotation (x, y, z) becomes the hexagon
    x a y b z c; the patch's ring maps onto that hexagon starting at x
    (the smallest-id neighbor).  Other alignments are obtained by passing
    a patch from patch_ring_variants.
    """
    return _patch_graph_mapped(g, placements)[0]


# ---------------------------------------------------------------------------
# framing
# ---------------------------------------------------------------------------


def frame(
    g: EmbeddedGraph,
    pairs: InterfacePairs,
    choices: Sequence[tuple[bool, bool]],
) -> EmbeddedGraph:
    """Add new ring 4-cycles x y' z w' at both ends.

    ``choices[i] = (fresh_y, fresh_w)`` decides whether y'_i and w'_i are
    new vertices or reuse y_i and w_i.  Reusing both leaves the end
    unchanged apart from the ring designation.
    """
    if len(g.rings) != 2:
        raise RingShapeMismatch("framing needs a cylinder with two rings")
    if len(choices) != 2:
        raise InvalidParameter("one choice per end is required")
    rot = [list(r) for r in g.rotations]
    next_id = g.n
    new_rings: list[Cycle] = []
    for end, (x, z) in enumerate((pairs.first, pairs.second)):
        ring = g.rings[end]
        if len(ring) != 4:
            raise RingShapeMismatch(f"ring {ring} is not a 4-cycle")
        if x not in ring or z not in ring:
            raise RingShapeMismatch(f"pair ({x},{z}) not on ring {ring}")
        di = ring.index(x)
        desc = ring[di:] + ring[:di]
        if desc[2] != z:
            raise RingShapeMismatch(f"pair ({x},{z}) not opposite on ring {ring}")
        y_desc, w_desc = desc[1], desc[3]
        walk = g.faces.faces[g.faces.ring_faces[end]]
        wi = walk.index(x)
        walk = walk[wi:] + walk[:wi]
        alpha, beta = walk[1], walk[3]
        fresh_y, fresh_w = choices[end]
        fresh_alpha = fresh_y if alpha == y_desc else fresh_w
        fresh_beta = fresh_w if alpha == y_desc else fresh_y
        alpha_p = alpha
        beta_p = beta
        inserts: list[int] = []
        if fresh_beta:
            beta_p = next_id
            next_id += 1
            inserts.append(beta_p)
            rot.append([x, z])
        if fresh_alpha:
            alpha_p = next_id
            next_id += 1
            inserts.append(alpha_p)
            rot.append([x, z])
        if inserts:
            # at x the fresh vertices sit in the hole corner between beta
            # and alpha, ordered beta', alpha'; at z the mirror order.
            rx = rot[x]
            k = rx.index(beta)
            seq = [p for p in (beta_p, alpha_p) if p != alpha and p != beta]
            rx[k + 1 : k + 1] = seq
            rz = rot[z]
            k = rz.index(alpha)
            rz[k + 1 : k + 1] = list(reversed(seq))
        y_p = alpha_p if alpha == y_desc else beta_p
        w_p = beta_p if alpha == y_desc else alpha_p
        new_rings.append((x, y_p, z, w_p))
    return EmbeddedGraph(tuple(tuple(r) for r in rot), tuple(new_rings))


# ---------------------------------------------------------------------------
# 3,3-quadrangulations of the cylinder
# ---------------------------------------------------------------------------


def _glue_quad33(faces: tuple[Cycle, ...], n_total: int, L: int) -> EmbeddedGraph | None:
    """Close a filled disk into a cylinder with two triangle holes.

    The disk boundary (length 6+2L) is read as: triangle 1 cut open at a
    (positions 0..3), the cut path (3..3+L), triangle 2 cut open at b
    (3+L..6+L), and the second copy of the cut path back to a.
    """
    B = 6 + 2 * L
    edges = set()
    for f in faces:
        for i in range(len(f)):
            edges.add(frozenset((f[i], f[(i + 1) % len(f)])))
    pairs = [(3 + j, (6 + 2 * L - j) % B) for j in range(L + 1)]
    nu = list(range(n_total))
    removed = set()
    for p, q in pairs:
        keep, drop = (q, p) if q == 0 else (p, q)
        if frozenset((p, q)) in edges:
            return None  # would glue to a loop
        nu[drop] = keep
        removed.add(drop)
    survivors = [v for v in range(n_total) if v not in removed]
    dense = {old: new for new, old in enumerate(survivors)}
    remap = [dense[nu[v]] for v in range(n_total)]

    glued_faces = [tuple(remap[v] for v in f) for f in faces]
    hole1 = tuple(remap[v] for v in (0, 2, 1))
    hole2 = tuple(remap[v] for v in (3 + L, 5 + L, 4 + L))
    try:
        rot = rotation_system_from_faces(glued_faces + [hole1, hole2], len(survivors))
        ring1 = tuple(remap[v] for v in (0, 1, 2))
        ring2 = tuple(remap[v] for v in (3 + L, 4 + L, 5 + L))
        return EmbeddedGraph(rot, rings=(ring1, ring2))
    except CylColorError:
        return None


def generate_quad33(max_vertices: int) -> list[EmbeddedGraph]:
    """All cylinder quadrangulations with two disjoint triangle rings.

    Exhaustive and isomorph-free up to max_vertices.  Every member is
    obtained by cutting along a shortest path between the rings and
    quadrangulating the resulting disk, so iterating over all cut
    lengths and all disk fillings reaches everything.
    """
    if max_vertices < 6:
        raise InvalidParameter("max_vertices must be >= 6")
    seen: dict[bytes, EmbeddedGraph] = {}
    for L in range(1, max_vertices - 4):
        budget = max_vertices - 5 - L
        if budget < 0:
            break
        for faces, n_total in _fill_disk(6 + 2 * L, budget):
            g = _glue_quad33(faces, n_total, L)
            if g is None or g.n > max_vertices:
                continue
            seen.setdefault(canonical_form(g), g)
    return [seen[k] for k in sorted(seen)]


def is_quad33(g: EmbeddedGraph) -> bool:
    """Structural membership test: two triangle rings, all other faces quads."""
    if len(g.rings) != 2 or any(len(r) != 3 for r in g.rings):
        return False
    fl = g.faces
    holes = set(fl.ring_faces)
    return all(
        len(f) == 4 for i, f in enumerate(fl.faces) if i not in holes
    )


def near_quad33(
    g: EmbeddedGraph, subdivide: Sequence[Optional[tuple[int, int]]]
) -> EmbeddedGraph:
    """Subdivide at most one edge on each ring of a 3,3-quadrangulation."""
    if not is_quad33(g):
        raise InvalidParameter("input is not a cylinder quadrangulation with triangle rings")
    if len(subdivide) != 2:
        raise InvalidParameter("one optional edge per ring is required")
    if all(e is None for e in subdivide):
        return g
    rot = [list(r) for r in g.rotations]
    rings = [list(r) for r in g.rings]
    next_id = g.n
    for i, edge in enumerate(subdivide):
        if edge is None:
            continue
        u, v = edge
        ring = rings[i]
        k = None
        for t in range(len(ring)):
            pair = (ring[t], ring[(t + 1) % len(ring)])
            if pair == (u, v) or pair == (v, u):
                k = t
                break
        if k is None:
            raise EdgeNotOnRing(f"edge {edge} not on ring {tuple(ring)}")
        s = next_id
        next_id += 1
        rot[u][rot[u].index(v)] = s
        rot[v][rot[v].index(u)] = s
        rot.append([u, v])
        ring.insert(k + 1, s)
    return EmbeddedGraph(tuple(tuple(r) for r in rot), tuple(tuple(r) for r in rings))


def near_quad33_decomposition(
    g: EmbeddedGraph,
) -> Optional[tuple[EmbeddedGraph, tuple[Optional[tuple[int, int]], ...]]]:
    """Recognize a near 3,3-quadrangulation structurally.

    Returns (base quadrangulation, per-ring subdivided edge of the base)
    for the first working choice of suppressed degree-2 ring vertices,
    or None.
    """
    if len(g.rings) != 2 or not all(len(r) in (3, 4) for r in g.rings):
        return None
    options: list[list[Optional[int]]] = []
    for ring in g.rings:
        if len(ring) == 3:
            options.append([None])
        else:
            cands = [v for v in ring if g.degree(v) == 2]
            if not cands:
                return None
            options.append(list(cands))
    for pick in product(*options):
        suppressed = [v for v in pick if v is not None]
        if len(set(suppressed)) != len(suppressed):
            continue  # a vertex subdivides at most one ring
        if not suppressed:
            if is_quad33(g):
                return g, (None, None)
            continue
        rot: dict[int, list[int]] = {v: list(g.rotations[v]) for v in range(g.n)}
        rings = [list(r) for r in g.rings]
        ok = True
        for v in suppressed:
            p, q = rot[v]
            if q in rot[p]:  # suppression would create a parallel edge
                ok = False
                break
            rot[p][rot[p].index(v)] = q
            rot[q][rot[q].index(v)] = p
            del rot[v]
            for ring in rings:
                if v in ring:
                    ring.remove(v)
        if not ok:
            continue
        rotations, new_rings, remap = _compress(rot, rings)
        try:
            base = EmbeddedGraph(rotations, new_rings)
        except CylColorError:
            continue
        if not is_quad33(base):
            continue
        subs: list[Optional[tuple[int, int]]] = []
        for i, v in enumerate(pick):
            if v is None:
                subs.append(None)
            else:
                p, q = g.rotations[v]
                subs.append((remap[p], remap[q]))
        return base, tuple(subs)
    return None


# ---------------------------------------------------------------------------
# pendant ring, grids
# ---------------------------------------------------------------------------


def attach_pendant_ring(g: EmbeddedGraph, v: int) -> EmbeddedGraph:
    """Hang a 4-cycle v u1 u2 u3 inside a face at v and drill a hole in it."""
    if len(g.rings) >= 2:
        raise TooManyRings("graph already has two holes")
    if not (0 <= v < g.n):
        raise InvalidParameter(f"no vertex {v}")
    fl = g.faces
    holes = set(fl.ring_faces)
    target = None
    for i, f in enumerate(fl.faces):
        if i not in holes and v in f:
            target = f
            break
    if target is None:
        raise InvalidParameter(f"vertex {v} lies on hole faces only")
    k = target.index(v)
    p = target[k - 1]
    u1, u2, u3 = g.n, g.n + 1, g.n + 2
    rot = [list(r) for r in g.rotations]
    rv = rot[v]
    j = rv.index(p)
    rv[j + 1 : j + 1] = [u1, u3]
    rot.extend([[v, u2], [u1, u3], [u2, v]])
    rings = g.rings + ((v, u1, u2, u3),)
    return EmbeddedGraph(tuple(tuple(r) for r in rot), rings)


def cylinder_grid(cycle_len: int, layers: int) -> EmbeddedGraph:
    """Cylindrical grid: `layers` concentric cycles of length `cycle_len`."""
    if cycle_len < 3 or layers < 1:
        raise InvalidParameter("need cycle_len >= 3 and layers >= 1")
    c, k = cycle_len, layers

    def vid(i: int, j: int) -> int:
        return i * c + j

    rot = []
    for i in range(k):
        for j in range(c):
            east = vid(i, (j + 1) % c)
            west = vid(i, (j - 1) % c)
            r = [east]
            if i + 1 < k:
                r.append(vid(i + 1, j))
            r.append(west)
            if i > 0:
                r.append(vid(i - 1, j))
            rot.append(tuple(r))
    ring0 = tuple(range(c))
    ring1 = tuple(vid(k - 1, j) for j in range(c))
    return EmbeddedGraph(tuple(rot), rings=(ring0, ring1))


# ---------------------------------------------------------------------------
# framed patched Thomas-Walls enumeration (recognition catalog)
# ---------------------------------------------------------------------------

FRAME_CHOICES = tuple(
    (a, b) for a in (True, False) for b in (True, False)
)


@dataclass(frozen=True)
class FramedRecipe:
    """Reproducible construction of a framed patched chain graph."""

    n: int
    placements: tuple[tuple[int, str], ...]  # (vertex in T'_n, patch EMG text)
    choices: tuple[tuple[bool, bool], tuple[bool, bool]]


def build_framed_patched(recipe: FramedRecipe) -> EmbeddedGraph:
    from .embedding import parse_emg

    base, pairs = reduced_thomas_walls(recipe.n)
    placements = [(v, parse_emg(text)) for v, text in recipe.placements]
    if placements:
        patched, remap = _patch_graph_mapped(base, placements)
        pairs = InterfacePairs(
            (remap[pairs.first[0]], remap[pairs.first[1]]),
            (remap[pairs.second[0]], remap[pairs.second[1]]),
        )
    else:
        patched = base
    return frame(patched, pairs, recipe.choices)


def _independent_subsets(g: EmbeddedGraph, verts: list[int]) -> list[tuple[int, ...]]:
    out = [()]
    for r in range(1, len(verts) + 1):
        for combo in combinations(verts, r):
            if all(not g.has_edge(a, b) for a, b in combinations(combo, 2)):
                out.append(combo)
    return out


def enumerate_framed_patched(
    max_vertices: int, patch_bound: int | None = None
) -> Iterable[tuple[EmbeddedGraph, FramedRecipe]]:
    """Every framed patched chain graph within the given bounds.

    Exhaustive over the chain length, patch placements (all alignments,
    every patch with at most patch_bound internal vertices), and the
    four framing choices per end; the vertex budget prunes assignments.
    Not deduplicated; callers deduplicate by canonical form.
    """
    from .embedding import emit_emg

    n = 1
    while 3 * n + 1 <= max_vertices:
        base, pairs = reduced_thomas_walls(n)
        placeable = sorted(
            v
            for v in range(base.n)
            if v not in base.ring_vertices and base.degree(v) == 3
        )
        budget_all = max_vertices - base.n
        cap = budget_all - 2
        if patch_bound is not None:
            cap = min(cap, patch_bound)
        pool: list[tuple[EmbeddedGraph, int, str]] = []
        if cap >= 1 and placeable:
            for patch in generate_patches(cap):
                m = patch.n - 6
                for variant in patch_ring_variants(patch):
                    pool.append((variant, m, emit_emg(variant)))

        def assignments(k: int, budget: int):
            if k == 0:
                yield ()
                return
            for item in pool:
                cost = 2 + item[1]
                # the cheapest patch (one hub vertex) costs 3
                if cost + 3 * (k - 1) <= budget:
                    for rest in assignments(k - 1, budget - cost):
                        yield (item,) + rest

        for subset in _independent_subsets(base, placeable):
            for combo in assignments(len(subset), budget_all):
                placements = [(v, p) for v, (p, _, _) in zip(subset, combo)]
                texts = tuple((v, t) for v, (_, _, t) in zip(subset, combo))
                if placements:
                    patched, remap = _patch_graph_mapped(base, placements)
                    mapped = InterfacePairs(
                        (remap[pairs.first[0]], remap[pairs.first[1]]),
                        (remap[pairs.second[0]], remap[pairs.second[1]]),
                    )
                else:
                    patched, mapped = base, pairs
                for ch1 in FRAME_CHOICES:
                    for ch2 in FRAME_CHOICES:
                        extra = sum(ch1) + sum(ch2)
                        if patched.n + extra > max_vertices:
                            continue
                        framed = frame(patched, mapped, (ch1, ch2))
                        yield framed, FramedRecipe(n, texts, (ch1, ch2))
        n += 1
