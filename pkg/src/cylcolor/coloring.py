"""Exact 3-coloring: extension, counting, extendable sets, domination.

One backtracking kernel serves both decision and counting.  It keeps a
bitmask of available colors per vertex, propagates forced vertices to a
fixpoint, and branches on the vertex with the fewest available colors
(smallest id on ties), trying colors in increasing order.  This makes
the first reported solution deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from .embedding import EmbeddedGraph, canon_cycle
from .errors import ImproperPrecoloring, NoRings, RingMismatch

COLORS = (1, 2, 3)
_FULL = 0b111
_MASK = {1: 0b001, 2: 0b010, 3: 0b100}
_COLOR_OF = {0b001: 1, 0b010: 2, 0b100: 3}
_BITS = {m: bin(m).count("1") for m in range(8)}


@dataclass
class Precoloring:
    """Partial assignment of ring vertices to colors 1..3."""

    assignments: dict[int, int] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "Precoloring":
        return cls({})

    def validate_for(self, g: EmbeddedGraph) -> None:
        """Check domain, color range, and properness along the ring cycles.

        Properness is required only on ring edges; an assignment that
        clashes across a chord is a legitimate precoloring that simply
        does not extend.
        """
        ring_vs = g.ring_vertices
        for v, c in self.assignments.items():
            if c not in COLORS:
                raise ImproperPrecoloring(f"color {c} out of range at vertex {v}")
            if v not in ring_vs:
                raise ImproperPrecoloring(f"vertex {v} is not a ring vertex")
        for ring in g.rings:
            for a, b in zip(ring, ring[1:] + ring[:1]):
                ca, cb = self.assignments.get(a), self.assignments.get(b)
                if ca is not None and ca == cb:
                    raise ImproperPrecoloring(f"ring edge {a}-{b} monochromatic")


@dataclass(frozen=True)
class ExtendableSet:
    """Exact set of total ring precolorings that extend to the graph.

    Members are color tuples aligned with ``ring_domain`` (the sorted
    ring vertices).
    """

    ring_domain: tuple[int, ...]
    members: frozenset[tuple[int, ...]]


def _init_domains(adj: Sequence[Iterable[int]], fixed: Mapping[int, int]):
    n = len(adj)
    dom = [_FULL] * n
    for v, c in fixed.items():
        dom[v] = _MASK[c]
    return dom


def _propagate(adj, dom, queue) -> bool:
    """Remove forced colors from neighbors until fixpoint; False on wipeout."""
    while queue:
        v = queue.pop()
        mask = dom[v]
        for u in adj[v]:
            if dom[u] & mask:
                dom[u] &= ~mask
                if dom[u] == 0:
                    return False
                if _BITS[dom[u]] == 1:
                    queue.append(u)
    return True


def _search(adj, dom, count_mode: bool, acc: list) -> int:
    """Exhaustive count, or first-solution search (acc receives domains)."""
    singles = [v for v in range(len(adj)) if _BITS[dom[v]] == 1]
    # Propagation needs every singleton queued once from this state.
    work = list(dom)
    if not _propagate(adj, work, singles):
        return 0
    branch = -1
    best = 4
    for v in range(len(adj)):
        b = _BITS[work[v]]
        if 1 < b < best:
            best = b
            branch = v
    if branch < 0:
        if not count_mode:
            acc.append(work)
        return 1
    total = 0
    for c in COLORS:
        m = _MASK[c]
        if work[branch] & m:
            child = list(work)
            child[branch] = m
            total += _search(adj, child, count_mode, acc)
            if not count_mode and acc:
                return total
    return total


def _solve_first(adj, fixed) -> dict[int, int] | None:
    acc: list = []
    _search(adj, _init_domains(adj, fixed), False, acc)
    if not acc:
        return None
    return {v: _COLOR_OF[m] for v, m in enumerate(acc[0])}


def _solve_count(adj, fixed) -> int:
    return _search(adj, _init_domains(adj, fixed), True, [])


def extend(g: EmbeddedGraph, psi: Precoloring) -> dict[int, int] | None:
    """A proper total 3-coloring agreeing with psi, or None.

    Deterministic: the first solution in the fixed branching order.
    """
    psi.validate_for(g)
    return _solve_first(g.rotations, psi.assignments)


def count_colorings(g: EmbeddedGraph, psi: Precoloring) -> int:
    """Exact number of proper total 3-colorings extending psi."""
    psi.validate_for(g)
    return _solve_count(g.rotations, psi.assignments)


def ring_precolorings(g: EmbeddedGraph) -> Iterable[tuple[tuple[int, ...], dict[int, int]]]:
    """Total ring precolorings proper on the ring cycles, in lexicographic order."""
    domain = tuple(sorted(g.ring_vertices))
    pos = {v: i for i, v in enumerate(domain)}
    ring_edges = [
        (pos[a], pos[b])
        for ring in g.rings
        for a, b in zip(ring, ring[1:] + ring[:1])
    ]
    for combo in product(COLORS, repeat=len(domain)):
        if any(combo[i] == combo[j] for i, j in ring_edges):
            continue
        yield combo, dict(zip(domain, combo))


def extendable_set(g: EmbeddedGraph) -> ExtendableSet:
    """Enumerate proper ring precolorings and keep those that extend."""
    if not g.rings:
        raise NoRings("graph has no rings")
    domain = tuple(sorted(g.ring_vertices))
    members = set()
    adj = g.rotations
    for combo, fixed in ring_precolorings(g):
        if _solve_first(adj, fixed) is not None:
            members.add(combo)
    return ExtendableSet(domain, frozenset(members))


def _ring_signature(g: EmbeddedGraph):
    return sorted(canon_cycle(r) for r in g.rings)


def dominates(g1: EmbeddedGraph, g2: EmbeddedGraph) -> bool:
    """True iff every ring precoloring extendable in g1 extends in g2.

    Requires both graphs to carry the same labeled rings.
    """
    if not g1.rings or not g2.rings:
        raise NoRings("both graphs need rings")
    if _ring_signature(g1) != _ring_signature(g2):
        raise RingMismatch("graphs do not share the same labeled rings")
    return extendable_set(g1).members <= extendable_set(g2).members


def members_over(g: EmbeddedGraph, order: Sequence[int]) -> frozenset[tuple[int, ...]]:
    """Extendable ring precolorings as tuples over an explicit vertex order."""
    if set(order) != set(g.ring_vertices):
        raise RingMismatch("order must list exactly the ring vertices")
    domain = tuple(sorted(g.ring_vertices))
    pos = {v: i for i, v in enumerate(domain)}
    idx = [pos[v] for v in order]
    return frozenset(
        tuple(m[i] for i in idx) for m in extendable_set(g).members
    )


def dominates_under(
    g1: EmbeddedGraph, g2: EmbeddedGraph, vertex_map: Mapping[int, int]
) -> bool:
    """Domination of g2 by g1 through an explicit ring correspondence.

    ``vertex_map`` sends g2's ring vertices to g1's; it must carry each
    ring of g2 onto a ring of g1 as a cycle.  Used after surgeries that
    renumber vertices.
    """
    if not g1.rings or not g2.rings:
        raise NoRings("both graphs need rings")
    if not set(g2.ring_vertices) <= set(vertex_map):
        raise RingMismatch("vertex map does not cover the ring vertices")
    mapped = sorted(canon_cycle([vertex_map[v] for v in r]) for r in g2.rings)
    if mapped != _ring_signature(g1):
        raise RingMismatch("vertex map does not carry rings onto rings")
    order2 = tuple(sorted(g2.ring_vertices))
    order1 = tuple(vertex_map[v] for v in order2)
    return members_over(g1, order1) <= members_over(g2, order2)
