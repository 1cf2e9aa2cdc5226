"""Canonical encoding of embedded graphs with rings.

Two graphs get equal encodings exactly when they are related by a map
isomorphism carrying rings to rings, allowing relabeling, reflection of
the whole map, and swapping the two rings.  The encoding is the
lexicographically smallest rotation-system transcript over all start
darts and both orientations, with the ring descriptors appended.
"""

from __future__ import annotations

from .embedding import EmbeddedGraph, canon_cycle


def _transcript(g: EmbeddedGraph, u0: int, v0: int, flip: bool, best):
    """BFS relabeling transcript from a root dart; None if it exceeds best."""
    rotations = g.rotations
    n = g.n
    labels = [-1] * n
    order = [u0]
    entry = [-1] * n
    entry[u0] = v0
    labels[u0] = 0
    code: list[int] = []
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        rot = rotations[v]
        if flip:
            rot = tuple(reversed(rot))
        s = rot.index(entry[v])
        code.append(len(rot))
        for k in range(len(rot)):
            w = rot[(s + k) % len(rot)]
            if labels[w] < 0:
                labels[w] = len(order)
                order.append(w)
                entry[w] = v
            code.append(labels[w])
        if best is not None:
            m = len(code)
            if code[:m] > best[:m]:
                return None, None
    return code, labels


def canonical_form(g: EmbeddedGraph) -> bytes:
    """Ring-respecting canonical encoding of the embedded map."""
    n = g.n
    hits = [0] * n
    for ring in g.rings:
        for v in ring:
            hits[v] += 1
    inv = [(len(g.rotations[v]), hits[v]) for v in range(n)]
    best_key = None
    roots: list[tuple[int, int]] = []
    for u in range(n):
        for v in g.rotations[u]:
            key = (inv[u], inv[v])
            if best_key is None or key < best_key:
                best_key, roots = key, [(u, v)]
            elif key == best_key:
                roots.append((u, v))

    best = None
    for u0, v0 in roots:
        for flip in (False, True):
            code, labels = _transcript(g, u0, v0, flip, best)
            if code is None:
                continue
            rings = sorted(canon_cycle([labels[v] for v in ring]) for ring in g.rings)
            for ring in rings:
                code.append(-1)
                code.extend(ring)
            if best is None or code < best:
                best = code
    assert best is not None
    return ",".join(map(str, best)).encode("ascii")
