"""Edge flipping: turn the sweep triangulation into a Delaunay one.

Passes are repeated until one makes no flips.  The first pass visits every
triangle; later passes only revisit triangles touched by a flip in the
previous pass, which reaches the same fixed point as full passes because an
edge can only become flippable when one of its two triangles changes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import NotAdjacent
from .geometry import circumcircle_kernel, incircle_kernel, orient2d_kernel
from .sweephull import Triangulation, inverse_permutation

DEFAULT_MAX_FLIPS_PER_PAIR = 8

# A cached circle is only trusted for rejecting a flip when the triangle is
# not a sliver; the circumcenter error grows like eps * r^2 / area.
_PREFILTER_MARGIN = 1e-9
_PREFILTER_MIN_SHAPE = 1e-4


@dataclass(frozen=True)
class FlipStats:
    passes: int
    flips_total: int
    pairs_hit_limit: int


@njit(cache=True, error_model="numpy", inline="always")
def _shared_edge(nbrs, t, u):
    for f in range(3):
        if nbrs[u, f] == t:
            return f
    return -1


@njit(cache=True, error_model="numpy", inline="always")
def _should_flip(coords, verts, nbrs, centers, r2, t, e):
    u = nbrs[t, e]
    if u < 0:
        return False
    f = _shared_edge(nbrs, t, u)
    if f < 0:
        return False
    a = verts[t, e]
    b = verts[t, (e + 1) % 3]
    c = verts[t, (e + 2) % 3]
    d = verts[u, (f + 2) % 3]
    ax, ay = coords[a, 0], coords[a, 1]
    bx, by = coords[b, 0], coords[b, 1]
    cx, cy = coords[c, 0], coords[c, 1]
    dx, dy = coords[d, 0], coords[d, 1]

    rr = r2[t]
    area2 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if abs(area2) >= _PREFILTER_MIN_SHAPE * rr:
        ox = dx - centers[t, 0]
        oy = dy - centers[t, 1]
        if ox * ox + oy * oy - rr > _PREFILTER_MARGIN * rr:
            return False

    if incircle_kernel(ax, ay, bx, by, cx, cy, dx, dy) <= 0.0:
        return False
    # both replacement triangles must be proper, i.e. the quad is convex
    return (orient2d_kernel(ax, ay, dx, dy, cx, cy) > 0.0
            and orient2d_kernel(dx, dy, bx, by, cx, cy) > 0.0)


@njit(cache=True, error_model="numpy", inline="always")
def _repoint(nbrs, w, old, new):
    if w >= 0:
        for g in range(3):
            if nbrs[w, g] == old:
                nbrs[w, g] = new
                return


# The helpers used inside the flip loop are inlined: a call that passes
# arrays costs refcount traffic comparable to the flip itself.
@njit(cache=True, error_model="numpy", inline="always")
def _flip(coords, verts, nbrs, centers, r2, htri, hedge, t, e):
    # t = (a, b, c) with shared edge a->b; u = (b, a, d).  Afterwards
    # t = (a, d, c) and u = (d, b, c).
    u = nbrs[t, e]
    f = _shared_edge(nbrs, t, u)
    a = verts[t, e]
    b = verts[t, (e + 1) % 3]
    c = verts[t, (e + 2) % 3]
    d = verts[u, (f + 2) % 3]
    n_bc = nbrs[t, (e + 1) % 3]
    n_ca = nbrs[t, (e + 2) % 3]
    n_ad = nbrs[u, (f + 1) % 3]
    n_db = nbrs[u, (f + 2) % 3]

    verts[t, 0] = a
    verts[t, 1] = d
    verts[t, 2] = c
    nbrs[t, 0] = n_ad
    nbrs[t, 1] = u
    nbrs[t, 2] = n_ca

    verts[u, 0] = d
    verts[u, 1] = b
    verts[u, 2] = c
    nbrs[u, 0] = n_db
    nbrs[u, 1] = n_bc
    nbrs[u, 2] = t

    _repoint(nbrs, n_ad, u, t)
    _repoint(nbrs, n_bc, t, u)

    # boundary edges keep pointing at their (possibly renumbered) triangle
    if n_ad < 0:
        htri[a] = t
        hedge[a] = 0
    if n_ca < 0:
        htri[c] = t
        hedge[c] = 2
    if n_db < 0:
        htri[d] = u
        hedge[d] = 0
    if n_bc < 0:
        htri[b] = u
        hedge[b] = 1

    ax, ay = coords[a, 0], coords[a, 1]
    bx, by = coords[b, 0], coords[b, 1]
    cx, cy = coords[c, 0], coords[c, 1]
    dx, dy = coords[d, 0], coords[d, 1]
    x, y, rr = circumcircle_kernel(ax, ay, dx, dy, cx, cy)
    centers[t, 0] = x
    centers[t, 1] = y
    r2[t] = rr
    x, y, rr = circumcircle_kernel(dx, dy, bx, by, cx, cy)
    centers[u, 0] = x
    centers[u, 1] = y
    r2[u] = rr


# Flip counts per unordered vertex pair live in an open-addressing table
# with linear probing.  Row i holds (key, count); key -1 marks an empty slot.
# Key and count share a cache line, which matters once the table outgrows
# the cache.


@njit(cache=True, error_model="numpy", inline="always")
def _slot(table, key):
    mask = table.shape[0] - 1
    i = ((key ^ (key >> 31)) * 0x5851F42D4C957F2D >> 17) & mask
    while table[i, 0] != -1 and table[i, 0] != key:
        i = (i + 1) & mask
    return i


@njit(cache=True, error_model="numpy")
def _grow(table):
    new = np.zeros((2 * table.shape[0], 2), dtype=np.int64)
    new[:, 0] = -1
    for i in range(table.shape[0]):
        if table[i, 0] != -1:
            j = _slot(new, table[i, 0])
            new[j, 0] = table[i, 0]
            new[j, 1] = table[i, 1]
    return new


@njit(cache=True, error_model="numpy")
def _legalize(coords, verts, nbrs, centers, r2, htri, hedge, nt, max_per_pair, max_passes):
    n = coords.shape[0]
    table = np.zeros((1024, 2), dtype=np.int64)
    table[:, 0] = -1
    used = 0
    dirty = np.zeros(nt, dtype=np.bool_)
    in_pass = np.ones(nt, dtype=np.bool_)
    todo = np.arange(nt)
    passes = 0
    flips = 0
    hit = 0
    while passes < max_passes:
        passes += 1
        pass_flips = 0
        touched = []
        for t in todo:
            for e in range(3):
                # a lower-numbered triangle of this pass has already tested
                # the edge; if either side changed since, both are queued
                u = nbrs[t, e]
                if u < t and u >= 0 and in_pass[u]:
                    continue
                if not _should_flip(coords, verts, nbrs, centers, r2, t, e):
                    continue
                a = verts[t, e]
                b = verts[t, (e + 1) % 3]
                key = min(a, b) * n + max(a, b)
                i = _slot(table, key)
                if table[i, 0] == -1:
                    table[i, 0] = key
                    used += 1
                k = table[i, 1]
                if k >= max_per_pair:
                    if k == max_per_pair:
                        hit += 1
                        table[i, 1] = k + 1
                    continue
                table[i, 1] = k + 1
                if 2 * used > table.shape[0]:
                    table = _grow(table)
                u = nbrs[t, e]
                _flip(coords, verts, nbrs, centers, r2, htri, hedge, t, e)
                pass_flips += 1
                if not dirty[t]:
                    dirty[t] = True
                    touched.append(t)
                if not dirty[u]:
                    dirty[u] = True
                    touched.append(u)
        flips += pass_flips
        if pass_flips == 0:
            break
        for t in todo:
            in_pass[t] = False
        todo = np.sort(np.array(touched, dtype=np.int64))
        for t in todo:
            dirty[t] = False
            in_pass[t] = True
    return passes, flips, hit


def _edge_index(state: Triangulation, tri_a: int, tri_b: int) -> int:
    if not (0 <= tri_a < state.n_triangles and 0 <= tri_b < state.n_triangles):
        raise NotAdjacent(f"triangle index out of range: {tri_a}, {tri_b}")
    for e in range(3):
        if state.nbrs[tri_a, e] == tri_b and tri_a != tri_b:
            return e
    raise NotAdjacent(f"triangles {tri_a} and {tri_b} do not share an edge")


def should_flip(state: Triangulation, tri_a: int, tri_b: int) -> bool:
    """Whether the edge shared by two triangles violates the empty-circle rule.

    Cocircular configurations and pairs whose union is not convex are
    never flipped.
    """
    e = _edge_index(state, tri_a, tri_b)
    return bool(_should_flip(state.points, state.verts, state.nbrs, state.centers, state.r2,
                             tri_a, e))


def flip_edge(state: Triangulation, tri_a: int, tri_b: int) -> Triangulation:
    """Swap the shared diagonal of two adjacent triangles in place."""
    e = _edge_index(state, tri_a, tri_b)
    _flip(state.points, state.verts, state.nbrs, state.centers, state.r2, state.hull.tri,
          state.hull.edge, tri_a, e)
    state.flipped = True
    return state


def legalize(state: Triangulation, max_flips_per_pair: int = DEFAULT_MAX_FLIPS_PER_PAIR,
             max_passes: int | None = None) -> tuple[Triangulation, FlipStats]:
    """Flip until no edge violates the Delaunay condition.

    An edge, identified by its unordered vertex pair, that has been flipped
    away ``max_flips_per_pair`` times is frozen.  ``max_passes`` defaults to
    ``100 + n``.
    """
    if max_passes is None:
        max_passes = 100 + len(state.points)
    n = len(state.points)
    nt = state.n_triangles
    h = state.hull
    # run on points relabeled in sweep order when it is known (see
    # triangulate_nonoverlapping); the triangle pool is already in that order
    if state.order is not None and len(state.order) == n and n:
        perm = np.asarray(state.order.order, dtype=np.int64)
        inv = inverse_permutation(perm)
        coords = state.points[perm]
        state.verts[:nt] = inv[state.verts[:nt]]
        htri = h.tri[perm]
        hedge = h.edge[perm]
    else:
        perm = None
        coords, htri, hedge = state.points, h.tri, h.edge
    try:
        passes, flips, hit = _legalize(
            coords, state.verts, state.nbrs, state.centers, state.r2, htri, hedge, nt,
            int(max_flips_per_pair), int(max(1, max_passes)),
        )
    finally:
        if perm is not None:
            state.verts[:nt] = perm[state.verts[:nt]]
            h.tri[perm] = htri
            h.edge[perm] = hedge
    state.flipped = True
    return state, FlipStats(int(passes), int(flips), int(hit))
