"""Radial sweep: grow a convex hull point by point and fan triangles.

Triangles live in an index-based pool.  Triangle ``t`` has vertices
``verts[t]`` in counterclockwise order and ``nbrs[t, e]`` is the triangle
across the edge ``verts[t, e] -> verts[t, (e + 1) % 3]`` (``-1`` on the
boundary).  The circumcenter and squared circumradius of every triangle are
cached next to it.

The hull is a circular doubly linked list over point indices.  For a hull
vertex ``v``, ``tri[v]``/``edge[v]`` name the interior triangle and edge
index behind the hull edge ``v -> next[v]``.  A vertex removed from the hull
gets ``next[v] == v``.  An angular hash about the seed circumcenter gives the
starting point for the visibility search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import InvalidInput, NoVisibleEdge
from .geometry import (
    Point,
    as_coords,
    as_point,
    circumcircle_kernel,
    orient2d_kernel,
)
from .seeding import SeedTriangle, SweepOrder, build_seed


@dataclass(frozen=True)
class Triangle:
    v: tuple[int, int, int]
    nbr: tuple[int, int, int]
    circumcenter: Point
    radius_sq: float


# --- kernels ---------------------------------------------------------------

# Helpers called per point or per triangle are inlined; a numba call that
# passes arrays pays reference counting on every one of them.


@njit(cache=True, error_model="numpy")
def _hash_key(x, y, cx, cy, size):
    dx = x - cx
    dy = y - cy
    s = abs(dx) + abs(dy)
    if s == 0.0:
        return 0
    p = dx / s
    a = (3.0 - p) / 4.0 if dy > 0.0 else (1.0 + p) / 4.0
    return int(math.floor(a * size)) % size


@njit(cache=True, error_model="numpy", inline="always")
def _add_triangle(coords, verts, nbrs, centers, r2, steps, t, i0, i1, i2, step):
    verts[t, 0] = i0
    verts[t, 1] = i1
    verts[t, 2] = i2
    nbrs[t, 0] = -1
    nbrs[t, 1] = -1
    nbrs[t, 2] = -1
    x, y, rr = circumcircle_kernel(
        coords[i0, 0], coords[i0, 1], coords[i1, 0], coords[i1, 1], coords[i2, 0], coords[i2, 1]
    )
    centers[t, 0] = x
    centers[t, 1] = y
    r2[t] = rr
    steps[t] = step


@njit(cache=True, error_model="numpy", inline="always")
def _link(nbrs, t, et, u, eu):
    nbrs[t, et] = u
    if u >= 0:
        nbrs[u, eu] = t


@njit(cache=True, error_model="numpy", inline="always")
def _visible(coords, u, v, px, py):
    return orient2d_kernel(coords[u, 0], coords[u, 1], coords[v, 0], coords[v, 1], px, py) < 0.0


@njit(cache=True, error_model="numpy", inline="always")
def _find_visible(coords, px, py, hnext, hprev, hhash, cx, cy):
    """First vertex of the run of hull edges visible from (px, py), or -1."""
    size = hhash.shape[0]
    key = _hash_key(px, py, cx, cy, size)
    start = -1
    for j in range(size):
        s = hhash[(key + j) % size]
        if s != -1 and hnext[s] != s:
            start = s
            break
    if start == -1:
        return -1
    start = hprev[start]
    e = start
    while not _visible(coords, e, hnext[e], px, py):
        e = hnext[e]
        if e == start:
            return -1
    # the run may extend backwards past the point where the walk began
    guard = 0
    while _visible(coords, hprev[e], e, px, py):
        e = hprev[e]
        guard += 1
        if guard > hnext.shape[0]:
            return -1
    return e


@njit(cache=True, error_model="numpy", inline="always")
def _insert(coords, p, step, verts, nbrs, centers, r2, steps, nt,
            hnext, hprev, htri, hedge, hhash, cx, cy):
    """Insert point ``p``; return the new triangle count, or -1 if no edge is visible."""
    px, py = coords[p, 0], coords[p, 1]
    e = _find_visible(coords, px, py, hnext, hprev, hhash, cx, cy)
    if e < 0:
        return -1

    q = hnext[e]
    t = nt
    nt += 1
    _add_triangle(coords, verts, nbrs, centers, r2, steps, t, e, p, q, step)
    _link(nbrs, t, 2, htri[e], hedge[e])
    first = t
    last = t

    n = q
    while True:
        q = hnext[n]
        if not _visible(coords, n, q, px, py):
            break
        t = nt
        nt += 1
        _add_triangle(coords, verts, nbrs, centers, r2, steps, t, n, p, q, step)
        _link(nbrs, t, 0, last, 1)
        _link(nbrs, t, 2, htri[n], hedge[n])
        hnext[n] = n
        last = t
        n = q

    while True:
        q = hprev[e]
        if not _visible(coords, q, e, px, py):
            break
        t = nt
        nt += 1
        _add_triangle(coords, verts, nbrs, centers, r2, steps, t, q, p, e, step)
        _link(nbrs, t, 1, first, 0)
        _link(nbrs, t, 2, htri[q], hedge[q])
        hnext[e] = e
        first = t
        e = q

    hprev[p] = e
    hnext[p] = n
    hprev[n] = p
    hnext[e] = p
    htri[e] = first
    hedge[e] = 0
    htri[p] = last
    hedge[p] = 1

    size = hhash.shape[0]
    hhash[_hash_key(px, py, cx, cy, size)] = p
    hhash[_hash_key(coords[e, 0], coords[e, 1], cx, cy, size)] = e
    return nt


@njit(cache=True, error_model="numpy")
def _sweep(coords, order, pos, stop, verts, nbrs, centers, r2, steps, nt,
           hnext, hprev, htri, hedge, hhash, cx, cy):
    """Insert ``order[pos:stop]``; return (triangle count, position reached)."""
    while pos < stop:
        p = order[pos]
        res = _insert(coords, p, pos - 2, verts, nbrs, centers, r2, steps, nt,
                      hnext, hprev, htri, hedge, hhash, cx, cy)
        if res < 0:
            return nt, pos
        nt = res
        pos += 1
    return nt, pos


# --- Python containers -----------------------------------------------------


@dataclass
class HullRing:
    """Counterclockwise hull frontier as a circular linked list."""

    coords: np.ndarray
    next: np.ndarray
    prev: np.ndarray
    tri: np.ndarray
    edge: np.ndarray
    hash: np.ndarray
    center: tuple[float, float]
    start: int

    @classmethod
    def from_cycle(cls, coords, cycle, center=None, tri=None, edge=None):
        """Build a ring from a counterclockwise vertex cycle."""
        coords = as_coords(coords)
        n = len(coords)
        cycle = [int(v) for v in cycle]
        nxt = np.full(n, -1, dtype=np.int64)
        prv = np.full(n, -1, dtype=np.int64)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            nxt[a] = b
            prv[b] = a
        if center is None:
            center = tuple(coords[cycle].mean(axis=0))
        ring = cls(
            coords,
            nxt,
            prv,
            np.full(n, -1, dtype=np.int64) if tri is None else tri,
            np.zeros(n, dtype=np.int64) if edge is None else edge,
            np.full(max(1, math.ceil(math.sqrt(n))), -1, dtype=np.int64),
            (float(center[0]), float(center[1])),
            cycle[0],
        )
        for v in cycle:
            ring._hash_insert(v)
        return ring

    def _hash_insert(self, v):
        k = _hash_key(self.coords[v, 0], self.coords[v, 1], self.center[0], self.center[1],
                      len(self.hash))
        self.hash[k] = v

    def vertices(self) -> list[int]:
        out = [self.start]
        v = int(self.next[self.start])
        while v != self.start:
            if v < 0 or len(out) > len(self.next):
                raise RuntimeError("hull ring is not a closed cycle")
            out.append(v)
            v = int(self.next[v])
        return out

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices()
        return list(zip(vs, vs[1:] + vs[:1]))

    def __len__(self) -> int:
        return len(self.vertices())

    def __iter__(self):
        return iter(self.vertices())


@dataclass
class Triangulation:
    """Triangle graph over a point set, plus its boundary ring.

    Arrays are allocated at full capacity; the live triangles are the first
    ``n_triangles`` rows.  ``steps[t]`` is the sweep step that created
    triangle ``t`` (0 for the seed triangle, -1 when unknown).
    """

    points: np.ndarray
    verts: np.ndarray
    nbrs: np.ndarray
    centers: np.ndarray
    r2: np.ndarray
    steps: np.ndarray
    n_triangles: int
    hull: HullRing
    seed: SeedTriangle | None = None
    order: SweepOrder | None = None
    position: int = 0
    flipped: bool = field(default=False)

    @classmethod
    def empty(cls, points, capacity=None):
        coords = as_coords(points)
        n = len(coords)
        cap = max(2 * n, 1) if capacity is None else capacity
        hull = HullRing(
            coords,
            np.full(n, -1, dtype=np.int64),
            np.full(n, -1, dtype=np.int64),
            np.full(n, -1, dtype=np.int64),
            np.zeros(n, dtype=np.int64),
            np.full(max(1, math.ceil(math.sqrt(n))), -1, dtype=np.int64),
            (0.0, 0.0),
            0,
        )
        return cls(
            coords,
            np.full((cap, 3), -1, dtype=np.int64),
            np.full((cap, 3), -1, dtype=np.int64),
            np.zeros((cap, 2)),
            np.zeros(cap),
            np.full(cap, -1, dtype=np.int64),
            0,
            hull,
        )

    @classmethod
    def from_triangles(cls, points, triangles):
        """Assemble a triangulation from vertex triples.

        Neighbor links come from matching shared edges and the boundary
        ring from edges used by a single triangle.  Nothing is validated
        beyond index range; run :func:`shull.oracle.audit` for that.
        """
        coords = as_coords(points)
        tris = np.asarray(triangles, dtype=np.int64).reshape(-1, 3)
        n = len(coords)
        if tris.size and (tris.min() < 0 or tris.max() >= n):
            raise InvalidInput("triangle vertex index out of range")
        state = cls.empty(coords, capacity=max(len(tris), 1))
        nt = len(tris)
        state.verts[:nt] = tris
        state.n_triangles = nt

        owners: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for t in range(nt):
            for e in range(3):
                a, b = int(tris[t, e]), int(tris[t, (e + 1) % 3])
                owners.setdefault((min(a, b), max(a, b)), []).append((t, e))
            x, y, rr = circumcircle_kernel(*coords[tris[t, 0]], *coords[tris[t, 1]],
                                           *coords[tris[t, 2]])
            state.centers[t] = (x, y)
            state.r2[t] = rr
        boundary = {}
        for users in owners.values():
            if len(users) == 2:
                (t, e), (u, f) = users
                state.nbrs[t, e] = u
                state.nbrs[u, f] = t
            elif len(users) == 1:
                t, e = users[0]
                a, b = int(tris[t, e]), int(tris[t, (e + 1) % 3])
                boundary[a] = (b, t, e)

        if boundary:
            start = min(boundary)
            cycle = [start]
            v = boundary[start][0]
            while v != start and v in boundary and len(cycle) <= len(boundary):
                cycle.append(v)
                v = boundary[v][0]
            tri = np.full(n, -1, dtype=np.int64)
            edge = np.zeros(n, dtype=np.int64)
            for a, (_, t, e) in boundary.items():
                tri[a] = t
                edge[a] = e
            hull = HullRing.from_cycle(coords, cycle, tri=tri, edge=edge)
            # keep any boundary links the cycle walk did not reach
            for a, (b, _, _) in boundary.items():
                hull.next[a] = b
            state.hull = hull
        return state

    # -- views --

    @property
    def triangles(self) -> np.ndarray:
        return self.verts[: self.n_triangles]

    @property
    def neighbors(self) -> np.ndarray:
        return self.nbrs[: self.n_triangles]

    @property
    def circumcenters(self) -> np.ndarray:
        return self.centers[: self.n_triangles]

    @property
    def radius_sq(self) -> np.ndarray:
        return self.r2[: self.n_triangles]

    def __len__(self) -> int:
        return self.n_triangles

    def triangle(self, t: int) -> Triangle:
        if not 0 <= t < self.n_triangles:
            raise IndexError(t)
        v = tuple(int(i) for i in self.verts[t])
        nbr = tuple(int(i) for i in self.nbrs[t])
        return Triangle(v, nbr, Point(*self.centers[t]), float(self.r2[t]))

    def edges(self) -> set[tuple[int, int]]:
        tris = self.triangles
        out = set()
        for a, b in ((0, 1), (1, 2), (2, 0)):
            lo = np.minimum(tris[:, a], tris[:, b])
            hi = np.maximum(tris[:, a], tris[:, b])
            out.update(zip(lo.tolist(), hi.tolist()))
        return out

    def convex_hull(self) -> list[int]:
        """Hull vertices in CCW order with collinear boundary points dropped."""
        ring = self.hull.vertices()
        if len(ring) < 3:
            return ring
        c = self.points
        out = []
        m = len(ring)
        for i, v in enumerate(ring):
            u = ring[i - 1]
            w = ring[(i + 1) % m]
            if orient2d_kernel(c[u, 0], c[u, 1], c[v, 0], c[v, 1], c[w, 0], c[w, 1]) != 0.0:
                out.append(v)
        return out

    @property
    def complete(self) -> bool:
        return self.order is None or self.position >= len(self.order)

    def copy(self) -> Triangulation:
        hull = HullRing(
            self.hull.coords, self.hull.next.copy(), self.hull.prev.copy(),
            self.hull.tri.copy(), self.hull.edge.copy(), self.hull.hash.copy(),
            self.hull.center, self.hull.start,
        )
        return Triangulation(
            self.points, self.verts.copy(), self.nbrs.copy(), self.centers.copy(),
            self.r2.copy(), self.steps.copy(), self.n_triangles, hull, self.seed,
            self.order, self.position, self.flipped,
        )


# --- operations ------------------------------------------------------------


def start_sweep(points, seed=None) -> Triangulation:
    """Return a triangulation holding only the seed triangle.

    ``seed`` may be a :class:`SeedTriangle`, an explicit counterclockwise
    index triple, or ``None`` to run :func:`build_seed`.  With an explicit
    triple the remaining points are ordered by distance from its
    circumcenter.
    """
    coords = as_coords(points)
    if seed is None:
        seed, order = build_seed(coords)
    else:
        if not isinstance(seed, SeedTriangle):
            i0, ij, ik = (int(i) for i in seed)
            x, y, rr = circumcircle_kernel(*coords[i0], *coords[ij], *coords[ik])
            o = orient2d_kernel(*coords[i0], *coords[ij], *coords[ik])
            if o <= 0.0:
                raise InvalidInput("seed triangle must be counterclockwise")
            seed = SeedTriangle(i0, ij, ik, Point(x, y), float(rr))
        c = seed.circumcenter
        dx = coords[:, 0] - c.x
        dy = coords[:, 1] - c.y
        keys = dx * dx + dy * dy
        rest = np.argsort(keys, kind="stable")
        rest = rest[(rest != seed.i0) & (rest != seed.ij) & (rest != seed.ik)]
        order = SweepOrder(
            np.concatenate((np.array(seed.indices, dtype=np.int64), rest.astype(np.int64))), keys
        )

    state = Triangulation.empty(coords)
    i0, ij, ik = seed.indices
    _add_triangle(coords, state.verts, state.nbrs, state.centers, state.r2, state.steps,
                  0, i0, ij, ik, 0)
    state.n_triangles = 1
    tri = state.hull.tri
    edge = state.hull.edge
    for e, v in enumerate(seed.indices):
        tri[v] = 0
        edge[v] = e
    state.hull = HullRing.from_cycle(
        coords, seed.indices, center=seed.circumcenter, tri=tri, edge=edge
    )
    state.seed = seed
    state.order = order
    state.position = 3
    return state


def visible_edges(hull: HullRing, p) -> list[tuple[int, int]]:
    """Hull edges ``(u, v)`` that ``p`` sees strictly from outside, in ring order."""
    p = as_point(p)
    e = _find_visible(hull.coords, p.x, p.y, hull.next, hull.prev, hull.hash, *hull.center)
    if e < 0:
        raise NoVisibleEdge(f"no hull edge is visible from {tuple(p)}")
    out = []
    while _visible(hull.coords, e, hull.next[e], p.x, p.y) and len(out) < len(hull.next):
        out.append((int(e), int(hull.next[e])))
        e = hull.next[e]
    return out


def insert_point(state: Triangulation, p_index: int) -> Triangulation:
    """Add point ``p_index`` to the hull, fanning one triangle per visible edge."""
    h = state.hull
    if state.order is not None and state.position < len(state.order):
        step = state.position - 2
    else:
        step = int(state.steps[: state.n_triangles].max(initial=0)) + 1
    nt = _insert(state.points, p_index, step, state.verts, state.nbrs, state.centers,
                 state.r2, state.steps, state.n_triangles, h.next, h.prev, h.tri, h.edge,
                 h.hash, h.center[0], h.center[1])
    if nt < 0:
        raise NoVisibleEdge(
            f"point {p_index} sees no hull edge; the sweep order is inconsistent", p_index
        )
    state.n_triangles = nt
    h.start = int(p_index)
    if state.order is not None and state.position < len(state.order) \
            and state.order.order[state.position] == p_index:
        state.position += 1
    return state


def inverse_permutation(perm) -> np.ndarray:
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm), dtype=perm.dtype)
    return inv


def _relabel(values, table):
    """Map every nonnegative point label in ``values`` through ``table``."""
    out = values.copy()
    live = values >= 0
    out[live] = table[values[live]]
    return out


def _hull_arrays(h, index, table):
    # vertex-indexed arrays are permuted; arrays holding labels are mapped
    return (_relabel(h.next[index], table), _relabel(h.prev[index], table),
            h.tri[index], h.edge[index], _relabel(h.hash, table))


def triangulate_nonoverlapping(points, stop_after: int | None = None) -> Triangulation:
    """Run the whole sweep and return the (not yet Delaunay) triangulation.

    ``stop_after`` limits the sweep to that many insertions after the seed
    triangle, which is how the intermediate figures are produced.
    """
    state = start_sweep(points)
    n = len(state.order)
    stop = n if stop_after is None else min(n, 3 + max(0, stop_after))
    h = state.hull

    # The kernel runs on points relabeled in sweep order: consecutive
    # insertions then touch nearby memory.  Labels never enter a decision,
    # so the result is the same as sweeping the original labels.
    perm = state.order.order
    inv = inverse_permutation(perm)
    coords = state.points[perm]
    verts = state.verts
    verts[0] = inv[verts[0]]
    hnext, hprev, htri, hedge, hhash = _hull_arrays(h, perm, inv)
    nt, pos = _sweep(coords, np.arange(n, dtype=np.int64), 3, stop, verts, state.nbrs,
                     state.centers, state.r2, state.steps, state.n_triangles, hnext, hprev,
                     htri, hedge, hhash, h.center[0], h.center[1])
    verts[:nt] = perm[verts[:nt]]
    h.next, h.prev, h.tri, h.edge, h.hash = _hull_arrays(
        HullRing(coords, hnext, hprev, htri, hedge, hhash, h.center, 0), inv, perm)
    state.n_triangles = nt
    if pos > 3:
        h.start = int(perm[pos - 1])
    state.position = pos
    if pos < stop:
        p = int(perm[pos])
        raise NoVisibleEdge(
            f"point {p} sees no hull edge; the sweep order is inconsistent", p
        )
    return state
