"""Brute-force reference checks.

Everything here is written directly against numpy and plain Python
arithmetic and does not use the predicates in :mod:`shull.geometry`, so a
bug in the fast path cannot hide itself.  Circumcircles are computed in
extended precision (``np.longdouble``) before the distance comparisons.
These routines are slow on purpose and meant for test-sized inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import AllCollinear, DegenerateCocircular, InvalidInput, TooFewPoints

#: Relative tolerance on squared radii for "strictly inside".
TOL = 1e-9
#: Relative threshold for treating a cross product as zero.
COLLINEAR_EPS = 1e-12

_CHUNK = 1 << 22  # matrix entries per block in the distance scans


def _coords(points) -> np.ndarray:
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidInput(f"expected an (n, 2) array of points, got shape {arr.shape}")
    return arr


def _circles(coords, tris):
    """Circumcenters (float64) and squared radii for each row of ``tris``.

    Collinear triples get an infinite radius.
    """
    P = coords.astype(np.longdouble)
    a = P[tris[:, 0]]
    b = P[tris[:, 1]] - a
    c = P[tris[:, 2]] - a
    left = b[:, 0] * c[:, 1]
    right = b[:, 1] * c[:, 0]
    d = 2 * (left - right)
    flat = np.abs(left - right) <= COLLINEAR_EPS * (np.abs(left) + np.abs(right))
    d = np.where(flat, 1, d)
    b2 = b[:, 0] ** 2 + b[:, 1] ** 2
    c2 = c[:, 0] ** 2 + c[:, 1] ** 2
    ux = (c[:, 1] * b2 - b[:, 1] * c2) / d
    uy = (b[:, 0] * c2 - c[:, 0] * b2) / d
    centers = np.stack([a[:, 0] + ux, a[:, 1] + uy], axis=1).astype(np.float64)
    r2 = (ux * ux + uy * uy).astype(np.float64)
    r2[flat] = np.inf
    return centers, r2


def _scan(coords, tris, centers, r2):
    """Yield (row, point, d2) blocks: squared distance of every point to every circle."""
    n = len(coords)
    step = max(1, _CHUNK // max(n, 1))
    for lo in range(0, len(tris), step):
        hi = min(lo + step, len(tris))
        dx = coords[None, :, 0] - centers[lo:hi, 0, None]
        dy = coords[None, :, 1] - centers[lo:hi, 1, None]
        d2 = dx * dx + dy * dy
        own = np.zeros_like(d2, dtype=bool)
        rows = np.arange(hi - lo)
        for k in range(3):
            own[rows, tris[lo:hi, k]] = True
        yield lo, hi, d2, own


def brute_force_delaunay(points) -> set[tuple[int, int, int]]:
    """Every triple whose circumcircle has no other point strictly inside.

    Triangles come back as sorted index triples.  Raises
    :class:`DegenerateCocircular` when an empty circle passes through a
    fourth point, since the answer is then not unique.
    """
    coords = _coords(points)
    n = len(coords)
    if n < 3:
        raise TooFewPoints(f"need at least 3 points, got {n}")
    triples = np.array(list(combinations(range(n), 3)), dtype=np.int64)
    centers, r2 = _circles(coords, triples)
    keep = np.isfinite(r2)
    triples, centers, r2 = triples[keep], centers[keep], r2[keep]
    if len(triples) == 0:
        raise AllCollinear("all points are collinear")

    found = set()
    for lo, hi, d2, own in _scan(coords, triples, centers, r2):
        rr = r2[lo:hi, None]
        inside = (d2 < rr * (1 - TOL)) & ~own
        on = (np.abs(d2 - rr) <= TOL * rr) & ~own
        empty = ~inside.any(axis=1)
        if (empty & on.any(axis=1)).any():
            row = int(np.flatnonzero(empty & on.any(axis=1))[0]) + lo
            raise DegenerateCocircular(f"triangle {tuple(triples[row])} is cocircular with another point")
        for row in np.flatnonzero(empty) + lo:
            found.add(tuple(int(i) for i in triples[row]))
    return found


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _cross_sign(o, a, b):
    left = (a[0] - o[0]) * (b[1] - o[1])
    right = (a[1] - o[1]) * (b[0] - o[0])
    det = left - right
    if abs(det) <= COLLINEAR_EPS * (abs(left) + abs(right)):
        return 0
    return 1 if det > 0 else -1


def gift_wrap_hull(points) -> list[int]:
    """Jarvis march.  CCW from the lowest (then leftmost) point, no collinear points."""
    pts = [tuple(map(float, p)) for p in _coords(points)]
    n = len(pts)
    if n < 3:
        raise TooFewPoints(f"need at least 3 points, got {n}")
    start = min(range(n), key=lambda i: (pts[i][1], pts[i][0], i))
    hull = [start]
    current = start
    while True:
        cand = None
        for i in range(n):
            if pts[i] == pts[current]:
                continue
            if cand is None:
                cand = i
                continue
            s = _cross_sign(pts[current], pts[cand], pts[i])
            if s < 0:
                cand = i
            elif s == 0:
                dc = (pts[cand][0] - pts[current][0]) ** 2 + (pts[cand][1] - pts[current][1]) ** 2
                di = (pts[i][0] - pts[current][0]) ** 2 + (pts[i][1] - pts[current][1]) ** 2
                if di > dc:
                    cand = i
        if cand is None or cand == start:
            break
        if len(hull) > n:
            raise RuntimeError("gift wrapping did not close")
        hull.append(cand)
        current = cand
    if len(hull) < 3:
        raise AllCollinear("all points are collinear")
    return hull


def same_cycle(a, b) -> bool:
    """True when two vertex lists describe the same cyclic sequence."""
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        k = b.index(a[0])
    except ValueError:
        return False
    return a == b[k:] + b[:k]


def edge_set(triangles) -> set[tuple[int, int]]:
    out = set()
    for tri in triangles:
        i, j, k = (int(v) for v in tri)
        for a, b in ((i, j), (j, k), (k, i)):
            out.add((min(a, b), max(a, b)))
    return out


@dataclass
class AuditReport:
    delaunay_violations: list[tuple[int, int]] = field(default_factory=list)
    area_mismatch: float = 0.0
    euler_ok: bool = True
    manifold_ok: bool = True
    adjacency_ok: bool = True
    hull_matches_oracle: bool = True
    orientation_ok: bool = True
    circles_ok: bool = True
    hull_ok: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            not self.delaunay_violations
            and self.area_mismatch <= TOL
            and self.euler_ok
            and self.manifold_ok
            and self.adjacency_ok
            and self.hull_matches_oracle
            and self.orientation_ok
            and self.circles_ok
            and self.hull_ok
        )

    def summary(self) -> str:
        lines = [
            f"delaunay_violations: {len(self.delaunay_violations)}",
            f"area_mismatch: {self.area_mismatch:.3e}",
            f"euler_ok: {self.euler_ok}",
            f"manifold_ok: {self.manifold_ok}",
            f"adjacency_ok: {self.adjacency_ok}",
            f"hull_matches_oracle: {self.hull_matches_oracle}",
            f"orientation_ok: {self.orientation_ok}",
            f"circles_ok: {self.circles_ok}",
            f"hull_ok: {self.hull_ok}",
        ]
        lines += [f"note: {s}" for s in self.notes]
        return "\n".join(lines)


def delaunay_violations(points, triangles, tol=TOL) -> list[tuple[int, int]]:
    """(triangle, point) pairs where the point is strictly inside the circumcircle.

    Every point is compared against every circle, except that points whose x
    coordinate already puts them outside a circle's bounding slab are
    skipped (found by binary search on the x-sorted points).
    """
    coords = _coords(points)
    tris = np.asarray(triangles, dtype=np.int64).reshape(-1, 3)
    if len(tris) == 0:
        return []
    centers, r2 = _circles(coords, tris)
    by_x = np.argsort(coords[:, 0], kind="stable")
    xs = coords[by_x, 0]
    # widen the slab slightly so rounding in r cannot hide a point
    r = np.sqrt(r2) * (1 + 1e-6)
    lo = np.searchsorted(xs, centers[:, 0] - r, side="left")
    hi = np.searchsorted(xs, centers[:, 0] + r, side="right")
    counts = hi - lo
    total = int(counts.sum())
    if total == 0:
        return []
    rows = np.repeat(np.arange(len(tris)), counts)
    starts = np.cumsum(counts) - counts
    pos = np.arange(total) - np.repeat(starts, counts) + np.repeat(lo, counts)
    cand = by_x[pos]
    dx = coords[cand, 0] - centers[rows, 0]
    dy = coords[cand, 1] - centers[rows, 1]
    d2 = dx * dx + dy * dy
    own = (cand == tris[rows, 0]) | (cand == tris[rows, 1]) | (cand == tris[rows, 2])
    bad = (d2 < r2[rows] * (1 - tol)) & ~own
    hits = sorted(zip(rows[bad].tolist(), cand[bad].tolist()))
    return [(int(t), int(p)) for t, p in hits]


def audit(state, check_delaunay: bool = True, check_hull: bool = True) -> AuditReport:
    """Run every structural check on a triangulation.

    ``state`` is a :class:`shull.sweephull.Triangulation`.  Pass
    ``check_delaunay=False`` to audit a mesh that has not been flipped yet.
    """
    coords = _coords(state.points)
    tris = np.asarray(state.triangles, dtype=np.int64)
    nbrs = np.asarray(state.neighbors, dtype=np.int64)
    nt = len(tris)
    rep = AuditReport()

    # orientation, with our own cross product
    for t in range(nt):
        a, b, c = (coords[v] for v in tris[t])
        if _cross_sign(a, b, c) <= 0:
            rep.orientation_ok = False
            rep.notes.append(f"triangle {t} is not counterclockwise")
            break

    # cached circles
    if nt:
        centers, r2 = _circles(coords, tris)
        cached_c = np.asarray(state.circumcenters)
        cached_r = np.asarray(state.radius_sq)
        scale = np.sqrt(r2)
        err_c = np.hypot(*(cached_c - centers).T)
        if not (np.all(np.abs(cached_r - r2) <= 1e-9 * r2) and np.all(err_c <= 1e-9 * scale)):
            # slivers carry larger construction error; compare against what
            # the cached center implies for the three vertices instead
            for t in np.flatnonzero((np.abs(cached_r - r2) > 1e-9 * r2) | (err_c > 1e-9 * scale)):
                d = [((coords[v] - cached_c[t]) ** 2).sum() for v in tris[t]]
                if max(abs(x - cached_r[t]) for x in d) > 1e-9 * cached_r[t]:
                    rep.circles_ok = False
                    rep.notes.append(f"triangle {t} has a stale cached circumcircle")
                    break

    # manifold: every undirected edge in one or two triangles
    owners: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for t in range(nt):
        for e in range(3):
            a, b = int(tris[t, e]), int(tris[t, (e + 1) % 3])
            owners.setdefault((min(a, b), max(a, b)), []).append((t, e))
    boundary = set()
    for key, users in owners.items():
        if len(users) > 2:
            rep.manifold_ok = False
            rep.notes.append(f"edge {key} is used by {len(users)} triangles")
        elif len(users) == 1:
            t, e = users[0]
            boundary.add((int(tris[t, e]), int(tris[t, (e + 1) % 3])))

    # mutual adjacency
    for (a, b), users in owners.items():
        if len(users) == 2:
            (t, e), (u, f) = users
            if nbrs[t, e] != u or nbrs[u, f] != t:
                rep.adjacency_ok = False
                rep.notes.append(f"edge ({a}, {b}) between {t} and {u} is not linked both ways")
                break
        elif len(users) == 1:
            t, e = users[0]
            if nbrs[t, e] != -1:
                rep.adjacency_ok = False
                rep.notes.append(f"boundary edge ({a}, {b}) of {t} has a neighbor")
                break

    # boundary ring and its links
    try:
        ring = state.hull.vertices()
    except RuntimeError as exc:
        ring = []
        rep.hull_ok = False
        rep.notes.append(str(exc))
    ring_edges = set(zip(ring, ring[1:] + ring[:1])) if ring else set()
    if ring_edges != boundary:
        rep.hull_ok = False
        rep.notes.append("boundary ring does not match the single-use edges")
    for v in ring:
        t = int(state.hull.tri[v])
        e = int(state.hull.edge[v])
        w = int(state.hull.next[v])
        if not (0 <= t < nt and tris[t, e] == v and tris[t, (e + 1) % 3] == w):
            rep.hull_ok = False
            rep.notes.append(f"hull edge from {v} links to the wrong triangle")
            break
    m = len(ring)
    for i in range(m):
        if m >= 3 and _cross_sign(coords[ring[i - 1]], coords[ring[i]], coords[ring[(i + 1) % m]]) < 0:
            rep.hull_ok = False
            rep.notes.append(f"hull is reflex at vertex {ring[i]}")
            break

    # Euler count over the vertices actually used
    used = np.unique(tris) if nt else np.array([], dtype=np.int64)
    n_used = len(used)
    if n_used != len(coords):
        rep.notes.append(f"{len(coords) - n_used} points are not in any triangle")
    rep.euler_ok = nt == 2 * n_used - 2 - m and n_used == len(coords)

    # area conservation
    if nt and m >= 3:
        a = coords[tris[:, 0]]
        b = coords[tris[:, 1]]
        c = coords[tris[:, 2]]
        tri_area = 0.5 * np.sum(
            (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])
        )
        h = coords[ring]
        hx, hy = h[:, 0], h[:, 1]
        hull_area = 0.5 * np.sum(hx * np.roll(hy, -1) - np.roll(hx, -1) * hy)
        rep.area_mismatch = float(abs(tri_area - hull_area) / abs(hull_area)) if hull_area else np.inf
    elif nt:
        rep.area_mismatch = np.inf

    if check_hull:
        try:
            expected = gift_wrap_hull(coords)
        except (AllCollinear, TooFewPoints) as exc:
            rep.hull_matches_oracle = False
            rep.notes.append(str(exc))
        else:
            strict = [
                ring[i] for i in range(m)
                if _cross_sign(coords[ring[i - 1]], coords[ring[i]], coords[ring[(i + 1) % m]]) != 0
            ]
            rep.hull_matches_oracle = same_cycle(strict, expected)
            if not rep.hull_matches_oracle:
                rep.notes.append("hull differs from the gift-wrapping hull")

    if check_delaunay:
        rep.delaunay_violations = delaunay_violations(coords, tris)
    return rep
