"""Plain-text point and mesh files.

PointFile: one ``x y`` or ``x,y`` pair per line; blank lines and lines
starting with ``#`` are skipped.  Coordinates are written with 17
significant digits, which round-trips every float64 exactly.

TriangleFile::

    n_points n_triangles hull_size
    x y                       (n_points lines)
    i j k                     (n_triangles lines, counterclockwise)
    h0 h1 ... h_{hull_size-1} (one line, cyclic)
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

import numpy as np

from .errors import FileWriteError, InvalidInput, ParseError

_SEP = re.compile(r"[,\s]+")


def format_float(v: float) -> str:
    return "%.17g" % v


def parse_points(text: str, source: str = "<input>", with_lines: bool = False):
    """Parse a PointFile.  With ``with_lines`` also return each point's line number."""
    rows = []
    linenos = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f for f in _SEP.split(line) if f]
        if len(fields) != 2:
            raise ParseError(f"{source}:{lineno}: expected 2 coordinates, got {len(fields)}")
        try:
            x, y = float(fields[0]), float(fields[1])
        except ValueError:
            raise ParseError(f"{source}:{lineno}: not a number: {line!r}") from None
        if not (np.isfinite(x) and np.isfinite(y)):
            raise InvalidInput(f"{source}:{lineno}: non-finite coordinate")
        rows.append((x, y))
        linenos.append(lineno)
    pts = np.array(rows, dtype=np.float64).reshape(-1, 2)
    if with_lines:
        return pts, np.array(linenos, dtype=np.int64)
    return pts


def format_points(points) -> str:
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    return "".join(f"{format_float(x)} {format_float(y)}\n" for x, y in pts.tolist())


def _read_text(path) -> str:
    try:
        with open(path, encoding="ascii") as fh:
            return fh.read()
    except UnicodeDecodeError:
        raise ParseError(f"{path}: not an ASCII text file") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None


def _write_text(path, text: str) -> None:
    try:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise FileWriteError(f"{path}: {exc.strerror or exc}") from None


def read_points(path, with_lines: bool = False):
    return parse_points(_read_text(path), os.fspath(path), with_lines)


def write_points(path, points) -> None:
    _write_text(path, format_points(points))


@dataclass
class Mesh:
    """Contents of a TriangleFile."""

    points: np.ndarray
    triangles: np.ndarray
    hull: list[int]


def canonical_hull(ring) -> list[int]:
    """Rotate a cyclic vertex list so it starts at its smallest index."""
    ring = [int(v) for v in ring]
    if not ring:
        return ring
    k = ring.index(min(ring))
    return ring[k:] + ring[:k]


def format_mesh(points, triangles, hull) -> str:
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    tris = np.asarray(triangles, dtype=np.int64).reshape(-1, 3)
    hull = [int(v) for v in hull]
    out = [f"{len(pts)} {len(tris)} {len(hull)}\n", format_points(pts)]
    out.extend(f"{i} {j} {k}\n" for i, j, k in tris.tolist())
    out.append(" ".join(map(str, hull)) + "\n")
    return "".join(out)


def parse_mesh(text: str, source: str = "<mesh>") -> Mesh:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError(f"{source}: empty mesh file")

    def ints(lineno, line, count=None):
        try:
            vals = [int(f) for f in _SEP.split(line) if f]
        except ValueError:
            raise ParseError(f"{source}:{lineno}: expected integers: {line!r}") from None
        if count is not None and len(vals) != count:
            raise ParseError(f"{source}:{lineno}: expected {count} integers, got {len(vals)}")
        return vals

    n, nt, h = ints(*lines[0], count=3)
    if min(n, nt, h) < 0:
        raise ParseError(f"{source}:{lines[0][0]}: negative count in header")
    body = lines[1:]
    need = n + nt + (1 if h else 0)
    if len(body) < need:
        raise ParseError(f"{source}: truncated, expected {need} lines after the header")
    if len(body) > need:
        raise ParseError(f"{source}:{body[need][0]}: unexpected trailing content")

    pts = parse_points("\n".join(ln for _, ln in body[:n]), source)
    if len(pts) != n:
        raise ParseError(f"{source}: expected {n} points")
    tris = np.array([ints(i, ln, 3) for i, ln in body[n:n + nt]], dtype=np.int64).reshape(-1, 3)
    hull = ints(*body[n + nt], count=h) if h else []
    if tris.size and (tris.min() < 0 or tris.max() >= n):
        raise ParseError(f"{source}: triangle index out of range")
    if hull and (min(hull) < 0 or max(hull) >= n):
        raise ParseError(f"{source}: hull index out of range")
    return Mesh(pts, tris, hull)


def read_mesh(path) -> Mesh:
    return parse_mesh(_read_text(path), os.fspath(path))


def write_mesh(path, points, triangles, hull) -> None:
    _write_text(path, format_mesh(points, triangles, hull))


def dedup_points(points) -> tuple[np.ndarray, np.ndarray]:
    """Drop exact duplicates, keeping the first occurrence of each point.

    Returns the reduced array and the original index of each kept point.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    # view rows as opaque bytes so -0.0 and 0.0 compare equal via +0.0
    key = np.ascontiguousarray(pts + 0.0).view(np.dtype((np.void, 16))).ravel()
    _, first = np.unique(key, return_index=True)
    keep = np.sort(first)
    return pts[keep], keep
