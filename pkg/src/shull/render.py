"""SVG snapshots of the three stages of a run.

* ``seed``: every point, the seed triangle and its circumcircle (the only
  ``<circle>`` element; points are drawn as small squares).
* ``step<k>``: the sweep stopped after insertion ``k``; triangles created
  at step ``k`` are red, older ones blue.
* ``final``: the whole mesh.

Elements carry a ``class`` so they can be counted: ``point``, ``seed``,
``circumcircle``, ``tri old``, ``tri new`` and ``tri``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import FileWriteError, InvalidInput
from .sweephull import Triangulation, triangulate_nonoverlapping

SIZE = 800.0
MARGIN = 20.0

_STEP = re.compile(r"step[_ ]?(\d+)$")


@dataclass(frozen=True)
class Stage:
    kind: str  # "seed", "step" or "final"
    step: int = 0

    def __str__(self) -> str:
        return f"step{self.step}" if self.kind == "step" else self.kind


def parse_stage(text) -> Stage:
    if isinstance(text, Stage):
        return text
    s = str(text).strip().lower()
    if s in ("seed", "final"):
        return Stage(s)
    m = _STEP.fullmatch(s) or re.fullmatch(r"sweep_step[_ ]?(\d+)", s)
    if m and int(m.group(1)) >= 1:
        return Stage("step", int(m.group(1)))
    raise InvalidInput(f"unknown stage {text!r}; expected seed, final or stepN with N >= 1")


class _Frame:
    """Maps data coordinates into the drawing square, y axis up."""

    def __init__(self, coords, extra=()):
        pts = np.asarray(coords, dtype=np.float64).reshape(-1, 2)
        if len(extra):
            pts = np.vstack((pts, np.asarray(extra, dtype=np.float64).reshape(-1, 2)))
        lo = pts.min(axis=0)
        hi = pts.max(axis=0)
        span = float(max(hi[0] - lo[0], hi[1] - lo[1]))
        self.scale = (SIZE - 2 * MARGIN) / span if span > 0 else 1.0
        self.lo = lo
        self.hi = hi

    def xy(self, p) -> tuple[float, float]:
        x = MARGIN + (p[0] - self.lo[0]) * self.scale
        y = SIZE - MARGIN - (p[1] - self.lo[1]) * self.scale
        return x, y


def _polygon(frame, pts, cls, fill, stroke) -> str:
    coords = " ".join("%.3f,%.3f" % frame.xy(p) for p in pts)
    return (f'<polygon class="{cls}" points="{coords}" fill="{fill}" '
            f'stroke="{stroke}" stroke-width="0.8"/>')


def _points(frame, coords) -> list[str]:
    out = []
    for p in coords:
        x, y = frame.xy(p)
        out.append(f'<rect class="point" x="{x - 1.5:.3f}" y="{y - 1.5:.3f}" '
                   f'width="3" height="3" fill="black"/>')
    return out


def svg_text(state: Triangulation, stage) -> str:
    """Render ``state`` for ``stage``; ``state`` must already be that snapshot."""
    stage = parse_stage(stage)
    coords = state.points
    body: list[str] = []
    if stage.kind == "seed":
        if state.seed is None:
            raise InvalidInput("the seed stage needs a triangulation built from a seed")
        seed = state.seed
        c = seed.circumcenter
        r = float(np.sqrt(seed.radius_sq))
        frame = _Frame(coords, [(c.x - r, c.y - r), (c.x + r, c.y + r)])
        body.append(_polygon(frame, coords[list(seed.indices)], "seed", "none", "red"))
        cx, cy = frame.xy(c)
        body.append(f'<circle class="circumcircle" cx="{cx:.3f}" cy="{cy:.3f}" '
                    f'r="{r * frame.scale:.3f}" fill="none" stroke="red" stroke-width="1"/>')
    else:
        frame = _Frame(coords)
        tris = state.triangles
        if stage.kind == "step":
            steps = state.steps[: state.n_triangles]
            for t in np.flatnonzero(steps < stage.step):
                body.append(_polygon(frame, coords[tris[t]], "tri old", "#dde6ff", "blue"))
            for t in np.flatnonzero(steps == stage.step):
                body.append(_polygon(frame, coords[tris[t]], "tri new", "#ffdddd", "red"))
        else:
            for t in range(len(tris)):
                body.append(_polygon(frame, coords[tris[t]], "tri", "none", "black"))
    body += _points(frame, coords)
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE:g}" height="{SIZE:g}" '
            f'viewBox="0 0 {SIZE:g} {SIZE:g}">')
    title = f"<title>{stage}</title>"
    return "\n".join([head, title, '<rect width="100%" height="100%" fill="white"/>', *body,
                      "</svg>"]) + "\n"


def snapshot(points, stage) -> Triangulation:
    """The sweep state a stage is drawn from (``final`` is the unflipped full sweep)."""
    stage = parse_stage(stage)
    if stage.kind == "seed":
        return triangulate_nonoverlapping(points, stop_after=0)
    if stage.kind == "step":
        state = triangulate_nonoverlapping(points, stop_after=stage.step)
        if state.position - 3 < stage.step:
            raise InvalidInput(
                f"step {stage.step} is past the last insertion ({state.position - 3})"
            )
        return state
    return triangulate_nonoverlapping(points)


def render_svg(state: Triangulation, stage, path) -> None:
    text = svg_text(state, stage)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise FileWriteError(f"{path}: {exc.strerror or exc}") from None
