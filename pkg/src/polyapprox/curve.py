"""Closed digital curves: parsing, chain codes, and contour geometry.

A curve is an ordered ring of integer lattice points; index arithmetic is
circular and closure is implicit (the last point connects back to the
first).  Geometry helpers compute the centroid, the axis through the
centroid that minimizes the summed squared perpendicular deviation, and
the two extents used to normalize error measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import (
    DuplicateConsecutive,
    InvalidDigit,
    InvalidGeometry,
    MalformedLine,
    NotClosed,
    TooFewPoints,
)

# Freeman 8-neighbour steps: code k moves by _CHAIN_STEPS[k].
_CHAIN_STEPS = (
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
)

_STEP_TO_CODE = {step: code for code, step in enumerate(_CHAIN_STEPS)}

# Relative scale below which the second-moment matrix is treated as
# isotropic and the axis direction falls back to (1, 0).
_ISOTROPY_RTOL = 1e-12


@dataclass(eq=False)
class DigitalCurve:
    """Ring of integer points with circular indexing.

    ``points`` is an (n, 2) int array; it is frozen on construction so a
    curve can be shared safely between caches and polygons.
    """

    points: np.ndarray
    name: str | None = None

    def __post_init__(self):
        pts = np.asarray(self.points)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise MalformedLine("points must be an (n, 2) array")
        pts = np.ascontiguousarray(pts, dtype=np.int64)
        if pts.shape[0] < 3:
            raise TooFewPoints(f"need at least 3 points, got {pts.shape[0]}")
        same = np.all(pts == np.roll(pts, -1, axis=0), axis=1)
        if same.any():
            i = int(np.argmax(same))
            raise DuplicateConsecutive(
                f"points {i} and {(i + 1) % pts.shape[0]} coincide at "
                f"({pts[i, 0]}, {pts[i, 1]})"
            )
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def point(self, i: int) -> tuple[int, int]:
        """Point at circular index i (any integer)."""
        p = self.points[i % self.n]
        return int(p[0]), int(p[1])

    def points_float(self) -> np.ndarray:
        return self.points.astype(np.float64)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<DigitalCurve{tag} n={self.n}>"


@dataclass(frozen=True)
class InertiaLine:
    """Axis through ``point`` with unit ``direction``."""

    point: tuple[float, float]
    direction: tuple[float, float]


@dataclass(frozen=True)
class CurveGeometry:
    """Contour extents used by normalized error measures.

    d1 is the largest centroid-to-point distance, d2 the largest
    perpendicular distance to the minimum-inertia axis, and d their sum.
    """

    centroid: tuple[float, float]
    d1: float
    inertia: InertiaLine
    d2: float

    @property
    def d(self) -> float:
        return self.d1 + self.d2


def parse_point_list(text: str | bytes) -> DigitalCurve:
    """Parse "x y" integer lines into a curve.

    Blank lines and lines starting with '#' are skipped.  Real-valued
    coordinates are rejected: the model is a lattice curve.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    pts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedLine(f"line {lineno}: expected 'x y', got {line!r}")
        try:
            x, y = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise MalformedLine(
                f"line {lineno}: coordinates must be integers, got {line!r}"
            ) from None
        pts.append((x, y))
    if len(pts) < 3:
        raise TooFewPoints(f"need at least 3 points, got {len(pts)}")
    return DigitalCurve(np.array(pts, dtype=np.int64))


def parse_chain_code(text: str | bytes) -> DigitalCurve:
    """Parse a start point plus Freeman chain-code string.

    First content line is "x0 y0", second is a digit string over 0..7.
    The trace must land back on the start point, which is not repeated
    in the returned curve.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if len(lines) < 2:
        raise MalformedLine("chain-code input needs a start line and a code line")
    tokens = lines[0].split()
    if len(tokens) != 2:
        raise MalformedLine(f"start line must be 'x0 y0', got {lines[0]!r}")
    try:
        x, y = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise MalformedLine(
            f"start coordinates must be integers, got {lines[0]!r}"
        ) from None
    codes = lines[1]
    pts = [(x, y)]
    for pos, ch in enumerate(codes):
        if ch not in "01234567":
            raise InvalidDigit(f"code position {pos}: {ch!r} is not in 0..7")
        dx, dy = _CHAIN_STEPS[int(ch)]
        x, y = x + dx, y + dy
        pts.append((x, y))
    if pts[-1] != pts[0]:
        raise NotClosed(
            f"trace ends at ({x}, {y}), start is ({pts[0][0]}, {pts[0][1]})"
        )
    pts = pts[:-1]
    if len(pts) < 3:
        raise TooFewPoints(f"need at least 3 points, got {len(pts)}")
    return DigitalCurve(np.array(pts, dtype=np.int64))


def chain_code_of(curve: DigitalCurve) -> str:
    """Inverse of parse_chain_code for 8-connected curves."""
    pts = curve.points
    steps = np.roll(pts, -1, axis=0) - pts
    out = []
    for i, (dx, dy) in enumerate(steps):
        key = (int(dx), int(dy))
        if key not in _STEP_TO_CODE:
            raise InvalidDigit(f"step {i} moves by {key}, not an 8-neighbour step")
        out.append(str(_STEP_TO_CODE[key]))
    return "".join(out)


def load_curve(path: str | Path, fmt: str = "auto") -> DigitalCurve:
    """Load a curve file, dispatching on extension unless fmt overrides.

    ".pts" files hold point lists, ".chn" files hold chain codes.
    """
    path = Path(path)
    if fmt == "auto":
        ext = path.suffix.lower()
        if ext == ".pts":
            fmt = "pts"
        elif ext == ".chn":
            fmt = "chn"
        else:
            raise MalformedLine(
                f"{path}: unknown extension {ext!r}; pass an explicit format"
            )
    text = path.read_text(encoding="utf-8")
    if fmt == "pts":
        curve = parse_point_list(text)
    elif fmt == "chn":
        curve = parse_chain_code(text)
    else:
        raise MalformedLine(f"unknown curve format {fmt!r}")
    curve.name = path.stem
    return curve


def centroid_of_points(points: np.ndarray) -> tuple[float, float]:
    pts = np.asarray(points, dtype=np.float64)
    c = pts.mean(axis=0)
    return float(c[0]), float(c[1])


def inertia_line_of_points(points: np.ndarray) -> InertiaLine:
    """Minimum-inertia axis of a point set.

    The direction is the eigenvector of the larger eigenvalue of the
    second central moment matrix; maximizing the spread captured along
    the axis minimizes the perpendicular residual.  A matrix within
    relative tolerance of isotropic has no preferred axis and maps to
    direction (1, 0).  The sign is canonical: positive x, or (0, 1).
    """
    pts = np.asarray(points, dtype=np.float64)
    cx, cy = centroid_of_points(pts)
    dx = pts[:, 0] - cx
    dy = pts[:, 1] - cy
    mxx = float(dx @ dx)
    myy = float(dy @ dy)
    mxy = float(dx @ dy)
    scale = mxx + myy
    if scale <= 0.0:
        # all points coincide; any axis works
        return InertiaLine((cx, cy), (1.0, 0.0))
    if abs(mxx - myy) <= _ISOTROPY_RTOL * scale and abs(mxy) <= _ISOTROPY_RTOL * scale:
        return InertiaLine((cx, cy), (1.0, 0.0))
    half = 0.5 * (mxx - myy)
    lam = 0.5 * (mxx + myy) + math.hypot(half, mxy)
    # two algebraic eigenvector forms; pick the better-conditioned one
    v1 = (lam - myy, mxy)
    v2 = (mxy, lam - mxx)
    vx, vy = v1 if math.hypot(*v1) >= math.hypot(*v2) else v2
    norm = math.hypot(vx, vy)
    vx, vy = vx / norm, vy / norm
    if vx < 0.0 or (vx == 0.0 and vy < 0.0):
        vx, vy = -vx, -vy
    return InertiaLine((cx, cy), (vx, vy))


def point_set_geometry(points: np.ndarray) -> CurveGeometry:
    """CurveGeometry of a raw (n, 2) point array."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 1:
        raise InvalidGeometry("need an (n, 2) point array")
    cx, cy = centroid_of_points(pts)
    rel = pts - (cx, cy)
    d1 = float(np.sqrt((rel * rel).sum(axis=1).max()))
    axis = inertia_line_of_points(pts)
    ux, uy = axis.direction
    # perpendicular distance to the axis is the cross product with u
    d2 = float(np.abs(rel[:, 0] * uy - rel[:, 1] * ux).max())
    return CurveGeometry((cx, cy), d1, axis, d2)


def centroid(curve: DigitalCurve) -> tuple[float, float]:
    return centroid_of_points(curve.points)


def inertia_line(curve: DigitalCurve) -> InertiaLine:
    return inertia_line_of_points(curve.points)


def curve_geometry(curve: DigitalCurve) -> CurveGeometry:
    return point_set_geometry(curve.points)
