"""Mirror configurations: the scene model, validation, the enclosing circle
and JSON scene-file I/O.

Positions are double-precision floats; segment direction angles are exact
rational multiples of pi (see :mod:`darksector.exact_angle`).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .exact_angle import RationalTurn, make_rational_turn

Point = tuple[float, float]

# Minimum segment/segment and source/segment clearance, in scene units.
MIN_SEPARATION = 1e-9

DEFAULT_CIRCLE_MARGIN = 1.25


class SceneFormatError(ValueError):
    """A scene document cannot be parsed into a Scene."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


@dataclass(frozen=True)
class Mirror:
    """A two-sided mirror segment: anchor endpoint, length and exact angle."""

    anchor: Point
    length: float
    angle: RationalTurn


def endpoints(m: Mirror) -> tuple[Point, Point]:
    """Both endpoints of the segment; the second is derived from the angle."""
    t = m.angle.radians()
    ax, ay = m.anchor
    return (ax, ay), (ax + m.length * math.cos(t), ay + m.length * math.sin(t))


@dataclass(frozen=True)
class Scene:
    """An ordered collection of disjoint mirrors plus the light source."""

    mirrors: tuple[Mirror, ...]
    source: Point


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str
    mirrors: tuple[int, ...] = ()


def _sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def _cross(a: Point, b: Point) -> float:
    return a[0] * b[1] - a[1] * b[0]


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    """Distance from point p to the closed segment a-b."""
    abx, aby = b[0] - a[0], b[1] - a[1]
    apx, apy = p[0] - a[0], p[1] - a[1]
    denom = abx * abx + aby * aby
    if denom == 0.0:
        return math.hypot(apx, apy)
    t = (apx * abx + apy * aby) / denom
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    return math.hypot(apx - t * abx, apy - t * aby)


def segment_distance(a1: Point, b1: Point, a2: Point, b2: Point) -> float:
    """Distance between two closed segments (zero if they cross)."""
    d1 = _cross(_sub(b2, a2), _sub(a1, a2))
    d2 = _cross(_sub(b2, a2), _sub(b1, a2))
    d3 = _cross(_sub(b1, a1), _sub(a2, a1))
    d4 = _cross(_sub(b1, a1), _sub(b2, a1))
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
        return 0.0
    return min(
        point_segment_distance(a1, a2, b2),
        point_segment_distance(b1, a2, b2),
        point_segment_distance(a2, a1, b1),
        point_segment_distance(b2, a1, b1),
    )


def validate_scene(s: Scene) -> list[Violation]:
    """Check the scene invariants; an empty list means the scene is valid.

    Codes: ``no-mirrors``, ``non-positive-length``, ``mirrors-intersect``,
    ``source-on-mirror``.  Mirrors are addressed by 1-based index in
    document order.
    """
    out: list[Violation] = []
    if not s.mirrors:
        out.append(Violation("no-mirrors", "scene contains no mirrors"))
        return out
    segs = []
    for i, m in enumerate(s.mirrors, start=1):
        if not m.length > 0:
            out.append(
                Violation(
                    "non-positive-length",
                    f"mirror {i} has length {m.length}",
                    (i,),
                )
            )
        segs.append(endpoints(m))
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            d = segment_distance(*segs[i], *segs[j])
            if d < MIN_SEPARATION:
                out.append(
                    Violation(
                        "mirrors-intersect",
                        f"mirrors {i + 1} and {j + 1} are at distance {d:.3e}",
                        (i + 1, j + 1),
                    )
                )
    for i, (a, b) in enumerate(segs, start=1):
        d = point_segment_distance(s.source, a, b)
        if d < MIN_SEPARATION:
            out.append(
                Violation(
                    "source-on-mirror",
                    f"source is at distance {d:.3e} from mirror {i}",
                    (i,),
                )
            )
    return out


@dataclass(frozen=True)
class EnclosingCircle:
    """A circle whose open disk contains every mirror and the source."""

    center: Point
    radius: float


def enclosing_circle(s: Scene, margin: float = DEFAULT_CIRCLE_MARGIN) -> EnclosingCircle:
    """Circle centered on the bounding box of all endpoints and the source,
    with radius ``margin`` times the largest center distance."""
    pts: list[Point] = [s.source]
    for m in s.mirrors:
        a, b = endpoints(m)
        pts.extend((a, b))
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    cx = 0.5 * (min(xs) + max(xs))
    cy = 0.5 * (min(ys) + max(ys))
    d = max(math.hypot(p[0] - cx, p[1] - cy) for p in pts)
    return EnclosingCircle((cx, cy), margin * d if d > 0 else margin)


# ---------------------------------------------------------------------------
# Scene file I/O.  Schema:
#   {"mirrors": [{"anchor": [x, y], "length": L,
#                 "angle": {"num": p, "den": q}}, ...],
#    "source": [x, y]}
# Unknown fields are rejected; angles are exact rationals in units of pi.
# ---------------------------------------------------------------------------


def _expect_keys(obj: dict, allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise SceneFormatError(f"unknown field(s) {sorted(unknown)}", where)
    missing = allowed - set(obj)
    if missing:
        raise SceneFormatError(f"missing field(s) {sorted(missing)}", where)


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SceneFormatError("expected a number", where)
    if not math.isfinite(value):
        raise SceneFormatError("number must be finite", where)
    return float(value)


def _integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SceneFormatError("expected an integer", where)
    return value


def _point(value, where: str) -> Point:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SceneFormatError("expected a [x, y] pair", where)
    return (_number(value[0], f"{where}[0]"), _number(value[1], f"{where}[1]"))


def _angle(value, where: str) -> RationalTurn:
    if not isinstance(value, dict):
        raise SceneFormatError("expected an object {num, den}", where)
    _expect_keys(value, {"num", "den"}, where)
    num = _integer(value["num"], f"{where}.num")
    den = _integer(value["den"], f"{where}.den")
    try:
        return make_rational_turn(num, den)
    except ZeroDivisionError:
        raise SceneFormatError("denominator must be nonzero", f"{where}.den") from None


def scene_from_document(doc) -> Scene:
    if not isinstance(doc, dict):
        raise SceneFormatError("top-level value must be an object")
    _expect_keys(doc, {"mirrors", "source"}, "document")
    if not isinstance(doc["mirrors"], list):
        raise SceneFormatError("expected a list", "mirrors")
    mirrors = []
    for i, m in enumerate(doc["mirrors"]):
        where = f"mirrors[{i}]"
        if not isinstance(m, dict):
            raise SceneFormatError("expected an object", where)
        _expect_keys(m, {"anchor", "length", "angle"}, where)
        mirrors.append(
            Mirror(
                anchor=_point(m["anchor"], f"{where}.anchor"),
                length=_number(m["length"], f"{where}.length"),
                angle=_angle(m["angle"], f"{where}.angle"),
            )
        )
    return Scene(mirrors=tuple(mirrors), source=_point(doc["source"], "source"))


def scene_to_document(s: Scene) -> dict:
    return {
        "mirrors": [
            {
                "anchor": [m.anchor[0], m.anchor[1]],
                "length": m.length,
                "angle": {"num": m.angle.num, "den": m.angle.den},
            }
            for m in s.mirrors
        ],
        "source": [s.source[0], s.source[1]],
    }


def load_scene(data: "bytes | str") -> Scene:
    """Parse a scene document; raises SceneFormatError with field diagnostics."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise SceneFormatError(
            f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})"
        ) from None
    return scene_from_document(doc)


def save_scene(s: Scene) -> bytes:
    """Serialize a scene; load(save(s)) == s exactly."""
    return (json.dumps(scene_to_document(s), indent=2) + "\n").encode("utf-8")
