"""Driving scenes for teleoperation and scripted runs.

A scene is a planar course: wall segments that must not be crossed, optional
slip cells (loose patches where an anchored foot cannot hold), a start, and a
goal disc.  Scenes also carry a centreline waypoint list used by scripted
pilots; load-time checks guarantee the centreline actually threads the walls
so a failing run indicates control, not a broken course.

Geometry helpers here are deliberately dependency-free: orientation-test
segment intersection and ray-casting point-in-polygon.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def segments_intersect(p1, p2, p3, p4) -> bool:
    """True when closed segment p1-p2 meets closed segment p3-p4."""

    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if abs(v) < 1e-12:
            return 0
        return 1 if v > 0 else -1

    def on_seg(a, b, c):
        return (
            min(a[0], b[0]) - 1e-12 <= c[0] <= max(a[0], b[0]) + 1e-12
            and min(a[1], b[1]) - 1e-12 <= c[1] <= max(a[1], b[1]) + 1e-12
        )

    o1, o2 = orient(p1, p2, p3), orient(p1, p2, p4)
    o3, o4 = orient(p3, p4, p1), orient(p3, p4, p2)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and on_seg(p1, p2, p3):
        return True
    if o2 == 0 and on_seg(p1, p2, p4):
        return True
    if o3 == 0 and on_seg(p3, p4, p1):
        return True
    return o4 == 0 and on_seg(p3, p4, p2)


def point_in_polygon(pt, poly) -> bool:
    """Ray-casting test; points on the boundary count as inside."""
    x, y = pt[0], pt[1]
    inside = False
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        if min(y1, y2) - 1e-12 <= y <= max(y1, y2) + 1e-12:
            if abs(y2 - y1) < 1e-12:
                if min(x1, x2) - 1e-12 <= x <= max(x1, x2) + 1e-12:
                    return True
                continue
            xc = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if abs(x - xc) < 1e-12:
                return True
            if (y1 > y) != (y2 > y) and x < xc:
                inside = not inside
    return inside


@dataclass(frozen=True)
class Scene:
    """Planar course: walls, slip cells, start, goal, centreline."""

    name: str
    start_xy: tuple
    goal_xy: tuple
    goal_radius_mm: float
    walls: tuple  # ((x1, y1), (x2, y2)) segments, mm
    slip_cells: tuple = ()  # polygons where anchoring fails
    bounds: tuple = (-10.0, -10.0, 70.0, 10.0)  # xmin, ymin, xmax, ymax
    waypoints: tuple = ()

    def in_bounds(self, pt) -> bool:
        x0, y0, x1, y1 = self.bounds
        return x0 <= pt[0] <= x1 and y0 <= pt[1] <= y1

    def segment_hits_wall(self, p, q) -> bool:
        return any(segments_intersect(p, q, a, b) for a, b in self.walls)

    def in_slip_cell(self, pt) -> bool:
        return any(point_in_polygon(pt, poly) for poly in self.slip_cells)

    def at_goal(self, pt) -> bool:
        dx, dy = pt[0] - self.goal_xy[0], pt[1] - self.goal_xy[1]
        return dx * dx + dy * dy <= self.goal_radius_mm**2


def _offset_polyline(points, d: float):
    """Miter-offset a polyline by signed distance d (left of travel)."""
    pts = np.asarray(points, dtype=float)
    normals = []
    for i in range(len(pts) - 1):
        t = pts[i + 1] - pts[i]
        t /= np.linalg.norm(t)
        normals.append(np.array([-t[1], t[0]]))
    out = [pts[0] + d * normals[0]]
    for i in range(1, len(pts) - 1):
        m = normals[i - 1] + normals[i]
        m /= np.linalg.norm(m)
        scale = d / max(float(m @ normals[i]), 0.2)  # cap miter spikes
        out.append(pts[i] + scale * m)
    out.append(pts[-1] + d * normals[-1])
    return [tuple(p) for p in out]


def _polyline_segments(points):
    return tuple((points[i], points[i + 1]) for i in range(len(points) - 1))


def check_scene(scene: Scene) -> Scene:
    """Load-time invariants; raises ValueError on an unusable course."""
    for label, pt in (("start", scene.start_xy), ("goal", scene.goal_xy)):
        if not scene.in_bounds(pt):
            raise ValueError(f"{label} outside scene bounds")
        if scene.in_slip_cell(pt):
            raise ValueError(f"{label} inside a slip cell")
    wp = list(scene.waypoints)
    for a, b in zip(wp, wp[1:]):
        if scene.segment_hits_wall(a, b):
            raise ValueError(f"centreline crosses a wall between {a} and {b}")
    if wp:
        if np.hypot(wp[0][0] - scene.start_xy[0], wp[0][1] - scene.start_xy[1]) > 1e-9:
            raise ValueError("centreline must begin at the start point")
        if not scene.at_goal(wp[-1]):
            raise ValueError("centreline must end inside the goal disc")
    return scene


def straight_channel() -> Scene:
    walls = (((-6.0, -4.0), (66.0, -4.0)), ((-6.0, 4.0), (66.0, 4.0)))
    return check_scene(
        Scene(
            name="straight_channel",
            start_xy=(0.0, 0.0),
            goal_xy=(60.0, 0.0),
            goal_radius_mm=3.0,
            walls=walls,
            waypoints=((0.0, 0.0), (30.0, 0.0), (60.0, 0.0)),
        )
    )


def s_curve() -> Scene:
    center = [(0.0, 0.0), (15.0, 8.0), (30.0, 0.0), (45.0, -8.0), (60.0, 0.0)]
    # extend the centreline past both ends so the wall mouths sit behind the
    # start and beyond the goal
    ext = [(-6.0, -3.2)] + center + [(66.0, 3.2)]
    left = _offset_polyline(ext, 4.0)
    right = _offset_polyline(ext, -4.0)
    return check_scene(
        Scene(
            name="s_curve",
            start_xy=(0.0, 0.0),
            goal_xy=(60.0, 0.0),
            goal_radius_mm=3.0,
            walls=_polyline_segments(left) + _polyline_segments(right),
            bounds=(-10.0, -16.0, 70.0, 16.0),
            waypoints=tuple(center),
        )
    )


def lumen_map() -> Scene:
    walls = (((-6.0, -5.0), (66.0, -5.0)), ((-6.0, 5.0), (66.0, 5.0)))
    cells = (
        ((20.0, -5.0), (24.0, -5.0), (24.0, -1.0), (20.0, -1.0)),
        ((40.0, 1.0), (43.0, 1.0), (43.0, 5.0), (40.0, 5.0)),
    )
    return check_scene(
        Scene(
            name="lumen_map",
            start_xy=(0.0, 0.0),
            goal_xy=(60.0, 0.0),
            goal_radius_mm=3.0,
            walls=walls,
            slip_cells=cells,
            waypoints=((0.0, 0.0), (15.0, 2.0), (32.0, 2.0), (45.0, -2.0), (60.0, 0.0)),
        )
    )


SCENES = {
    "straight_channel": straight_channel,
    "s_curve": s_curve,
    "lumen_map": lumen_map,
}


def get_scene(name: str) -> Scene:
    try:
        builder = SCENES[name]
    except KeyError:
        raise KeyError(f"unknown scene {name!r}; pick from {sorted(SCENES)}") from None
    return builder()
