"""Build diagrams from closed polylines in the plane.

Double points are found by segment intersection (inputs must be in general
position) and the rotation at each double point comes from the directions of
the two passing segments.  Markers attached to polyline vertices are
reported per edge, in travel order, which is how box sides are recorded for
certificates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CurveDiagram


@dataclass
class PolylineDiagram:
    diagram: CurveDiagram
    # outgoing dart of each edge in travel order, with the markers met along it
    edge_markers: dict
    # crossing id -> (x, y)
    points: np.ndarray
    # outgoing dart after each crossing passage, in travel order
    passages: list


def _intersect(p, q, r, s):
    d1 = q - p
    d2 = s - r
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(den) < 1e-12:
        return None
    w = r - p
    t = (w[0] * d2[1] - w[1] * d2[0]) / den
    u = (w[0] * d1[1] - w[1] * d1[0]) / den
    eps = 1e-9
    if eps < t < 1 - eps and eps < u < 1 - eps:
        return t, u
    if -eps <= t <= 1 + eps and -eps <= u <= 1 + eps:
        raise ValueError("polyline not in general position")
    return None


def from_polyline(points, markers=None) -> PolylineDiagram:
    """Diagram of the closed polyline through ``points``.

    ``markers`` maps a vertex index to a list of payloads; each payload is
    reported on the edge that contains that vertex.
    """
    pts = np.asarray(points, dtype=float)
    m = len(pts)
    segs = [(pts[i], pts[(i + 1) % m]) for i in range(m)]
    hits = []  # (segment, t, crossing)
    where = []
    for i in range(m):
        for j in range(i + 1, m):
            if j == i + 1 or (i == 0 and j == m - 1):
                continue
            got = _intersect(*segs[i], *segs[j])
            if got is None:
                continue
            c = len(where)
            t, u = got
            where.append(segs[i][0] + t * (segs[i][1] - segs[i][0]))
            hits.append((i, t, c))
            hits.append((j, u, c))
    events = []  # travel-ordered: ("x", crossing, direction) or ("m", payload)
    markers = markers or {}
    by_seg: dict[int, list] = {}
    for i, t, c in hits:
        by_seg.setdefault(i, []).append((t, c))
    for i in range(m):
        for payload in markers.get(i, ()):
            events.append(("m", payload))
        direction = segs[i][1] - segs[i][0]
        for t, c in sorted(by_seg.get(i, ())):
            events.append(("x", c, direction / np.linalg.norm(direction)))
    n = len(where)
    if n == 0:
        return PolylineDiagram(CurveDiagram(), {}, np.zeros((0, 2)), [])
    # darts: sort the four outgoing directions of each crossing by angle
    dirs: dict[int, list] = {}
    for ev in events:
        if ev[0] == "x":
            dirs.setdefault(ev[1], []).append(ev[2])
    pos = {}
    for c, (u, v) in dirs.items():
        cand = [("in", 0, -u), ("out", 0, u), ("in", 1, -v), ("out", 1, v)]
        cand.sort(key=lambda t: np.arctan2(t[2][1], t[2][0]))
        for p, (kind, k, _) in enumerate(cand):
            pos[(c, k, kind)] = 4 * c + p
    seen_count: dict[int, int] = {}
    enter, leave = [], []
    pending = []
    edge_markers = {}
    for ev in events:
        if ev[0] == "m":
            pending.append(ev[1])
            continue
        c = ev[1]
        k = seen_count.get(c, 0)
        seen_count[c] = k + 1
        enter.append((pos[(c, k, "in")], list(pending)))
        pending = []
        leave.append(pos[(c, k, "out")])
    # markers before the first crossing belong to the closing edge
    first_dart, first_marks = enter[0]
    enter[0] = (first_dart, pending + first_marks)
    alpha = [0] * (4 * n)
    L = len(leave)
    for i in range(L):
        a = leave[i]
        b, marks = enter[(i + 1) % L]
        alpha[a], alpha[b] = b, a
        edge_markers[a] = marks
    return PolylineDiagram(CurveDiagram(tuple(alpha)), edge_markers, np.array(where), leave)
